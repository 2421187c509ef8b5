#include "doctest.h"
#include "qri/field.hpp"

using namespace qri;

TEST_CASE("field construction rejects char 2 and composites") {
  CHECK_THROWS_AS(Field::gf(2), std::invalid_argument);
  CHECK_THROWS_AS(Field::gf(9), std::invalid_argument);
  CHECK_THROWS_AS(Field::gf(1), std::invalid_argument);
  CHECK_NOTHROW(Field::gf(3));
  CHECK_NOTHROW(Field::gf(101));
  CHECK(Field::rationals().characteristic() == 0);
  CHECK(Field::gf(7).characteristic() == 7);
}

TEST_CASE("rational arithmetic is exact") {
  Field q = Field::rationals();
  auto a = FieldElement::parse(q, "1/3");
  auto b = FieldElement::parse(q, "1/6");
  CHECK((a + b).str() == "1/2");
  CHECK((a - b).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "2");
  CHECK((-a).str() == "-1/3");
  CHECK(a.pow(3).str() == "1/27");
  CHECK_THROWS_AS(a / FieldElement::zero(q), std::domain_error);

  // No overflow: (2^80)^2 stays exact.
  auto big = FieldElement::from_rat(q, BigRat(BigInt(1) << 80));
  CHECK((big * big).rat() == BigRat(BigInt(1) << 160));
}

TEST_CASE("modular arithmetic") {
  Field f5 = Field::gf(5);
  auto a = FieldElement::from_int(f5, 3);
  auto b = FieldElement::from_int(f5, 4);
  CHECK((a + b).residue() == 2);
  CHECK((a * b).residue() == 2);
  CHECK((a - b).residue() == 4);
  CHECK(a.inverse().residue() == 2);
  CHECK((a / b).residue() == 2);  // 3 * 4^-1 = 3 * 4 = 12 = 2
  CHECK(FieldElement::from_int(f5, -7).residue() == 3);
  CHECK(FieldElement::parse(f5, "1/2").residue() == 3);
  CHECK_THROWS_AS(FieldElement::from_int(f5, 0).inverse(), std::domain_error);
}

TEST_CASE("field transfer") {
  Field q = Field::rationals();
  Field f7 = Field::gf(7);
  auto x = FieldElement::parse(q, "3/2");
  CHECK(x.reduce_to(f7).residue() == 5);  // 3 * 4 = 12 = 5
  CHECK_THROWS_AS(FieldElement::parse(q, "1/7").reduce_to(f7), std::domain_error);
  CHECK(FieldElement::from_int(f7, 6).lift_symmetric().rat() == BigRat(-1));
  CHECK(FieldElement::from_int(f7, 3).lift_symmetric().rat() == BigRat(3));
  CHECK(FieldElement::from_int(f7, 4).lift_symmetric().rat() == BigRat(-3));
}

TEST_CASE("field parsing") {
  CHECK(Field::parse("Q").has_value());
  CHECK(Field::parse("GF(5)")->characteristic() == 5);
  CHECK(Field::parse("GF7")->characteristic() == 7);
  CHECK(!Field::parse("GF(4)").has_value());
  CHECK(!Field::parse("xyz").has_value());
}

TEST_CASE("mixed-field operations are rejected") {
  auto a = FieldElement::from_int(Field::gf(5), 1);
  auto b = FieldElement::from_int(Field::gf(7), 1);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}
