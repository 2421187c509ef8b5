#include "doctest.h"
#include "qri/parse.hpp"
#include "qri/poly.hpp"

#include <random>

using namespace qri;

namespace {

std::vector<std::string> zvars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("z" + std::to_string(i));
  return v;
}

}  // namespace

TEST_CASE("canonical term order matches printed listings") {
  Field q = Field::rationals();
  auto vars = zvars(9);
  // Leading term first: z7^2 ahead of z6*z8 in the graded order used here.
  auto p = parse_poly(q, vars, "-z6*z8 + z7^2");
  CHECK(p.str() == "z7^2 - z6*z8");
  CHECK(parse_poly(q, vars, "z1^2 - z0*z3").str() == "z1^2 - z0*z3");
  CHECK(parse_poly(q, vars, "-z2*z8 + z4*z5").str() == "z4*z5 - z2*z8");
}

TEST_CASE("parse/print round trip") {
  Field q = Field::rationals();
  auto vars = zvars(6);
  for (const char* text : {
           "z0*z2 - z1^2",
           "2*z0^2 - 1/2*z1*z2 + z5^2",
           "-z0*z1 + 3*z3*z4 - 7",
           "1/3",
           "z0 + z1 + z2",
       }) {
    auto p = parse_poly(q, vars, text);
    auto again = parse_poly(q, vars, p.str());
    CHECK(p == again);
    CHECK(p.str() == again.str());
  }
}

TEST_CASE("parser rejects malformed input") {
  Field q = Field::rationals();
  auto vars = zvars(3);
  CHECK_THROWS_AS(parse_poly(q, vars, "z9"), parse_error);
  CHECK_THROWS_AS(parse_poly(q, vars, "z0 +"), parse_error);
  CHECK_THROWS_AS(parse_poly(q, vars, ""), parse_error);
  CHECK_THROWS_AS(parse_poly(q, vars, "w0 + z1"), parse_error);
}

TEST_CASE("arithmetic and substitution") {
  Field q = Field::rationals();
  auto vars = zvars(3);
  auto a = parse_poly(q, vars, "z0 + z1");
  auto b = parse_poly(q, vars, "z0 - z1");
  CHECK((a * b).str() == "z0^2 - z1^2");
  CHECK((a + b).str() == "2*z0");
  CHECK(a.pow(2) == parse_poly(q, vars, "z0^2 + 2*z0*z1 + z1^2"));

  auto p = parse_poly(q, vars, "z0*z2 - z1^2");
  auto sub = p.substituted(2, parse_poly(q, vars, "z0"));
  CHECK(sub == parse_poly(q, vars, "z0^2 - z1^2"));

  CHECK(p.derivative(1) == parse_poly(q, vars, "-2*z1"));
  CHECK(p.derivative(0) == parse_poly(q, vars, "z2"));

  std::vector<FieldElement> pt{FieldElement::from_int(q, 2), FieldElement::from_int(q, 3),
                               FieldElement::from_int(q, 5)};
  CHECK(p.eval(pt).rat() == BigRat(1));
}

TEST_CASE("homogeneity, support, drop") {
  Field q = Field::rationals();
  auto vars = zvars(4);
  auto p = parse_poly(q, vars, "z0*z3 - z1^2");
  CHECK(p.is_homogeneous(2));
  CHECK(!p.is_homogeneous(3));
  CHECK(p.support() == std::vector<std::size_t>{0, 1, 3});
  CHECK(!p.uses_var(2));
  auto d = p.dropped_var(2);
  CHECK(d.nvars() == 3);
  CHECK(d == parse_poly(q, {"z0", "z1", "z3"}, "z0*z3 - z1^2"));
  CHECK_THROWS_AS(p.dropped_var(0), std::logic_error);
}

TEST_CASE("field conversion of polynomials") {
  Field q = Field::rationals();
  Field f5 = Field::gf(5);
  auto vars = zvars(2);
  auto p = parse_poly(q, vars, "5*z0^2 + z0*z1");
  auto m = p.to_field(f5);
  CHECK(m.term_count() == 1);  // 5 vanishes mod 5
  CHECK(m.str() == "z0*z1");
  CHECK(m.to_field(q) == parse_poly(q, vars, "z0*z1"));
}

TEST_CASE("property: polynomial multiplication commutes with evaluation") {
  Field f7 = Field::gf(7);
  auto vars = zvars(4);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<unsigned> expo(0, 2);
  auto random_poly = [&] {
    MultiPoly p(f7, vars);
    for (int t = 0; t < 5; ++t) {
      Monomial m(4, 0);
      for (auto& e : m) e = expo(rng);
      p.add_term(m, FieldElement::from_int(f7, coef(rng)));
    }
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_poly();
    auto b = random_poly();
    std::vector<FieldElement> pt;
    for (int i = 0; i < 4; ++i) pt.push_back(FieldElement::from_int(f7, coef(rng)));
    CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
  }
}
