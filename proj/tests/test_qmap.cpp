#include "doctest.h"
#include "qri/linalg.hpp"
#include "qri/parse.hpp"
#include "qri/qmap.hpp"

using namespace qri;

namespace {

const Field Q = Field::rationals();

MultiPoly pp(const MonomialMap& map, const char* text) {
  return parse_poly(Q, map.param_vars, text);
}

RrefResult span_of(const GeneratorSet& g) {
  Matrix m;
  for (const auto& q : g.gens) m.push_back(q.flatten());
  return rref(m);
}

}  // namespace

TEST_CASE("lift_to_coords") {
  auto map = veronese_map(2, 3);
  SUBCASE("single monomial") {
    auto l = lift_to_coords(pp(map, "x0^2*x1"), map);
    CHECK(l.coeffs[1].is_one());
    CHECK(l.coeffs[0].is_zero());
  }
  SUBCASE("sum of coordinates") {
    auto l = lift_to_coords(pp(map, "x0^3 + x2^3"), map);
    CHECK(l.coeffs[0].is_one());
    CHECK(l.coeffs[9].is_one());
    CHECK(l.coeffs[5].is_zero());
  }
  SUBCASE("wrong degree is rejected") {
    CHECK_THROWS_AS(lift_to_coords(pp(map, "x0^4"), map), lift_error);
  }
}

TEST_CASE("qab basics") {
  SUBCASE("the conic") {
    auto map = veronese_map(1, 2);
    auto q = qab(pp(map, "x0"), pp(map, "x1"), pp(map, "1"), map);
    CHECK(q == QuadForm::from_poly(parse_poly(Q, map.coord_names, "z0*z2 - z1^2")));
  }
  SUBCASE("ideal membership and rank 3 on the 2-uple of P3") {
    auto map = veronese_map(3, 2);
    auto kernel = kernel_quadrics(map);
    auto base = rref(kernel.flatten());
    auto q = qab(pp(map, "x0"), pp(map, "x1"), pp(map, "1"), map);
    CHECK(q.rank() == 3);
    CHECK(in_row_span(base, q.flatten()));
  }
  SUBCASE("s = t vanishes identically") {
    auto map = veronese_map(2, 3);
    auto q = qab(pp(map, "x0"), pp(map, "x0"), pp(map, "x1"), map);
    CHECK(q.is_zero());
  }
  SUBCASE("symmetry in s and t") {
    auto map = veronese_map(2, 3);
    auto a = qab(pp(map, "x0 + x2"), pp(map, "x1"), pp(map, "x0"), map);
    auto b = qab(pp(map, "x1"), pp(map, "x0 + x2"), pp(map, "x0"), map);
    CHECK(a == b);
    CHECK(!a.is_zero());
  }
  SUBCASE("outputs stay in the kernel span") {
    auto map = veronese_map(2, 3);
    auto base = rref(kernel_quadrics(map).flatten());
    const char* ss[] = {"x0", "x1 + x2", "x0 + x1"};
    const char* hh[] = {"x0", "x2", "x1 + x2"};
    for (const char* s : ss)
      for (const char* h : hh) {
        auto q = qab(pp(map, s), pp(map, "x2"), pp(map, h), map);
        CHECK(q.rank() <= 3);
        CHECK(in_row_span(base, q.flatten()));
      }
  }
}

TEST_CASE("gamma family of the 2-uple of P3") {
  auto g = gamma_v2p3();
  CHECK(g.size() == 21);
  for (const auto& q : g.gens) CHECK(q.rank() == 3);
  auto r = span_of(g);
  CHECK(r.rank == 20);  // the full quadric space of the embedding

  // Over GF(3) the same members span strictly less.
  auto g3 = g.to_field(Field::gf(3));
  CHECK(rref(g3.flatten()).rank < 20);
  // Over GF(5) and GF(7) the span stays full.
  CHECK(rref(g.to_field(Field::gf(5)).flatten()).rank == 20);
  CHECK(rref(g.to_field(Field::gf(7)).flatten()).rank == 20);
}

TEST_CASE("gamma family of the 3-uple of P2") {
  auto g = gamma_v3p2();
  CHECK(g.size() == 27);
  CHECK(g.independent);
  for (const auto& q : g.gens) CHECK(q.rank() <= 3);
  CHECK(span_of(g).rank == 27);
  CHECK(rref(g.to_field(Field::gf(5)).flatten()).rank == 27);
  // Spans the same space as the kernel oracle.
  auto kernel = kernel_quadrics(veronese_map(2, 3));
  auto base = rref(kernel.flatten());
  for (const auto& q : g.gens) CHECK(in_row_span(base, q.flatten()));
}

TEST_CASE("s5 witness") {
  auto w = s5_witness();
  for (const auto& q : w.gens) CHECK(q.rank() <= 3);
  CHECK(span_of(w).rank == 20);
  // Matches the catalog presentation of the same surface.
  auto s5 = delpezzo_surface(5);
  auto base = rref(s5.flatten());
  REQUIRE(base.rank == 20);
  for (const auto& q : w.gens) CHECK(in_row_span(base, q.flatten()));
  // The adjoined member has rank exactly 3.
  CHECK(w.gens.back().rank() == 3);
}

TEST_CASE("rank-3 witnesses for rational normal curves") {
  for (unsigned d : {3u, 4u, 5u}) {
    CAPTURE(d);
    auto w = veronese_rank3_witness(1, d);
    auto kernel = kernel_quadrics(veronese_map(1, d));
    CHECK(w.size() == kernel.size());
    for (const auto& q : w.gens) CHECK(q.rank() <= 3);
    auto base = rref(kernel.flatten());
    for (const auto& q : w.gens) CHECK(in_row_span(base, q.flatten()));
    CHECK(span_of(w).rank == kernel.size());
  }
}

TEST_CASE("property: qab nonzero outputs with independent lifts have rank exactly 3") {
  auto map = veronese_map(2, 3);
  const char* sections[] = {"x0", "x1", "x2", "x0 + x1", "x1 + x2", "x0 + x2"};
  for (const char* s : sections)
    for (const char* t : sections)
      for (const char* h : sections) {
        auto q = qab(pp(map, s), pp(map, t), pp(map, h), map);
        if (q.is_zero()) continue;
        auto a = lift_to_coords(pp(map, s) * pp(map, s) * pp(map, h), map);
        auto b = lift_to_coords(pp(map, t) * pp(map, t) * pp(map, h), map);
        auto c = lift_to_coords(pp(map, s) * pp(map, t) * pp(map, h), map);
        Matrix m{a.coeffs, b.coeffs, c.coeffs};
        if (rref(m).rank == 3) CHECK(q.rank() == 3);
        CHECK(q.rank() <= 3);
      }
}
