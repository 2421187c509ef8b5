#include "doctest.h"
#include "qri/catalog.hpp"
#include "qri/linalg.hpp"
#include "qri/parse.hpp"

#include <set>

using namespace qri;

namespace {

const Field Q = Field::rationals();

bool spans_equal(const std::vector<QuadForm>& a, const std::vector<QuadForm>& b) {
  Matrix ma, mb;
  for (const auto& g : a) ma.push_back(g.flatten());
  for (const auto& g : b) mb.push_back(g.flatten());
  auto ra = rref(ma);
  auto rb = rref(mb);
  if (ra.rank != rb.rank) return false;
  for (const auto& row : mb)
    if (!in_row_span(ra, row)) return false;
  return true;
}

QuadForm parse_quad(const std::vector<std::string>& vars, const char* text) {
  return QuadForm::from_poly(parse_poly(Q, vars, text));
}

}  // namespace

TEST_CASE("veronese maps match the standard listings") {
  auto conic = veronese_map(1, 2);
  REQUIRE(conic.coords() == 3);
  CHECK(conic.images[0] == Monomial{2, 0});
  CHECK(conic.images[1] == Monomial{1, 1});
  CHECK(conic.images[2] == Monomial{0, 2});

  auto cubic_surface = veronese_map(2, 3);
  REQUIRE(cubic_surface.coords() == 10);
  CHECK(cubic_surface.images[0] == Monomial{3, 0, 0});
  CHECK(cubic_surface.images[1] == Monomial{2, 1, 0});
  CHECK(cubic_surface.images[4] == Monomial{1, 1, 1});
  CHECK(cubic_surface.images[9] == Monomial{0, 0, 3});

  auto v2p3 = veronese_map(3, 2);
  REQUIRE(v2p3.coords() == 10);
  CHECK(v2p3.images[0] == Monomial{2, 0, 0, 0});
  CHECK(v2p3.images[3] == Monomial{1, 0, 0, 1});
  CHECK(v2p3.images[5] == Monomial{0, 1, 1, 0});
  CHECK(v2p3.images[9] == Monomial{0, 0, 0, 2});
}

TEST_CASE("kernel oracle on small veronese maps") {
  auto conic = kernel_quadrics(veronese_map(1, 2));
  REQUIRE(conic.size() == 1);
  CHECK(conic.gens[0] == parse_quad(conic.vars, "z0*z2 - z1^2"));
  CHECK(conic.vanishes_on_param());

  CHECK(kernel_quadrics(veronese_map(2, 3)).size() == 27);

  auto s1 = kernel_quadrics(param_drop(veronese_map(2, 3), 9));
  CHECK(s1.size() == 20);

  // Degenerate: two image monomials leave no quadric relations.
  MonomialMap tiny;
  tiny.param_vars = {"x0", "x1"};
  tiny.images = {Monomial{2, 0}, Monomial{1, 1}, Monomial{0, 2}};
  tiny.coord_names = {"z0", "z1", "z2"};
  auto dropped = param_drop(tiny, 1);
  CHECK(kernel_quadrics(dropped).size() == 0);
  CHECK_THROWS_AS(param_drop(tiny, 5), std::out_of_range);
}

TEST_CASE("scroll generators") {
  SUBCASE("rational normal cubic") {
    auto g = scroll_generators({3});
    CHECK(g.size() == 3);
    CHECK(g.vars == std::vector<std::string>{"x0", "x1", "x2", "x3"});
    CHECK(g.gens[0] == parse_quad(g.vars, "x0*x2 - x1^2"));
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  }
  SUBCASE("S(1,2) matches the block sets") {
    auto g = scroll_generators({1, 2});
    REQUIRE(g.size() == 3);
    CHECK(g.vars == std::vector<std::string>{"x0", "x1", "y0", "y1", "y2"});
    CHECK(g.gens[0] == parse_quad(g.vars, "y0*y2 - y1^2"));
    CHECK(g.gens[1] == parse_quad(g.vars, "x0*y1 - x1*y0"));
    CHECK(g.gens[2] == parse_quad(g.vars, "x0*y2 - x1*y1"));
    CHECK(g.ambient() == 4);
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  }
  SUBCASE("block cardinalities |A| = C(a,2), |B| = C(b,2), |C| = ab") {
    for (unsigned a = 1; a <= 3; ++a)
      for (unsigned b = 1; b <= 3; ++b) {
        auto g = scroll_generators({a, b});
        CHECK(g.size() == a * (a - 1) / 2 + b * (b - 1) / 2 + a * b);
        CHECK(g.ambient() == a + b + 1);
      }
  }
  SUBCASE("three blocks validated against the kernel oracle") {
    auto g = scroll_generators({1, 1, 2});
    CHECK(g.size() == 6);
    CHECK(g.ambient() == 6);
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  }
  CHECK_THROWS_AS(scroll_generators({}), std::invalid_argument);
  CHECK_THROWS_AS(scroll_generators({0, 2}), std::invalid_argument);
}

TEST_CASE("segre generators") {
  auto g11 = segre_generators({1, 1});
  REQUIRE(g11.size() == 1);
  CHECK(g11.gens[0] == parse_quad(g11.vars, "z00*z11 - z01*z10"));

  auto g12 = segre_generators({1, 2});
  CHECK(g12.size() == 3);  // kernel oracle dimension, frozen
  CHECK(g12.vanishes_on_param());
  CHECK(spans_equal(g12.gens, kernel_quadrics(*g12.param).gens));

  auto g22 = segre_generators({2, 2});
  CHECK(g22.size() == 9);
  CHECK(spans_equal(g22.gens, kernel_quadrics(*g22.param).gens));

  auto g111 = segre_generators({1, 1, 1});
  CHECK(g111.vanishes_on_param());
  CHECK(spans_equal(g111.gens, kernel_quadrics(*g111.param).gens));
  for (const auto& q : g111.gens) CHECK(q.rank() <= 4);

  CHECK_THROWS_AS(segre_generators({2}), std::invalid_argument);
}

TEST_CASE("plucker generators") {
  CHECK(plucker_generators(3).size() == 1);
  CHECK(plucker_generators(4).size() == 5);
  CHECK(plucker_generators(5).size() == 15);

  auto g = plucker_generators(4);
  CHECK(g.vars.size() == 10);
  CHECK(g.gens[0] == parse_quad(g.vars, "p01*p23 - p02*p13 + p03*p12"));
  CHECK(g.vanishes_on_param());
  for (const auto& q : g.gens) CHECK(q.rank() == 6);

  // Distinct supports pairwise.
  std::set<std::set<std::size_t>> supports;
  for (const auto& q : g.gens) {
    auto s = q.to_poly().support();
    supports.insert(std::set<std::size_t>(s.begin(), s.end()));
  }
  CHECK(supports.size() == g.size());

  // C(n+1,4) members.
  CHECK(plucker_generators(5).gens.size() == 15);
  CHECK_THROWS_AS(plucker_generators(2), std::invalid_argument);

  // Span equals all quadrics vanishing on the minor parametrization.
  auto oracle = kernel_quadrics_images(Q, g.vars, *g.poly_param_vars, *g.poly_param,
                                       Provenance{"kernel", "plucker4"});
  CHECK(spans_equal(g.gens, oracle.gens));
}

TEST_CASE("del Pezzo surfaces S0..S5") {
  SUBCASE("S0") {
    auto g = delpezzo_surface(0);
    CHECK(g.size() == 27);
    CHECK(g.ambient() == 9);
    CHECK(g.vanishes_on_param());
  }
  SUBCASE("S1 printed list, verbatim") {
    auto g = delpezzo_surface(1);
    REQUIRE(g.size() == 20);
    CHECK(g.ambient() == 8);
    CHECK(g.gens[0] == parse_quad(g.vars, "z7^2 - z6*z8"));
    CHECK(g.gens[0].to_poly().str() == "z7^2 - z6*z8");
    CHECK(g.gens[7].to_poly().str() == "z4*z5 - z2*z8");
    CHECK(g.gens[19].to_poly().str() == "z1^2 - z0*z3");
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  }
  SUBCASE("S2 is the no-z6 sublist") {
    auto g = delpezzo_surface(2);
    REQUIRE(g.size() == 14);
    CHECK(g.ambient() == 7);
    CHECK(g.vars == std::vector<std::string>{"z0", "z1", "z2", "z3", "z4", "z5", "z7", "z8"});
    // z4*z5 - z2*z8 survives the projection, with its original name intact.
    CHECK(g.gens[3].to_poly().str() == "z4*z5 - z2*z8");
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  }
  SUBCASE("S3 spans the no-z0-no-z6 subspace, dimension 9") {
    auto g = delpezzo_surface(3);
    REQUIRE(g.size() == 9);
    CHECK(g.ambient() == 6);
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
    // Only 7 of the printed twenty avoid z0 and z6; the two completions are
    // differences of printed members.
    auto z1z5 = parse_quad(g.vars, "z1*z5 - z2*z4");
    auto z1z4 = parse_quad(g.vars, "z1*z4 - z2*z3");
    Matrix m;
    for (const auto& q : g.gens) m.push_back(q.flatten());
    auto r = rref(m);
    CHECK(in_row_span(r, z1z5.flatten()));
    CHECK(in_row_span(r, z1z4.flatten()));
  }
  SUBCASE("S4 printed list") {
    auto g = delpezzo_surface(4);
    REQUIRE(g.size() == 5);
    CHECK(g.vars == std::vector<std::string>{"z1", "z2", "z3", "z4", "z5", "z7"});
    CHECK(g.gens[0] == parse_quad(g.vars, "z3*z5 - z4*z5 - z2*z7 + z4*z7"));
    CHECK(g.independent);
    for (const auto& q : g.gens) CHECK(q.rank() <= 4);
  }
  SUBCASE("S5 restriction has dimension 20") {
    auto g = delpezzo_surface(5);
    CHECK(g.size() == 20);
    CHECK(g.ambient() == 8);
    CHECK(g.vanishes_on_param());
    CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  }
  CHECK_THROWS_AS(delpezzo_surface(6), std::invalid_argument);
}

TEST_CASE("non-normal del Pezzo presentations") {
  SUBCASE("S1 at e=3: strip minors plus F_3, F_4") {
    auto g = nonnormal_delpezzo(NonNormalKind::S1, 3);
    REQUIRE(g.size() == 5);
    CHECK(g.ambient() == 5);
    CHECK(g.gens[0] == parse_quad(g.vars, "z2*z4 - z3^2"));
    CHECK(g.gens[3] == parse_quad(g.vars, "z2^2 + z1*z3 - z0*z4"));  // F_3
    CHECK(g.gens[4] == parse_quad(g.vars, "z2*z3 + z1*z4 - z0*z5"));  // F_4
  }
  SUBCASE("S2: G_3 = z1*z2 - z0*z4") {
    for (unsigned e = 3; e <= 5; ++e) {
      auto g = nonnormal_delpezzo(NonNormalKind::S2, e);
      CHECK(g.size() == e * (e - 1) / 2 + e - 1);
      CHECK(g.gens[e * (e - 1) / 2] == parse_quad(g.vars, "z1*z2 - z0*z4"));
      for (const auto& q : g.gens) CHECK(q.rank() <= 4);
    }
  }
  SUBCASE("T at e=3: A2 over 3<=i<j<=5 plus H_4, H_5") {
    auto g = nonnormal_delpezzo(NonNormalKind::T, 3);
    REQUIRE(g.size() == 5);
    CHECK(g.ambient() == 6);
    CHECK(g.gens[0] == parse_quad(g.vars, "z3*z5 - z4^2"));
    CHECK(g.gens[3] == parse_quad(g.vars, "z1*z3 + z0*z4 - z2*z5"));  // H_4
    CHECK(g.gens[4] == parse_quad(g.vars, "z1*z4 + z0*z5 - z2*z6"));  // H_5
    for (const auto& q : g.gens) CHECK(q.rank() <= 6);
  }
  CHECK_THROWS_AS(nonnormal_delpezzo(NonNormalKind::S1, 2), std::invalid_argument);
}

TEST_CASE("grassmann sections") {
  auto x5 = grassmann_section(5);
  CHECK(x5.size() == 5);
  CHECK(x5.vars.size() == 9);
  auto x4 = grassmann_section(4);
  CHECK(x4.size() == 5);
  CHECK(x4.vars.size() == 8);
  auto x3 = grassmann_section(3);
  CHECK(x3.size() == 5);
  CHECK(x3.vars.size() == 7);
  CHECK_THROWS_AS(grassmann_section(6), std::invalid_argument);

  // Substituting p34 = p01 + p02 into Q(0,1,3,4) by hand:
  // p01 p34 - p03 p14 + p13 p04 -> p01^2 + p01 p02 - p03 p14 + p04 p13.
  CHECK(x5.gens[2] == parse_quad(x5.vars, "p01^2 + p01*p02 - p03*p14 + p04*p13"));
}

TEST_CASE("veronese projection of the 2-uple of P3") {
  auto g = veronese_projection(3, 2);
  REQUIRE(g.size() == 14);
  CHECK(g.ambient() == 8);
  CHECK(g.vanishes_on_param());
  CHECK(spans_equal(g.gens, kernel_quadrics(*g.param).gens));
  for (const auto& q : g.gens) CHECK(q.rank() <= 4);
}

TEST_CASE("restrict_hyperplane") {
  SUBCASE("conic pinched to a rank-2 pair") {
    auto g = kernel_quadrics(veronese_map(1, 2));
    LinForm ell(Q, 3);
    ell.coeffs[2] = FieldElement::one(Q);
    ell.coeffs[0] = FieldElement::from_int(Q, -1);  // z2 - z0
    auto r = restrict_hyperplane(g, ell, 2);
    REQUIRE(r.size() == 1);
    CHECK(r.gens[0] == parse_quad(r.vars, "z0^2 - z1^2"));
    CHECK(r.ambient() == 1);
  }
  SUBCASE("pivot must appear in the hyperplane") {
    auto g = kernel_quadrics(veronese_map(1, 2));
    LinForm ell(Q, 3);
    ell.coeffs[0] = FieldElement::one(Q);
    CHECK_THROWS_AS(restrict_hyperplane(g, ell, 2), std::invalid_argument);
  }
  SUBCASE("restriction of the 2-uple of P3 by z3 - z5 has dimension 20") {
    auto y = kernel_quadrics(veronese_map(3, 2));
    LinForm ell(Q, 10);
    ell.coeffs[3] = FieldElement::one(Q);
    ell.coeffs[5] = FieldElement::from_int(Q, -1);
    auto r = restrict_hyperplane(y, ell, 3);
    CHECK(r.size() == 20);
  }
  SUBCASE("restriction preserves span membership") {
    auto g = scroll_generators({2, 2});
    LinForm ell(Q, 6);
    for (std::size_t i = 0; i < 6; ++i) ell.coeffs[i] = FieldElement::from_int(Q, (i * 3 + 1) % 5);
    auto raw = restrict_generators_raw(g, ell, 0);
    auto basis = restrict_hyperplane(g, ell, 0);
    Matrix m;
    for (const auto& q : basis.gens) m.push_back(q.flatten());
    auto r = rref(m);
    for (const auto& q : raw) CHECK(in_row_span(r, q.flatten()));
    // A quadric in the span restricts into the restricted span.
    QuadForm combo = g.gens[0] + g.gens[2].scaled(FieldElement::from_int(Q, 3));
    GeneratorSet gg = g;
    gg.gens = {combo};
    auto rr = restrict_generators_raw(gg, ell, 0);
    for (const auto& q : rr) CHECK(in_row_span(r, q.flatten()));
  }
}

TEST_CASE("variety grammar") {
  CHECK(parse_variety("scroll:1,2").size() == 3);
  CHECK(parse_variety("veronese:1,3").size() == 3);
  CHECK(parse_variety("segre:1,1").size() == 1);
  CHECK(parse_variety("plucker:4").size() == 5);
  CHECK(parse_variety("delpezzo:S1").size() == 20);
  CHECK(parse_variety("nonnormal:S1,e=3").size() == 5);
  CHECK(parse_variety("nonnormal:T,e=4").size() == 9);
  CHECK(parse_variety("grassec:3").size() == 5);
  CHECK(parse_variety("veroproj:3,2").size() == 14);
  CHECK_THROWS_AS(parse_variety("foo:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_variety("delpezzo:S9"), std::invalid_argument);
  CHECK_THROWS_AS(parse_variety("nonnormal:S1"), std::invalid_argument);
  CHECK(VarietySpec::parse("nonnormal:T,e=5").str() == "nonnormal:T,e=5");
  CHECK(VarietySpec::parse("scroll:1,1,2").str() == "scroll:1,1,2");
}

TEST_CASE("catalog generators all vanish on their parametrizations") {
  for (const char* spec : {"scroll:1,2", "scroll:2,2", "scroll:1,1,2", "veronese:2,3",
                           "segre:1,2", "segre:2,2", "plucker:4", "delpezzo:S0", "delpezzo:S1",
                           "delpezzo:S2", "delpezzo:S3", "delpezzo:S4", "delpezzo:S5",
                           "veroproj:3,2"}) {
    CAPTURE(spec);
    CHECK(parse_variety(spec).vanishes_on_param());
  }
}
