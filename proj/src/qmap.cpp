#include "qri/qmap.hpp"

#include "qri/linalg.hpp"

#include <map>

namespace qri {

namespace {

QuadForm quad_from_linforms(const std::vector<std::string>& vars, const LinForm& a,
                            const LinForm& b) {
  QuadForm q(a.field, vars);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j].is_zero()) continue;
      q.add(i, j, a.coeffs[i] * b.coeffs[j]);
    }
  }
  return q;
}

MultiPoly param_var(const Field& f, const MonomialMap& map, std::size_t i) {
  return MultiPoly::variable(f, map.param_vars, i);
}

MultiPoly param_one(const Field& f, const MonomialMap& map) {
  return MultiPoly::constant(f, map.param_vars, FieldElement::one(f));
}

}  // namespace

LinForm lift_to_coords(const MultiPoly& p, const MonomialMap& map) {
  if (p.vars() != map.param_vars) throw lift_error("lift_to_coords: wrong parameter ring");
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < map.images.size(); ++i) index[map.images[i]] = i;
  LinForm out(p.field(), map.coords());
  for (const auto& [m, c] : p.terms()) {
    auto it = index.find(m);
    if (it == index.end())
      throw lift_error("lift_to_coords: monomial " +
                       MultiPoly::from_monomial(p.field(), p.vars(), m,
                                                FieldElement::one(p.field()))
                           .str() +
                       " is not an image coordinate");
    out.coeffs[it->second] += c;
  }
  return out;
}

QuadForm qab(const MultiPoly& s, const MultiPoly& t, const MultiPoly& h,
             const MonomialMap& map) {
  LinForm a = lift_to_coords(s * s * h, map);
  LinForm b = lift_to_coords(t * t * h, map);
  LinForm c = lift_to_coords(s * t * h, map);
  QuadForm q = quad_from_linforms(map.coord_names, a, b) - quad_from_linforms(map.coord_names, c, c);
  if (!q.is_zero() && q.rank() > 3)
    throw std::logic_error("qab: output rank exceeds 3");
  return q;
}

GeneratorSet gamma_v2p3() {
  const Field f = Field::rationals();
  MonomialMap map = veronese_map(3, 2);
  auto x = [&](std::size_t i) { return param_var(f, map, i); };
  MultiPoly one = param_one(f, map);

  std::vector<QuadForm> gens;
  // Pairs of coordinates.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) gens.push_back(qab(x(i), x(j), one, map));
  // Pair sum against a third coordinate.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        if (k == i || k == j) continue;
        gens.push_back(qab(x(i) + x(j), x(k), one, map));
      }
  // Complementary pair sums; the pair containing 0 goes first.
  for (std::size_t j = 1; j < 4; ++j) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 1; k < 4; ++k)
      if (k != j) rest.push_back(k);
    gens.push_back(qab(x(0) + x(j), x(rest[0]) + x(rest[1]), one, map));
  }

  // The three families print 21 members; check they are distinct up to scale.
  std::vector<QuadForm> seen;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    QuadForm n = g.normalized();
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == n;
    if (!dup) seen.push_back(n);
  }
  if (gens.size() != 21 || seen.size() != 21)
    throw std::logic_error("gamma_v2p3: expected 21 distinct members, got " +
                           std::to_string(seen.size()));

  GeneratorSet out;
  out.field = f;
  out.vars = map.coord_names;
  out.gens = std::move(gens);
  out.provenance = Provenance{"gamma", "v2p3"};
  out.param = map;
  out.independent = out.check_independent();
  return out;
}

GeneratorSet gamma_v3p2() {
  const Field f = Field::rationals();
  MonomialMap map = veronese_map(2, 3);
  auto x = [&](std::size_t i) { return param_var(f, map, i); };

  std::vector<QuadForm> gens;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) gens.push_back(qab(x(i), x(j), x(k), map));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = k + 1; l < 3; ++l)
          gens.push_back(qab(x(i), x(j), x(k) + x(l), map));
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != i) rest.push_back(k);
    for (std::size_t l = 0; l < 3; ++l)
      gens.push_back(qab(x(i), x(rest[0]) + x(rest[1]), x(l), map));
  }
  if (gens.size() != 27) throw std::logic_error("gamma_v3p2: expected 27 members");

  GeneratorSet out;
  out.field = f;
  out.vars = map.coord_names;
  out.gens = std::move(gens);
  out.provenance = Provenance{"gamma", "v3p2"};
  out.param = map;
  out.independent = out.check_independent();
  if (!out.independent) throw std::logic_error("gamma_v3p2: members are dependent");
  return out;
}

GeneratorSet s5_witness() {
  const Field f = Field::rationals();
  GeneratorSet gamma = gamma_v2p3();

  LinForm ell(f, gamma.vars.size());
  ell.coeffs[3] = FieldElement::one(f);
  ell.coeffs[5] = FieldElement::from_int(f, -1);  // z3 - z5
  std::vector<QuadForm> restricted = restrict_generators_raw(gamma, ell, 3);

  // The extra rank-3 member: z3 z5 - z2 z6 restricted along z3 = z5.
  QuadForm extra(f, gamma.vars);
  extra.add(3, 5, FieldElement::one(f));
  extra.add(2, 6, FieldElement::from_int(f, -1));
  GeneratorSet holder = gamma;
  holder.gens = {extra};
  auto extra_restricted = restrict_generators_raw(holder, ell, 3);
  restricted.insert(restricted.end(), extra_restricted.begin(), extra_restricted.end());

  GeneratorSet out;
  out.field = f;
  out.vars = gamma.vars;
  out.vars.erase(out.vars.begin() + 3);
  out.gens = std::move(restricted);
  out.provenance = Provenance{"gamma", "s5"};
  out.independent = false;
  for (const auto& g : out.gens)
    if (g.rank() > 3) throw std::logic_error("s5_witness: member of rank > 3");
  return out;
}

GeneratorSet veronese_rank3_witness(unsigned n, unsigned d) {
  if (d < 2) throw std::invalid_argument("veronese_rank3_witness: need d >= 2");
  const Field f = Field::rationals();
  MonomialMap map = veronese_map(n, d);
  GeneratorSet kernel = kernel_quadrics(map);
  const std::size_t target = kernel.size();

  std::vector<MultiPoly> linear;
  for (std::size_t i = 0; i <= n; ++i) linear.push_back(param_var(f, map, i));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) linear.push_back(linear[i] + linear[j]);

  std::vector<MultiPoly> sections;
  if (d == 2) {
    sections.push_back(param_one(f, map));
  } else {
    MonomialMap lower = veronese_map(n, d - 2);
    for (const auto& m : lower.images)
      sections.push_back(MultiPoly::from_monomial(f, map.param_vars, m, FieldElement::one(f)));
    const std::size_t base = sections.size();
    for (std::size_t i = 0; i < base; ++i)
      for (std::size_t j = i + 1; j < base; ++j) sections.push_back(sections[i] + sections[j]);
  }

  GeneratorSet out;
  out.field = f;
  out.vars = map.coord_names;
  out.provenance = Provenance{"rank3-witness", "veronese:" + std::to_string(n) + "," +
                                                   std::to_string(d)};
  out.param = map;
  SpanBuilder span(f);
  for (std::size_t a = 0; a < linear.size() && span.dim() < target; ++a)
    for (std::size_t b = a + 1; b < linear.size() && span.dim() < target; ++b)
      for (const auto& h : sections) {
        QuadForm q = qab(linear[a], linear[b], h, map);
        if (!q.is_zero() && span.insert(q.flatten())) {
          out.gens.push_back(q);
          if (span.dim() == target) break;
        }
      }
  if (span.dim() != target)
    throw std::logic_error("veronese_rank3_witness: family spans only " +
                           std::to_string(span.dim()) + " of " + std::to_string(target));
  out.independent = true;
  return out;
}

}  // namespace qri
