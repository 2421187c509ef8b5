#include "qri/catalog.hpp"

#include "qri/linalg.hpp"
#include "qri/parse.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qri {

namespace {

std::vector<std::string> indexed_names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

const char* block_letter(std::size_t b) {
  static const char* letters[] = {"x", "y", "w", "v", "u"};
  return b < 5 ? letters[b] : nullptr;
}

std::string join_nums(const std::vector<unsigned>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

QuadForm minor2(const Field& f, const std::vector<std::string>& vars, std::size_t a,
                std::size_t b, std::size_t c, std::size_t d) {
  // z_a z_d - z_b z_c
  QuadForm q(f, vars);
  q.add(a, d, FieldElement::one(f));
  q.add(b, c, FieldElement::from_int(f, -1));
  return q;
}

QuadForm drop_unused(const QuadForm& q, std::size_t var) {
  return QuadForm::from_poly(q.to_poly().dropped_var(var));
}

void finalize_independent(GeneratorSet& g) {
  if (!g.check_independent())
    throw std::logic_error("catalog: generator set unexpectedly dependent: " +
                           g.provenance.str());
  g.independent = true;
}

}  // namespace

MultiPoly MonomialMap::image_poly(const Field& f, std::size_t i) const {
  return MultiPoly::from_monomial(f, param_vars, images.at(i), FieldElement::one(f));
}

void MonomialMap::validate() const {
  if (coord_names.size() != images.size())
    throw std::invalid_argument("MonomialMap: name/image count mismatch");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != param_vars.size())
      throw std::invalid_argument("MonomialMap: image arity");
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] == images[j]) throw std::invalid_argument("MonomialMap: repeated image");
  }
  auto blocks = degree_blocks;
  if (blocks.empty()) {
    blocks.emplace_back();
    for (std::size_t v = 0; v < param_vars.size(); ++v) blocks.back().push_back(v);
  }
  for (const auto& block : blocks) {
    unsigned d0 = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      unsigned d = 0;
      for (auto v : block) d += images[i][v];
      if (i == 0)
        d0 = d;
      else if (d != d0)
        throw std::invalid_argument("MonomialMap: non-uniform block degree");
    }
  }
}

std::string MonomialMap::str() const {
  std::ostringstream out;
  Field q = Field::rationals();
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (i) out << " : ";
    out << image_poly(q, i).str();
  }
  return out.str();
}

Matrix GeneratorSet::flatten() const {
  Matrix m;
  m.reserve(gens.size());
  for (const auto& g : gens) m.push_back(g.flatten());
  return m;
}

GeneratorSet GeneratorSet::to_field(const Field& f) const {
  GeneratorSet out = *this;
  out.field = f;
  for (auto& g : out.gens) g = g.to_field(f);
  if (out.poly_param) {
    for (auto& p : *out.poly_param) p = p.to_field(f);
  }
  out.independent = out.check_independent();
  return out;
}

bool GeneratorSet::check_independent() const {
  if (gens.empty()) return true;
  return rref(flatten()).rank == gens.size();
}

bool GeneratorSet::vanishes_on_param() const {
  std::vector<MultiPoly> images;
  if (param) {
    for (std::size_t i = 0; i < param->coords(); ++i) images.push_back(param->image_poly(field, i));
  } else if (poly_param) {
    images = *poly_param;
  } else {
    return true;
  }
  if (images.size() != vars.size()) return false;
  for (const auto& g : gens) {
    MultiPoly acc(field, images[0].vars());
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i; j < vars.size(); ++j) {
        FieldElement c = g.coeff(i, j);
        if (!c.is_zero()) acc += (images[i] * images[j]).scaled(c);
      }
    if (!acc.is_zero()) return false;
  }
  return true;
}

std::vector<QuadForm> greedy_basis(const std::vector<QuadForm>& gens) {
  std::vector<QuadForm> out;
  if (gens.empty()) return out;
  SpanBuilder span(gens[0].field());
  for (const auto& g : gens)
    if (!g.is_zero() && span.insert(g.flatten())) out.push_back(g);
  return out;
}

MonomialMap veronese_map(unsigned n, unsigned d) {
  if (n < 1 || d < 1) throw std::invalid_argument("veronese_map: need n, d >= 1");
  MonomialMap map;
  map.param_vars = indexed_names("x", n + 1);
  // Lexicographic with x_0 dominant, descending; matches the usual listings.
  std::vector<Monomial> images;
  Monomial cur(n + 1, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned rest) -> void {
    if (var == n) {
      cur[var] = rest;
      images.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (int e = static_cast<int>(rest); e >= 0; --e) {
      cur[var] = static_cast<unsigned>(e);
      self(self, var + 1, rest - static_cast<unsigned>(e));
    }
    cur[var] = 0;
  };
  rec(rec, 0, d);
  map.images = std::move(images);
  map.coord_names = indexed_names("z", map.images.size());
  map.validate();
  return map;
}

MonomialMap param_drop(const MonomialMap& map, std::size_t index) {
  if (index >= map.images.size()) throw std::out_of_range("param_drop: index");
  MonomialMap out = map;
  out.images.erase(out.images.begin() + static_cast<std::ptrdiff_t>(index));
  out.coord_names.erase(out.coord_names.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

GeneratorSet kernel_quadrics_images(Field f, std::vector<std::string> coord_names,
                                    std::vector<std::string> param_vars,
                                    std::vector<MultiPoly> images, Provenance prov) {
  const std::size_t n = coord_names.size();
  if (images.size() != n) throw std::invalid_argument("kernel_quadrics: image count");

  // Row per product monomial, column per coordinate pair (i <= j).
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);

  std::map<Monomial, std::size_t, MonomialGreater> row_of;
  std::vector<std::vector<std::pair<std::size_t, FieldElement>>> cols(pairs.size());
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    MultiPoly prod = images[pairs[c].first] * images[pairs[c].second];
    for (const auto& [m, v] : prod.terms()) {
      auto [it, inserted] = row_of.emplace(m, row_of.size());
      cols[c].emplace_back(it->second, v);
    }
  }
  Matrix a(row_of.size(), std::vector<FieldElement>(pairs.size(), FieldElement::zero(f)));
  for (std::size_t c = 0; c < pairs.size(); ++c)
    for (const auto& [r, v] : cols[c]) a[r][c] += v;

  GeneratorSet out;
  out.field = f;
  out.vars = std::move(coord_names);
  out.provenance = std::move(prov);
  for (auto& v : nullspace_basis(a, pairs.size(), f))
    out.gens.push_back(QuadForm::from_flat(f, out.vars, v).normalized());
  out.poly_param_vars = param_vars;
  out.poly_param = std::move(images);
  finalize_independent(out);
  return out;
}

GeneratorSet kernel_quadrics(const MonomialMap& map, Field f) {
  map.validate();
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < map.coords(); ++i) images.push_back(map.image_poly(f, i));
  GeneratorSet out = kernel_quadrics_images(f, map.coord_names, map.param_vars,
                                            std::move(images),
                                            Provenance{"kernel", map.str()});
  out.param = map;
  out.poly_param.reset();
  out.poly_param_vars.reset();
  return out;
}

GeneratorSet scroll_generators(const std::vector<unsigned>& degrees) {
  if (degrees.empty()) throw std::invalid_argument("scroll_generators: empty degree list");
  for (auto a : degrees)
    if (a < 1) throw std::invalid_argument("scroll_generators: degrees must be >= 1");
  const std::size_t k = degrees.size();

  Field f = Field::rationals();
  MonomialMap map;
  map.param_vars = {"s", "t"};
  std::vector<std::size_t> scalar_block;
  for (std::size_t b = 0; b < k; ++b) {
    const char* letter = block_letter(b);
    map.param_vars.push_back(letter ? letter : "u" + std::to_string(b));
    scalar_block.push_back(2 + b);
  }
  // Every coordinate is linear in the block scalars jointly; the (s,t)
  // bidegree is uniform only when all block degrees agree.
  if (std::all_of(degrees.begin(), degrees.end(), [&](unsigned a) { return a == degrees[0]; }))
    map.degree_blocks.push_back({0, 1});
  map.degree_blocks.push_back(scalar_block);

  // Block b contributes degrees[b]+1 coordinates; coordinate i maps to
  // s^(a_b - i) t^i times the block scalar.
  std::vector<std::string> vars;
  std::vector<std::size_t> block_start;
  for (std::size_t b = 0; b < k; ++b) {
    block_start.push_back(vars.size());
    for (unsigned i = 0; i <= degrees[b]; ++i) {
      vars.push_back(map.param_vars[2 + b] + std::to_string(i));
      Monomial m(map.param_vars.size(), 0);
      m[0] = degrees[b] - i;
      m[1] = i;
      m[2 + b] = 1;
      map.images.push_back(m);
    }
  }
  map.coord_names = vars;
  map.validate();

  GeneratorSet out;
  out.field = f;
  out.vars = vars;
  out.provenance = Provenance{"scroll", join_nums(degrees)};
  auto col = [&](std::size_t b, unsigned i) { return block_start[b] + i; };
  for (std::size_t b = 0; b < k; ++b)
    for (unsigned i = 0; i + 1 < degrees[b]; ++i)
      for (unsigned j = i + 1; j < degrees[b]; ++j)
        out.gens.push_back(minor2(f, vars, col(b, i), col(b, i + 1), col(b, j), col(b, j + 1)));
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t c = b + 1; c < k; ++c)
      for (unsigned i = 0; i < degrees[b]; ++i)
        for (unsigned j = 0; j < degrees[c]; ++j)
          out.gens.push_back(minor2(f, vars, col(b, i), col(b, i + 1), col(c, j), col(c, j + 1)));
  out.param = map;
  finalize_independent(out);
  return out;
}

GeneratorSet segre_generators(const std::vector<unsigned>& dims) {
  if (dims.size() < 2) throw std::invalid_argument("segre_generators: need at least 2 factors");
  for (auto nk : dims)
    if (nk < 1) throw std::invalid_argument("segre_generators: factor dims must be >= 1");
  const std::size_t l = dims.size();
  Field f = Field::rationals();

  // Coordinates indexed by tuples, row-major.
  std::vector<std::vector<unsigned>> tuples;
  std::vector<unsigned> cur(l, 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == l) {
      tuples.push_back(cur);
      return;
    }
    for (unsigned i = 0; i <= dims[pos]; ++i) {
      cur[pos] = i;
      self(self, pos + 1);
    }
    cur[pos] = 0;
  };
  rec(rec, 0);

  std::map<std::vector<unsigned>, std::size_t> index_of;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    index_of[tuples[i]] = i;
    std::string name = "z";
    for (auto v : tuples[i]) name += std::to_string(v);
    vars.push_back(name);
  }

  MonomialMap map;
  std::vector<std::size_t> factor_var_start;
  for (std::size_t fac = 0; fac < l; ++fac) {
    const char* letter = block_letter(fac);
    std::string prefix = letter ? letter : "u" + std::to_string(fac);
    factor_var_start.push_back(map.param_vars.size());
    map.degree_blocks.emplace_back();
    for (unsigned i = 0; i <= dims[fac]; ++i) {
      map.degree_blocks.back().push_back(map.param_vars.size());
      map.param_vars.push_back(prefix + std::to_string(i));
    }
  }
  for (const auto& tup : tuples) {
    Monomial m(map.param_vars.size(), 0);
    for (std::size_t fac = 0; fac < l; ++fac) m[factor_var_start[fac] + tup[fac]] = 1;
    map.images.push_back(m);
  }
  map.coord_names = vars;
  map.validate();

  // 2-minors of every one-factor flattening, greedily reduced to a basis.
  std::vector<QuadForm> minors;
  for (std::size_t fac = 0; fac < l; ++fac) {
    std::vector<std::vector<unsigned>> rest;
    std::vector<unsigned> rcur(l, 0);
    auto rrec = [&](auto&& self, std::size_t pos) -> void {
      if (pos == l) {
        rest.push_back(rcur);
        return;
      }
      if (pos == fac) {
        self(self, pos + 1);
        return;
      }
      for (unsigned i = 0; i <= dims[pos]; ++i) {
        rcur[pos] = i;
        self(self, pos + 1);
      }
      rcur[pos] = 0;
    };
    rrec(rrec, 0);
    for (unsigned a = 0; a <= dims[fac]; ++a)
      for (unsigned b = a + 1; b <= dims[fac]; ++b)
        for (std::size_t u = 0; u < rest.size(); ++u)
          for (std::size_t v = u + 1; v < rest.size(); ++v) {
            auto at = [&](unsigned row, const std::vector<unsigned>& r) {
              auto tup = r;
              tup[fac] = row;
              return index_of.at(tup);
            };
            QuadForm q(f, vars);
            q.add(at(a, rest[u]), at(b, rest[v]), FieldElement::one(f));
            q.add(at(a, rest[v]), at(b, rest[u]), FieldElement::from_int(f, -1));
            minors.push_back(q);
          }
  }

  GeneratorSet out;
  out.field = f;
  out.vars = vars;
  out.provenance = Provenance{"segre", join_nums(dims)};
  out.gens = greedy_basis(minors);
  out.param = map;
  finalize_independent(out);
  return out;
}

GeneratorSet plucker_generators(unsigned n) {
  if (n < 3) throw std::invalid_argument("plucker_generators: need n >= 3");
  Field f = Field::rationals();
  std::vector<std::string> vars;
  std::map<std::pair<unsigned, unsigned>, std::size_t> index_of;
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) {
      index_of[{i, j}] = vars.size();
      vars.push_back("p" + std::to_string(i) + std::to_string(j));
    }

  GeneratorSet out;
  out.field = f;
  out.vars = vars;
  out.provenance = Provenance{"plucker", std::to_string(n)};
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j)
      for (unsigned k = j + 1; k <= n; ++k)
        for (unsigned l = k + 1; l <= n; ++l) {
          QuadForm q(f, vars);
          q.add(index_of[{i, j}], index_of[{k, l}], FieldElement::one(f));
          q.add(index_of[{i, k}], index_of[{j, l}], FieldElement::from_int(f, -1));
          q.add(index_of[{j, k}], index_of[{i, l}], FieldElement::one(f));
          out.gens.push_back(q);
        }

  // Polynomial images: p_ij -> s_i t_j - s_j t_i.
  std::vector<std::string> pvars;
  for (unsigned i = 0; i <= n; ++i) pvars.push_back("s" + std::to_string(i));
  for (unsigned i = 0; i <= n; ++i) pvars.push_back("t" + std::to_string(i));
  std::vector<MultiPoly> images;
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) {
      MultiPoly p(f, pvars);
      Monomial m1(pvars.size(), 0), m2(pvars.size(), 0);
      m1[i] = 1;
      m1[n + 1 + j] = 1;
      m2[j] = 1;
      m2[n + 1 + i] = 1;
      p.add_term(m1, FieldElement::one(f));
      p.add_term(m2, FieldElement::from_int(f, -1));
      images.push_back(p);
    }
  out.poly_param_vars = pvars;
  out.poly_param = std::move(images);
  finalize_independent(out);
  return out;
}

namespace {

const char* const kS1List[20] = {
    "z7^2 - z6*z8", "z5*z7 - z4*z8", "z4*z7 - z3*z8", "z2*z7 - z1*z8", "z5*z6 - z3*z8",
    "z4*z6 - z3*z7", "z2*z6 - z1*z7", "z4*z5 - z2*z8", "z3*z5 - z1*z8", "z1*z5 - z0*z8",
    "z4^2 - z1*z8",  "z3*z4 - z1*z7", "z2*z4 - z0*z8", "z1*z4 - z0*z7", "z3^2 - z1*z6",
    "z2*z3 - z0*z7", "z1*z3 - z0*z6", "z2^2 - z0*z5",  "z1*z2 - z0*z4", "z1^2 - z0*z3"};

const char* const kS4List[5] = {
    "z3*z5 - z4*z5 - z2*z7 + z4*z7", "z4^2 - z4*z5 - z2*z7 + z5*z7",
    "z3*z4 - z4*z5 - z1*z7 - z2*z7 + z4*z7 + z5*z7", "z2*z4 - z2*z7 - z1*z7 + z5*z7",
    "z2*z3 - z2*z7 - z1*z4 + z4*z7"};

const char* const kVeroProj32List[14] = {
    "z6*z7 - z5*z8", "z3*z7 - z2*z8", "z5*z6 - z4*z8", "z2*z6 - z1*z8", "z5^2 - z4*z7",
    "z3*z5 - z1*z8", "z2*z5 - z1*z7", "z3*z4 - z1*z6", "z2*z4 - z1*z5", "z2*z3 - z0*z8",
    "z1*z3 - z0*z6", "z2^2 - z0*z7", "z1*z2 - z0*z5", "z1^2 - z0*z4"};

/// Members of span(gens) whose support avoids the given variables entirely.
std::vector<QuadForm> span_subspace_avoiding(const std::vector<QuadForm>& gens,
                                             const std::vector<std::size_t>& avoid) {
  if (gens.empty()) return {};
  const Field f = gens[0].field();
  const auto& vars = gens[0].vars();
  const std::size_t n = vars.size();
  auto base = rref([&] {
    Matrix m;
    for (const auto& g : gens) m.push_back(g.flatten());
    return m;
  }());

  std::vector<std::size_t> forbidden;
  {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++idx)
        for (auto v : avoid)
          if (i == v || j == v) {
            forbidden.push_back(idx);
            break;
          }
  }
  Matrix constraints;
  for (auto p : forbidden) {
    std::vector<FieldElement> row;
    for (const auto& b : base.rows) row.push_back(b[p]);
    constraints.push_back(std::move(row));
  }
  std::vector<QuadForm> out;
  for (const auto& y : nullspace_basis(constraints, base.rank, f)) {
    std::vector<FieldElement> flat(n * (n + 1) / 2, FieldElement::zero(f));
    for (std::size_t i = 0; i < base.rank; ++i)
      for (std::size_t c = 0; c < flat.size(); ++c) flat[c] += y[i] * base.rows[i][c];
    out.push_back(QuadForm::from_flat(f, vars, flat).normalized());
  }
  return out;
}

MonomialMap s1_monomial_map() { return param_drop(veronese_map(2, 3), 9); }

}  // namespace

GeneratorSet delpezzo_surface(unsigned t) {
  Field f = Field::rationals();
  switch (t) {
    case 0: {
      GeneratorSet out = kernel_quadrics(veronese_map(2, 3));
      out.provenance = Provenance{"delpezzo", "S0"};
      return out;
    }
    case 1: {
      GeneratorSet out;
      out.field = f;
      out.vars = indexed_names("z", 9);
      out.provenance = Provenance{"delpezzo", "S1"};
      for (const char* s : kS1List)
        out.gens.push_back(QuadForm::from_poly(parse_poly(f, out.vars, s)));
      out.param = s1_monomial_map();
      finalize_independent(out);
      return out;
    }
    case 2: {
      GeneratorSet s1 = delpezzo_surface(1);
      GeneratorSet out;
      out.field = f;
      out.vars = s1.vars;
      out.provenance = Provenance{"delpezzo", "S2"};
      for (const auto& g : s1.gens)
        if (!g.to_poly().uses_var(6)) out.gens.push_back(g);
      for (auto& g : out.gens) g = drop_unused(g, 6);
      out.vars.erase(out.vars.begin() + 6);
      out.param = param_drop(*s1.param, 6);
      finalize_independent(out);
      return out;
    }
    case 3: {
      GeneratorSet s1 = delpezzo_surface(1);
      std::vector<QuadForm> pure;
      for (const auto& g : s1.gens) {
        auto p = g.to_poly();
        if (!p.uses_var(0) && !p.uses_var(6)) pure.push_back(g);
      }
      auto sub = span_subspace_avoiding(s1.gens, {0, 6});
      SpanBuilder span(f);
      std::vector<QuadForm> picked;
      for (const auto& g : pure)
        if (span.insert(g.flatten())) picked.push_back(g);
      for (const auto& g : sub)
        if (span.insert(g.flatten())) picked.push_back(g);
      GeneratorSet out;
      out.field = f;
      out.vars = s1.vars;
      out.provenance = Provenance{"delpezzo", "S3"};
      out.gens = std::move(picked);
      for (auto& g : out.gens) g = drop_unused(drop_unused(g, 6), 0);
      out.vars.erase(out.vars.begin() + 6);
      out.vars.erase(out.vars.begin());
      out.param = param_drop(param_drop(*s1.param, 6), 0);
      finalize_independent(out);
      return out;
    }
    case 4: {
      GeneratorSet out;
      out.field = f;
      out.vars = {"z1", "z2", "z3", "z4", "z5", "z7"};
      out.provenance = Provenance{"delpezzo", "S4"};
      for (const char* s : kS4List)
        out.gens.push_back(QuadForm::from_poly(parse_poly(f, out.vars, s)));
      // The projection point [1:1:1] is not a coordinate point, so no
      // monomial parametrization survives in the printed coordinates.
      finalize_independent(out);
      return out;
    }
    case 5: {
      GeneratorSet y = kernel_quadrics(veronese_map(3, 2));
      LinForm ell(f, y.vars.size());
      ell.coeffs[3] = FieldElement::one(f);
      ell.coeffs[5] = FieldElement::from_int(f, -1);
      GeneratorSet out = restrict_hyperplane(y, ell, 3);
      out.provenance = Provenance{"delpezzo", "S5"};
      // Parametrization through the Segre form of the quadric surface:
      // x0 = su, x1 = sv, x2 = tu, x3 = tv in the 2-uple images, z3 merged
      // into z5.
      MonomialMap map;
      map.param_vars = {"s", "t", "u", "v"};
      map.degree_blocks = {{0, 1}, {2, 3}};
      map.coord_names = out.vars;
      auto mono = [&](unsigned es, unsigned et, unsigned eu, unsigned ev) {
        return Monomial{es, et, eu, ev};
      };
      map.images = {mono(2, 0, 2, 0), mono(2, 0, 1, 1), mono(1, 1, 2, 0),
                    mono(2, 0, 0, 2), mono(1, 1, 1, 1), mono(1, 1, 0, 2),
                    mono(0, 2, 2, 0), mono(0, 2, 1, 1), mono(0, 2, 0, 2)};
      map.validate();
      out.param = map;
      return out;
    }
    default:
      throw std::invalid_argument("delpezzo_surface: t must be 0..5");
  }
}

GeneratorSet nonnormal_delpezzo(NonNormalKind kind, unsigned e) {
  if (e < 3) throw std::invalid_argument("nonnormal_delpezzo: need e >= 3");
  Field f = Field::rationals();
  GeneratorSet out;
  out.field = f;
  const bool threefold = kind == NonNormalKind::T;
  out.vars = indexed_names("z", threefold ? e + 4 : e + 3);
  const auto& vars = out.vars;

  if (!threefold) {
    // Minor strip on z_2..z_{e+2}.
    for (unsigned i = 2; i <= e; ++i)
      for (unsigned j = i + 1; j <= e + 1; ++j) out.gens.push_back(minor2(f, vars, i, i + 1, j, j + 1));
    for (unsigned i = 3; i <= e + 1; ++i) {
      QuadForm q(f, vars);
      if (kind == NonNormalKind::S1) {
        q.add(2, i - 1, FieldElement::one(f));
        q.add(1, i, FieldElement::one(f));
        q.add(0, i + 1, FieldElement::from_int(f, -1));
      } else {
        q.add(1, i - 1, FieldElement::one(f));
        q.add(0, i + 1, FieldElement::from_int(f, -1));
      }
      out.gens.push_back(q);
    }
    out.provenance =
        Provenance{"nonnormal", std::string(kind == NonNormalKind::S1 ? "S1" : "S2") +
                                    ",e=" + std::to_string(e)};
  } else {
    for (unsigned i = 3; i <= e + 1; ++i)
      for (unsigned j = i + 1; j <= e + 2; ++j) out.gens.push_back(minor2(f, vars, i, i + 1, j, j + 1));
    for (unsigned i = 4; i <= e + 2; ++i) {
      QuadForm q(f, vars);
      q.add(1, i - 1, FieldElement::one(f));
      q.add(0, i, FieldElement::one(f));
      q.add(2, i + 1, FieldElement::from_int(f, -1));
      out.gens.push_back(q);
    }
    out.provenance = Provenance{"nonnormal", "T,e=" + std::to_string(e)};
  }
  finalize_independent(out);
  return out;
}

GeneratorSet grassmann_section(unsigned k) {
  if (k < 3 || k > 5) throw std::invalid_argument("grassmann_section: k must be 3, 4 or 5");
  Field f = Field::rationals();
  GeneratorSet g = plucker_generators(4);
  // Coordinate order: p01 p02 p03 p04 p12 p13 p14 p23 p24 p34 = z0..z9.
  struct Subst {
    std::size_t var;
    std::vector<std::size_t> replacement;
  };
  std::vector<Subst> substs = {{9, {0, 1}}};                    // p34 = p01 + p02
  if (k <= 4) substs.push_back({8, {2, 3}});                    // p24 = p03 + p04
  if (k == 3) substs.push_back({7, {4, 5, 6}});                 // p23 = p12 + p13 + p14

  std::vector<MultiPoly> polys;
  for (const auto& gen : g.gens) polys.push_back(gen.to_poly());
  auto vars = g.vars;
  for (const auto& s : substs) {
    MultiPoly repl(f, vars);
    for (auto r : s.replacement) {
      Monomial m(vars.size(), 0);
      m[r] = 1;
      repl.add_term(m, FieldElement::one(f));
    }
    for (auto& p : polys) p = p.substituted(s.var, repl);
  }
  // Descending variable indices, so earlier drops leave later ones stable.
  for (const auto& s : substs) {
    for (auto& p : polys) p = p.dropped_var(s.var);
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(s.var));
  }

  GeneratorSet out;
  out.field = f;
  out.vars = vars;
  out.provenance = Provenance{"grassec", std::to_string(k)};
  for (const auto& p : polys) out.gens.push_back(QuadForm::from_poly(p));
  finalize_independent(out);
  return out;
}

GeneratorSet veronese_projection(unsigned n, unsigned d, std::optional<std::size_t> drop) {
  MonomialMap full = veronese_map(n, d);
  std::size_t idx = drop.value_or(full.coords() - 1);
  MonomialMap map = param_drop(full, idx);
  if (n == 3 && d == 2 && idx == full.coords() - 1) {
    Field f = Field::rationals();
    GeneratorSet out;
    out.field = f;
    out.vars = map.coord_names;
    out.provenance = Provenance{"veroproj", "3,2"};
    for (const char* s : kVeroProj32List)
      out.gens.push_back(QuadForm::from_poly(parse_poly(f, out.vars, s)));
    out.param = map;
    finalize_independent(out);
    return out;
  }
  GeneratorSet out = kernel_quadrics(map);
  out.provenance = Provenance{"veroproj", std::to_string(n) + "," + std::to_string(d) +
                                              ",drop=" + std::to_string(idx)};
  return out;
}

std::vector<QuadForm> restrict_generators_raw(const GeneratorSet& g, const LinForm& ell,
                                              std::size_t pivot) {
  if (!(ell.field == g.field)) throw std::invalid_argument("restrict: field mismatch");
  if (ell.coeffs.size() != g.vars.size())
    throw std::invalid_argument("restrict: hyperplane arity");
  if (pivot >= g.vars.size() || ell.coeffs[pivot].is_zero())
    throw std::invalid_argument("restrict: pivot coefficient vanishes");

  MultiPoly repl(g.field, g.vars);
  FieldElement neg_inv = -ell.coeffs[pivot].inverse();
  for (std::size_t j = 0; j < ell.coeffs.size(); ++j) {
    if (j == pivot || ell.coeffs[j].is_zero()) continue;
    Monomial m(g.vars.size(), 0);
    m[j] = 1;
    repl.add_term(m, ell.coeffs[j] * neg_inv);
  }
  std::vector<QuadForm> out;
  for (const auto& gen : g.gens) {
    MultiPoly p = gen.to_poly().substituted(pivot, repl).dropped_var(pivot);
    if (!p.is_zero()) out.push_back(QuadForm::from_poly(p));
  }
  return out;
}

GeneratorSet restrict_hyperplane(const GeneratorSet& g, const LinForm& ell, std::size_t pivot) {
  GeneratorSet out;
  out.field = g.field;
  out.vars = g.vars;
  out.vars.erase(out.vars.begin() + static_cast<std::ptrdiff_t>(pivot));
  out.gens = greedy_basis(restrict_generators_raw(g, ell, pivot));
  out.provenance = Provenance{"section", g.provenance.str() + "; " + ell.str(g.vars) +
                                             "=0; pivot=" + g.vars[pivot]};
  out.provenance.acm = g.provenance.acm;
  out.independent = true;
  return out;
}

VarietySpec VarietySpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("variety spec: expected family:params in '" + text + "'");
  std::string family = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
  };
  auto nums_of = [&](const std::string& s) {
    std::vector<unsigned> nums;
    for (const auto& part : split(s, ','))
      nums.push_back(static_cast<unsigned>(std::stoul(part)));
    return nums;
  };

  VarietySpec spec;
  if (family == "scroll") {
    spec.family = Family::scroll;
    spec.nums = nums_of(rest);
  } else if (family == "veronese") {
    spec.family = Family::veronese;
    spec.nums = nums_of(rest);
    if (spec.nums.size() != 2) throw std::invalid_argument("veronese spec: need n,d");
  } else if (family == "segre") {
    spec.family = Family::segre;
    spec.nums = nums_of(rest);
  } else if (family == "plucker") {
    spec.family = Family::plucker;
    spec.nums = nums_of(rest);
    if (spec.nums.size() != 1) throw std::invalid_argument("plucker spec: need n");
  } else if (family == "delpezzo") {
    spec.family = Family::delpezzo;
    if (rest.size() != 2 || (rest[0] != 'S' && rest[0] != 's') || rest[1] < '0' || rest[1] > '5')
      throw std::invalid_argument("delpezzo spec: expected S0..S5");
    spec.nums = {static_cast<unsigned>(rest[1] - '0')};
  } else if (family == "nonnormal") {
    spec.family = Family::nonnormal;
    auto parts = split(rest, ',');
    if (parts.size() != 2 || parts[1].substr(0, 2) != "e=")
      throw std::invalid_argument("nonnormal spec: expected S1|S2|T,e=<int>");
    if (parts[0] == "S1")
      spec.nn_kind = NonNormalKind::S1;
    else if (parts[0] == "S2")
      spec.nn_kind = NonNormalKind::S2;
    else if (parts[0] == "T")
      spec.nn_kind = NonNormalKind::T;
    else
      throw std::invalid_argument("nonnormal spec: kind must be S1, S2 or T");
    spec.nn_e = static_cast<unsigned>(std::stoul(parts[1].substr(2)));
  } else if (family == "grassec") {
    spec.family = Family::grassec;
    spec.nums = nums_of(rest);
    if (spec.nums.size() != 1) throw std::invalid_argument("grassec spec: need 3, 4 or 5");
  } else if (family == "veroproj") {
    spec.family = Family::veroproj;
    spec.nums = nums_of(rest);
    if (spec.nums.size() != 2 && spec.nums.size() != 3)
      throw std::invalid_argument("veroproj spec: need n,d[,drop]");
  } else {
    throw std::invalid_argument("unknown variety family '" + family + "'");
  }
  return spec;
}

std::string VarietySpec::str() const {
  switch (family) {
    case Family::scroll:
      return "scroll:" + join_nums(nums);
    case Family::veronese:
      return "veronese:" + join_nums(nums);
    case Family::segre:
      return "segre:" + join_nums(nums);
    case Family::plucker:
      return "plucker:" + join_nums(nums);
    case Family::delpezzo:
      return "delpezzo:S" + std::to_string(nums[0]);
    case Family::nonnormal:
      return std::string("nonnormal:") +
             (nn_kind == NonNormalKind::S1 ? "S1" : nn_kind == NonNormalKind::S2 ? "S2" : "T") +
             ",e=" + std::to_string(nn_e);
    case Family::grassec:
      return "grassec:" + join_nums(nums);
    case Family::veroproj:
      return "veroproj:" + join_nums(nums);
  }
  return "?";
}

GeneratorSet build_variety(const VarietySpec& spec) {
  using F = VarietySpec::Family;
  switch (spec.family) {
    case F::scroll:
      return scroll_generators(spec.nums);
    case F::veronese: {
      GeneratorSet g = kernel_quadrics(veronese_map(spec.nums[0], spec.nums[1]));
      g.provenance = Provenance{"veronese", join_nums(spec.nums)};
      return g;
    }
    case F::segre:
      return segre_generators(spec.nums);
    case F::plucker:
      return plucker_generators(spec.nums[0]);
    case F::delpezzo:
      return delpezzo_surface(spec.nums[0]);
    case F::nonnormal:
      return nonnormal_delpezzo(spec.nn_kind, spec.nn_e);
    case F::grassec:
      return grassmann_section(spec.nums[0]);
    case F::veroproj:
      return veronese_projection(spec.nums[0], spec.nums[1],
                                 spec.nums.size() == 3
                                     ? std::optional<std::size_t>(spec.nums[2])
                                     : std::nullopt);
  }
  throw std::logic_error("build_variety: unreachable");
}

GeneratorSet parse_variety(const std::string& text) {
  return build_variety(VarietySpec::parse(text));
}

}  // namespace qri
