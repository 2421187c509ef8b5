#include "qri/engine.hpp"

#include "qri/qmap.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace qri {

namespace {

std::vector<std::string> xnames_for(std::size_t t1) {
  std::vector<std::string> v;
  v.reserve(t1);
  for (std::size_t i = 0; i < t1; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::int64_t mod_norm(std::int64_t v, std::int64_t q) {
  v %= q;
  return v < 0 ? v + q : v;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t q) {
  std::int64_t t = 0, nt = 1, r = q, nr = mod_norm(a, q);
  while (nr != 0) {
    std::int64_t d = r / nr;
    std::int64_t tmp = t - d * nt;
    t = nt;
    nt = tmp;
    tmp = r - d * nr;
    r = nr;
    nr = tmp;
  }
  return mod_norm(t, q);
}

}  // namespace

MultiPoly Pencil::entry(std::size_t i, std::size_t j) const {
  MultiPoly p(field(), xnames);
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const FieldElement& c = mats[k].at(i, j);
    if (c.is_zero()) continue;
    Monomial m(xnames.size(), 0);
    m[k] = 1;
    p.add_term(m, c);
  }
  return p;
}

SymMatrix Pencil::evaluate(std::span<const FieldElement> x) const {
  if (x.size() != mats.size()) throw std::invalid_argument("Pencil::evaluate: arity");
  SymMatrix out(field(), matrix_size());
  for (std::size_t i = 0; i < matrix_size(); ++i)
    for (std::size_t j = i; j < matrix_size(); ++j) {
      FieldElement acc = FieldElement::zero(field());
      for (std::size_t k = 0; k < mats.size(); ++k) acc += x[k] * mats[k].at(i, j);
      out.set(i, j, acc);
    }
  return out;
}

std::string Pencil::generator_order_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  feed(basis.provenance.str());
  feed(basis.field.name());
  for (const auto& g : basis.gens) feed(g.to_poly().str());
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

Pencil assemble_pencil(const GeneratorSet& g, bool allow_reduce) {
  GeneratorSet basis = g;
  if (!basis.check_independent()) {
    if (!allow_reduce)
      throw std::invalid_argument("assemble_pencil: dependent generators (pass allow_reduce)");
    basis.gens = greedy_basis(basis.gens);
    basis.provenance.detail += ";reduced";
  }
  basis.independent = true;
  Pencil p;
  p.basis = std::move(basis);
  for (const auto& q : p.basis.gens) p.mats.push_back(quad_to_sym(q));
  p.xnames = xnames_for(p.mats.size());
  return p;
}

namespace {

std::vector<std::vector<MultiPoly>> symbolic_submatrix(const Pencil& p,
                                                       const std::vector<std::size_t>& rows,
                                                       const std::vector<std::size_t>& cols) {
  std::vector<std::vector<MultiPoly>> m;
  for (auto i : rows) {
    std::vector<MultiPoly> row;
    for (auto j : cols) row.push_back(p.entry(i, j));
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

unsigned verify_certificate(const Pencil& p, const Certificate& cert) {
  const std::size_t s = cert.rows.size();
  if (s == 0 || cert.cols.size() != s)
    throw certificate_error("certificate: empty or non-square index sets");
  if (s > 8) throw certificate_error("certificate: size over the 8x8 budget");
  if (cert.exponent != s)
    throw certificate_error("certificate: exponent must equal the submatrix size");
  if (cert.scalar.is_zero())
    throw certificate_error("certificate: zero scalar in the working field");
  if (cert.lambda.is_zero()) throw certificate_error("certificate: zero linear form");
  for (auto i : cert.rows)
    if (i >= p.matrix_size()) throw certificate_error("certificate: row index out of range");
  for (auto j : cert.cols)
    if (j >= p.matrix_size()) throw certificate_error("certificate: column index out of range");
  if (!cert.generator_order_hash.empty() &&
      cert.generator_order_hash != p.generator_order_hash())
    throw certificate_error("certificate: generator order hash mismatch");

  MultiPoly det = det_poly(symbolic_submatrix(p, cert.rows, cert.cols));
  MultiPoly claimed =
      cert.lambda.to_poly(p.xnames).pow(cert.exponent).scaled(cert.scalar);
  if (det != claimed)
    throw certificate_error("certificate: determinant does not equal the claimed power");
  return static_cast<unsigned>(s);
}

std::optional<Certificate> make_certificate(const Pencil& p, std::vector<std::size_t> rows,
                                            std::vector<std::size_t> cols) {
  const auto s = static_cast<unsigned>(rows.size());
  MultiPoly det = det_poly(symbolic_submatrix(p, rows, cols));
  auto power = scaled_linear_power(det, s);
  if (!power) return std::nullopt;
  Certificate cert;
  cert.rows = std::move(rows);
  cert.cols = std::move(cols);
  cert.scalar = power->first;
  cert.lambda = power->second;
  cert.exponent = s;
  cert.generator_order_hash = p.generator_order_hash();
  return cert;
}

CertificateSearch search_certificate(const Pencil& p, unsigned s, bool principal_only,
                                     std::size_t budget) {
  if (s > 8) throw std::invalid_argument("search_certificate: size over the 8x8 budget");
  const std::size_t n = p.matrix_size();
  CertificateSearch result;
  if (s == 0 || s > n) return result;

  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  auto advance = [&](std::vector<std::size_t>& v) {
    std::size_t i = s;
    while (i-- > 0) {
      if (v[i] + (s - i) <= n) {
        ++v[i];
        if (v[i] + (s - i) > n) continue;
        for (std::size_t j = i + 1; j < s; ++j) v[j] = v[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  // Fix: lexicographic successor of an s-subset of {0..n-1}.
  auto next_subset = [&](std::vector<std::size_t>& v) {
    std::size_t i = s;
    while (i-- > 0) {
      if (v[i] < n - (s - i)) {
        ++v[i];
        for (std::size_t j = i + 1; j < s; ++j) v[j] = v[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  (void)advance;

  std::vector<std::size_t> rows = idx;
  do {
    if (principal_only) {
      if (result.examined++ >= budget) {
        result.status = SearchStatus::budget_exhausted;
        return result;
      }
      if (auto cert = make_certificate(p, rows, rows)) {
        result.status = SearchStatus::found;
        result.certificate = std::move(cert);
        return result;
      }
    } else {
      std::vector<std::size_t> cols = idx;
      for (std::size_t i = 0; i < s; ++i) cols[i] = i;
      do {
        if (result.examined++ >= budget) {
          result.status = SearchStatus::budget_exhausted;
          return result;
        }
        if (auto cert = make_certificate(p, rows, cols)) {
          result.status = SearchStatus::found;
          result.certificate = std::move(cert);
          return result;
        }
      } while (next_subset(cols));
    }
  } while (next_subset(rows));
  result.status = SearchStatus::exhausted;
  return result;
}

bool certify_upper(const Pencil& p, const std::vector<QuadForm>& witness, unsigned k) {
  for (const auto& w : witness)
    if (w.dim() != p.matrix_size())
      throw std::invalid_argument("certify_upper: ambient mismatch");
  auto base = rref(p.basis.flatten());
  SpanBuilder span(p.field());
  for (const auto& w : witness) {
    if (w.is_zero()) continue;
    if (!(w.field() == p.field())) throw std::invalid_argument("certify_upper: field mismatch");
    if (w.rank() > k) return false;
    auto flat = w.flatten();
    if (!in_row_span(base, flat)) return false;
    span.insert(flat);
  }
  return span.dim() == p.count();
}

// ---- finite-field enumeration ----

namespace {

struct ModPencil {
  std::int64_t q = 0;
  std::size_t n = 0;
  std::size_t t1 = 0;
  // Per generator: (i, j, value) with j >= i; diagonal entries already doubled.
  std::vector<std::vector<std::array<std::int64_t, 3>>> entries;
};

ModPencil make_mod_pencil(const Pencil& p, std::int64_t q) {
  if (!is_odd_prime(q)) throw std::invalid_argument("phi: modulus must be an odd prime");
  Field gf = Field::gf(q);
  GeneratorSet basis_q = p.basis.field == gf ? p.basis : p.basis.to_field(gf);
  if (!basis_q.independent)
    throw std::invalid_argument("phi: generators become dependent mod " + std::to_string(q));
  ModPencil mp;
  mp.q = q;
  mp.n = p.matrix_size();
  mp.t1 = p.count();
  for (const auto& g : basis_q.gens) {
    auto m = quad_to_sym(g);
    std::vector<std::array<std::int64_t, 3>> tri;
    for (std::size_t i = 0; i < mp.n; ++i)
      for (std::size_t j = i; j < mp.n; ++j) {
        std::int64_t v = m.at(i, j).residue();
        if (v != 0) tri.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), v});
      }
    mp.entries.push_back(std::move(tri));
  }
  return mp;
}

unsigned rank_mod(std::vector<std::int64_t>& a, std::size_t n, std::int64_t q,
                  unsigned stop_after) {
  unsigned rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = row; r < n; ++r) {
      if (mod_norm(a[r * n + col], q) != 0) {
        piv = r;
        break;
      }
    }
    if (piv == n) continue;
    if (piv != row)
      for (std::size_t c = col; c < n; ++c) std::swap(a[piv * n + c], a[row * n + c]);
    const std::int64_t inv = mod_inv(a[row * n + col], q);
    for (std::size_t r = row + 1; r < n; ++r) {
      const std::int64_t f = mod_norm(a[r * n + col] * inv, q);
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c)
        a[r * n + c] = mod_norm(a[r * n + c] - f * a[row * n + c], q);
    }
    ++rank;
    ++row;
    if (rank > stop_after) return rank;
  }
  return rank;
}

class ModSpan {
 public:
  ModSpan(std::size_t dim, std::int64_t q) : dim_(dim), q_(q) {}

  bool insert(const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> w = v;
    reduce(w);
    std::size_t pivot = dim_;
    for (std::size_t c = 0; c < dim_; ++c)
      if (w[c] != 0) {
        pivot = c;
        break;
      }
    if (pivot == dim_) return false;
    const std::int64_t inv = mod_inv(w[pivot], q_);
    for (auto& x : w) x = mod_norm(x * inv, q_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::int64_t f = rows_[r][pivot];
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim_; ++c)
        rows_[r][c] = mod_norm(rows_[r][c] - f * w[c], q_);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    auto at = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, pivot);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(w));
    return true;
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  void reduce(std::vector<std::int64_t>& w) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::int64_t f = mod_norm(w[pivots_[r]], q_);
      if (f == 0) continue;
      for (std::size_t c = 0; c < dim_; ++c)
        w[c] = mod_norm(w[c] - f * rows_[r][c], q_);
    }
  }

  std::size_t dim_;
  std::int64_t q_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

unsigned __int128 projective_count(std::int64_t q, std::size_t t1) {
  unsigned __int128 total = 0, power = 1;
  for (std::size_t i = 0; i < t1; ++i) {
    total += power;
    power *= static_cast<unsigned __int128>(q);
  }
  return total;  // 1 + q + ... + q^(t1-1)
}

}  // namespace

PhiSample phi_enumerate(const Pencil& p, unsigned k, std::int64_t q, std::size_t budget,
                        bool store_points) {
  ModPencil mp = make_mod_pencil(p, q);
  const std::size_t n = mp.n, t1 = mp.t1;
  const auto reps = projective_count(q, t1);
  if (reps > budget)
    throw budget_error("phi_enumerate: " + std::to_string(static_cast<double>(reps)) +
                       " representatives exceed the budget of " + std::to_string(budget));

  PhiSample sample;
  sample.q = q;
  sample.k = k;
  sample.points_stored = store_points;

  std::vector<std::int64_t> x(t1, 0);
  std::vector<std::int64_t> buf(n * n, 0);
  ModSpan span(t1, q);

  auto visit = [&](const std::vector<std::int64_t>& pt) {
    ++sample.enumerated;
    std::fill(buf.begin(), buf.end(), 0);
    for (std::size_t g = 0; g < t1; ++g) {
      const std::int64_t c = pt[g];
      if (c == 0) continue;
      for (const auto& e : mp.entries[g]) {
        const auto i = static_cast<std::size_t>(e[0]);
        const auto j = static_cast<std::size_t>(e[1]);
        buf[i * n + j] += c * e[2];
        if (i != j) buf[j * n + i] += c * e[2];
      }
    }
    if (rank_mod(buf, n, q, k) <= k) {
      ++sample.count;
      span.insert(pt);
      if (store_points) sample.points.push_back(pt);
    }
  };

  for (std::size_t lead = 0; lead < t1; ++lead) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    const std::size_t free_positions = t1 - lead - 1;
    while (true) {
      visit(x);
      // Odometer over positions lead+1..t1-1.
      std::size_t pos = 0;
      for (; pos < free_positions; ++pos) {
        auto& digit = x[t1 - 1 - pos];
        if (digit + 1 < q) {
          ++digit;
          break;
        }
        digit = 0;
      }
      if (pos == free_positions) break;
    }
  }

  sample.span_rows = span.rows();
  sample.span_dim = span.size();
  return sample;
}

unsigned bruteforce_rank_index(const Pencil& p, std::int64_t q, std::size_t budget) {
  const std::size_t t1 = p.count();
  for (unsigned s = 3; s <= p.matrix_size(); ++s) {
    PhiSample sample = phi_enumerate(p, s, q, budget, /*store_points=*/false);
    if (sample.span_dim == t1) return s;
  }
  throw std::logic_error("bruteforce_rank_index: filtration never spans");
}

std::optional<GeneratorSet> lift_witness(const PhiSample& sample, const Pencil& rational_pencil,
                                         unsigned k) {
  if (!sample.points_stored)
    throw std::invalid_argument("lift_witness: sample was enumerated without stored points");
  if (!rational_pencil.field().is_rational())
    throw std::invalid_argument("lift_witness: pencil must be over Q");
  const std::size_t t1 = rational_pencil.count();
  if (sample.span_dim != t1) return std::nullopt;

  const Field f = Field::rationals();
  const Field gf = Field::gf(sample.q);
  ModSpan selected(t1, sample.q);
  std::vector<QuadForm> lifted;
  Matrix combos;

  for (const auto& pt : sample.points) {
    // Tentative: does this point enlarge the mod-q span of the selection?
    ModSpan trial = selected;
    if (!trial.insert(pt)) continue;
    // Symmetric integer lift, re-verified over Q.
    QuadForm quad(f, rational_pencil.basis.vars);
    std::vector<FieldElement> combo;
    for (std::size_t g = 0; g < t1; ++g) {
      FieldElement c = FieldElement::from_int(gf, pt[g]).lift_symmetric();
      combo.push_back(c);
      if (!c.is_zero()) quad += rational_pencil.basis.gens[g].scaled(c);
    }
    if (quad.rank() > k) continue;  // the lift raised the rank; try other points
    selected = std::move(trial);
    lifted.push_back(std::move(quad));
    combos.push_back(std::move(combo));
    if (selected.size() == t1) break;
  }
  if (selected.size() != t1) return std::nullopt;
  if (rref(combos).rank != t1) return std::nullopt;  // spanning must survive the lift

  GeneratorSet out;
  out.field = f;
  out.vars = rational_pencil.basis.vars;
  out.gens = std::move(lifted);
  out.provenance = Provenance{
      "lifted-witness", "q=" + std::to_string(sample.q) + ",k=" + std::to_string(k)};
  out.independent = out.check_independent();
  return out;
}

std::vector<LinForm> linear_forms_on_phi(const PhiSample& sample, std::size_t dim) {
  const Field gf = Field::gf(sample.q);
  Matrix rows;
  for (const auto& r : sample.span_rows) {
    std::vector<FieldElement> row;
    for (auto v : r) row.push_back(FieldElement::from_int(gf, v));
    rows.push_back(std::move(row));
  }
  Matrix ns = nullspace_basis(rows, dim, gf);
  std::vector<LinForm> out;
  for (auto& v : ns) {
    LinForm l(gf, dim);
    l.coeffs = std::move(v);
    out.push_back(std::move(l).normalized());
  }
  return out;
}

// ---- known certificates and witnesses ----

namespace {

std::vector<std::size_t> positions_of(const GeneratorSet& g,
                                      const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& name : names) {
    auto it = std::find(g.vars.begin(), g.vars.end(), name);
    if (it == g.vars.end()) throw std::logic_error("coordinate " + name + " not present");
    out.push_back(static_cast<std::size_t>(it - g.vars.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Certificate> checked(const Pencil& p, std::vector<std::size_t> rows) {
  auto cert = make_certificate(p, rows, rows);
  if (cert) verify_certificate(p, *cert);
  return cert;
}

}  // namespace

std::optional<Certificate> known_certificate(const VarietySpec& vs, const Pencil& p) {
  using F = VarietySpec::Family;
  const GeneratorSet& g = p.basis;
  switch (vs.family) {
    case F::scroll: {
      if (vs.nums.size() < 2) return std::nullopt;  // curves have no 4x4 witness
      // Rows: first two coordinates of the first two blocks.
      const std::size_t b2 = vs.nums[0] + 1;
      return checked(p, {0, 1, b2, b2 + 1});
    }
    case F::segre: {
      // The embedded P1 x P1 in the first two factors: tuples 00.., 01..,
      // 10.., 11.. with zeros elsewhere.
      auto pos = positions_of(g, {g.vars[0]});
      (void)pos;
      std::vector<std::string> names;
      std::string zeros;
      for (std::size_t i = 2; i < vs.nums.size(); ++i) zeros += "0";
      for (const char* ab : {"00", "01", "10", "11"})
        names.push_back("z" + std::string(ab) + zeros);
      return checked(p, positions_of(g, names));
    }
    case F::plucker:
      return checked(p, positions_of(g, {"p01", "p02", "p03", "p12", "p13", "p23"}));
    case F::delpezzo: {
      switch (vs.nums[0]) {
        case 1:
        case 2:
        case 3:
          return checked(p, positions_of(g, {"z5", "z8", "z2", "z4"}));
        case 4:
          return checked(p, positions_of(g, {"z1", "z2", "z3", "z4"}));
        default:
          return std::nullopt;
      }
    }
    case F::nonnormal: {
      const unsigned e = vs.nn_e;
      (void)e;
      if (vs.nn_kind == NonNormalKind::S1) return checked(p, {0, 1, 2, 3, 4});
      if (vs.nn_kind == NonNormalKind::S2) return checked(p, {0, 1, 2, 4});
      return checked(p, {0, 1, 2, 3, 4, 5});
    }
    case F::veroproj: {
      if (vs.nums[0] == 3 && vs.nums[1] == 2)
        return checked(p, positions_of(g, {"z5", "z6", "z2", "z8"}));
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::optional<UpperWitness> known_upper_witness(const VarietySpec& vs, const GeneratorSet& g) {
  using F = VarietySpec::Family;
  auto basis_witness = [&](unsigned k) {
    return UpperWitness{g, k, "generator-ranks"};
  };
  switch (vs.family) {
    case F::scroll:
      if (vs.nums.size() == 1) {
        UpperWitness w{veronese_rank3_witness(1, vs.nums[0]), 3, "product-construction"};
        w.witness.vars = g.vars;  // same coordinate order, scroll names
        for (auto& q : w.witness.gens) {
          auto flat = q.flatten();
          q = QuadForm::from_flat(g.field, g.vars, flat);
        }
        return w;
      }
      return basis_witness(4);
    case F::veronese: {
      const unsigned n = vs.nums[0], d = vs.nums[1];
      if (n == 3 && d == 2) return UpperWitness{gamma_v2p3(), 3, "product-construction"};
      if (n == 2 && d == 3) return UpperWitness{gamma_v3p2(), 3, "product-construction"};
      return UpperWitness{veronese_rank3_witness(n, d), 3, "product-construction"};
    }
    case F::segre:
      return basis_witness(4);
    case F::plucker:
      return basis_witness(6);
    case F::delpezzo:
      switch (vs.nums[0]) {
        case 0:
          return UpperWitness{gamma_v3p2(), 3, "product-construction"};
        case 5:
          return UpperWitness{s5_witness(), 3, "product-construction"};
        default:
          return basis_witness(4);
      }
    case F::veroproj:
      if (vs.nums[0] == 3 && vs.nums[1] == 2) return basis_witness(4);
      return std::nullopt;
    case F::nonnormal:
      if (vs.nn_kind == NonNormalKind::S2) return basis_witness(4);
      if (vs.nn_kind == NonNormalKind::T) return basis_witness(6);
      return std::nullopt;  // S1 generators include rank-6 members
    case F::grassec:
      return std::nullopt;  // upper bounds come from lifted witnesses
  }
  return std::nullopt;
}

// ---- sections ----

std::optional<unsigned> random_section_rank_index(const GeneratorSet& g, std::int64_t q,
                                                  std::uint64_t seed, std::size_t budget,
                                                  std::size_t expected_dim) {
  const Field gf = Field::gf(q);
  GeneratorSet gq = g.field == gf ? g : g.to_field(gf);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(0, q - 1);
  for (int attempt = 0; attempt < 16; ++attempt) {
    LinForm ell(gf, gq.vars.size());
    bool nonzero = false;
    for (auto& c : ell.coeffs) {
      c = FieldElement::from_int(gf, dist(rng));
      nonzero = nonzero || !c.is_zero();
    }
    if (!nonzero) continue;
    std::size_t pivot = 0;
    for (std::size_t i = gq.vars.size(); i-- > 0;)
      if (!ell.coeffs[i].is_zero()) {
        pivot = i;
        break;
      }
    GeneratorSet section = restrict_hyperplane(gq, ell, pivot);
    if (section.size() != expected_dim) continue;
    Pencil sp = assemble_pencil(section);
    return bruteforce_rank_index(sp, q, budget);
  }
  return std::nullopt;
}

SectionReport section_inequality_check(const std::string& spec, unsigned trials, std::int64_t q,
                                       const RunConfig& cfg) {
  GeneratorSet g = parse_variety(spec);
  if (!g.provenance.acm)
    throw std::invalid_argument("section_inequality_check: variety not marked ACM");
  const Field gf = Field::gf(q);
  GeneratorSet gq = g.to_field(gf);
  Pencil pq = assemble_pencil(gq);

  SectionReport report;
  report.spec = spec;
  report.q = q;
  report.seed = cfg.seed;
  report.base_value = bruteforce_rank_index(pq, q, cfg.budget);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::int64_t> dist(0, q - 1);
  report.all_ok = true;
  while (report.trials.size() < trials) {
    LinForm ell(gf, gq.vars.size());
    bool nonzero = false;
    for (auto& c : ell.coeffs) {
      c = FieldElement::from_int(gf, dist(rng));
      nonzero = nonzero || !c.is_zero();
    }
    if (!nonzero) continue;
    std::size_t pivot = 0;
    for (std::size_t i = gq.vars.size(); i-- > 0;)
      if (!ell.coeffs[i].is_zero()) {
        pivot = i;
        break;
      }
    GeneratorSet section = restrict_hyperplane(gq, ell, pivot);
    SectionTrial trial;
    trial.hyperplane = ell.str(gq.vars);
    trial.pivot = gq.vars[pivot];
    trial.section_dim = section.size();
    if (section.size() != gq.size()) continue;  // degenerate cut, resample
    Pencil sp = assemble_pencil(section);
    trial.section_value = bruteforce_rank_index(sp, q, cfg.budget);
    trial.inequality_ok = report.base_value <= trial.section_value + 2;
    report.all_ok = report.all_ok && trial.inequality_ok;
    report.trials.push_back(std::move(trial));
  }
  return report;
}

// ---- rank_index orchestration ----

namespace {

void add_lower(RankIndexResult& r, Evidence e) {
  r.lower = std::max(r.lower, e.bound);
  r.lower_evidence.push_back(std::move(e));
}

void add_upper(RankIndexResult& r, Evidence e) {
  if (!r.upper || e.bound < *r.upper) r.upper = e.bound;
  r.upper_evidence.push_back(std::move(e));
}

bool enumeration_fits(const Pencil& p, std::int64_t q, std::size_t budget) {
  return projective_count(q, p.count()) <= budget;
}

std::size_t section_dim_guess(const GeneratorSet& g) { return g.size(); }

}  // namespace

RankIndexResult rank_index(const std::string& spec, Strategy strategy, const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  VarietySpec vs = VarietySpec::parse(spec);
  GeneratorSet g = build_variety(vs);
  Pencil p = assemble_pencil(g);

  RankIndexResult r;
  r.spec = vs.str();
  add_lower(r, Evidence{"baseline", "irreducible nondegenerate variety", "all", 3});

  const bool use_known = strategy != Strategy::bruteforce;
  const bool use_brute = strategy != Strategy::certificates;

  if (use_known) {
    if (auto cert = known_certificate(vs, p)) {
      unsigned bound = verify_certificate(p, *cert);
      std::string field_note = "Q and every GF(p) with p not dividing " + cert->scalar.str();
      add_lower(r, Evidence{"certificate",
                            "det of a " + std::to_string(bound) + "x" + std::to_string(bound) +
                                " minor equals " + cert->scalar.str() + "*(" +
                                cert->lambda.str(p.xnames) + ")^" + std::to_string(bound),
                            field_note, bound});
      r.certificate = cert;
    }
    if (auto w = known_upper_witness(vs, g)) {
      if (certify_upper(p, w->witness.gens, w->k)) {
        add_upper(r, Evidence{"witness", w->kind + ", " + std::to_string(w->witness.size()) +
                                             " quadrics of rank <= " + std::to_string(w->k),
                              "Q", w->k});
      } else {
        r.notes += "known witness failed verification at k=" + std::to_string(w->k) + "; ";
      }
    }
    // Non-normal surface S1: the upper bound travels through a hyperplane
    // section (value + 2), and through a lifted witness when enumeration fits.
    if (vs.family == VarietySpec::Family::nonnormal && vs.nn_kind == NonNormalKind::S1) {
      std::vector<std::int64_t> section_primes = cfg.primes;
      section_primes.push_back(3);
      for (auto q : section_primes) {
        const auto section_reps = projective_count(q, section_dim_guess(g));
        if (section_reps > cfg.budget) continue;
        if (auto sec = random_section_rank_index(g, q, cfg.seed, cfg.budget,
                                                 section_dim_guess(g))) {
          add_upper(r, Evidence{"section-inequality",
                                "general hyperplane section has rank index " +
                                    std::to_string(*sec) + ", bound " + std::to_string(*sec) +
                                    "+2",
                                "GF(" + std::to_string(q) + ")", *sec + 2});
          break;
        }
      }
    }
  }

  if (use_brute) {
    for (auto q : cfg.primes) {
      if (!enumeration_fits(p, q, cfg.budget)) {
        if (strategy == Strategy::bruteforce)
          throw budget_error("rank_index: enumeration over GF(" + std::to_string(q) +
                             ") exceeds the budget for " + spec);
        continue;
      }
      unsigned v = bruteforce_rank_index(p, q, cfg.budget);
      r.gf_exact[q] = v;
      add_lower(r, Evidence{"phi-nonspanning",
                            "rank filtration spans only from " + std::to_string(v) + " on",
                            "GF(" + std::to_string(q) + ")", 3});
      // Lift the spanning sample to a rational witness when the upper bound
      // is still open or can be matched.
      if (use_known && (!r.upper || v < *r.upper) && p.field().is_rational()) {
        PhiSample sample = phi_enumerate(p, v, q, cfg.budget, /*store_points=*/true);
        if (auto w = lift_witness(sample, p, v)) {
          add_upper(r, Evidence{"lifted-witness",
                                std::to_string(w->size()) + " quadrics of rank <= " +
                                    std::to_string(v) + " lifted from GF(" + std::to_string(q) +
                                    ")",
                                "Q", v});
        }
      }
    }
  }

  // Consolidate.
  if (r.upper && r.lower == *r.upper) {
    r.value = r.lower;
  } else if (!r.gf_exact.empty()) {
    unsigned v = r.gf_exact.begin()->second;
    bool agree = true;
    for (const auto& [q, vq] : r.gf_exact) agree = agree && vq == v;
    if (agree && v >= r.lower && (!r.upper || v <= *r.upper)) {
      r.value = v;
      r.notes += "value certified over the enumerated prime fields; ";
      if (r.upper && *r.upper == v)
        r.notes += "upper bound certified over Q; lower bound finite-field evidence; ";
    }
  }

  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
             .count();
  return r;
}

}  // namespace qri
