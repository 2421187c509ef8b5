#include "qri/linalg.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace qri {

RrefResult rref(const Matrix& input) {
  RrefResult out;
  if (input.empty()) return out;
  const std::size_t ncols = input[0].size();
  for (const auto& row : input)
    if (row.size() != ncols) throw std::invalid_argument("rref: ragged rows");

  Matrix work = input;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ncols && pivot_row < work.size(); ++col) {
    std::size_t sel = work.size();
    for (std::size_t r = pivot_row; r < work.size(); ++r) {
      if (!work[r][col].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == work.size()) continue;
    std::swap(work[pivot_row], work[sel]);
    FieldElement inv = work[pivot_row][col].inverse();
    for (auto& x : work[pivot_row]) x *= inv;
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r == pivot_row || work[r][col].is_zero()) continue;
      FieldElement f = work[r][col];
      for (std::size_t c2 = 0; c2 < ncols; ++c2) work[r][c2] -= f * work[pivot_row][c2];
    }
    out.pivots.push_back(col);
    ++pivot_row;
  }
  out.rank = pivot_row;
  out.rows.assign(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(pivot_row));
  return out;
}

Matrix nullspace_basis(const Matrix& a, std::size_t ncols, const Field& field) {
  RrefResult r = a.empty() ? RrefResult{} : rref(a);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<FieldElement> v(ncols, FieldElement::zero(field));
    v[f] = FieldElement::one(field);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FieldElement> reduce_against(const RrefResult& r, std::vector<FieldElement> v) {
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    const std::size_t p = r.pivots[i];
    if (v[p].is_zero()) continue;
    FieldElement f = v[p];
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * r.rows[i][c];
  }
  return v;
}

bool in_row_span(const RrefResult& r, const std::vector<FieldElement>& v) {
  auto residue = reduce_against(r, v);
  return std::all_of(residue.begin(), residue.end(),
                     [](const FieldElement& x) { return x.is_zero(); });
}

bool SpanBuilder::insert(std::vector<FieldElement> v) {
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (v[pivots_[i]].is_zero()) continue;
    FieldElement f = v[pivots_[i]];
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * rows_[i][c];
  }
  std::size_t pivot = v.size();
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!v[c].is_zero()) {
      pivot = c;
      break;
    }
  }
  if (pivot == v.size()) return false;
  FieldElement inv = v[pivot].inverse();
  for (auto& x : v) x *= inv;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i][pivot].is_zero()) continue;
    FieldElement f = rows_[i][pivot];
    for (std::size_t c = 0; c < v.size(); ++c) rows_[i][c] -= f * v[c];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  auto idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

bool SpanBuilder::contains(const std::vector<FieldElement>& v) const {
  std::vector<FieldElement> w = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (w[pivots_[i]].is_zero()) continue;
    FieldElement f = w[pivots_[i]];
    for (std::size_t c = 0; c < w.size(); ++c) w[c] -= f * rows_[i][c];
  }
  return std::all_of(w.begin(), w.end(), [](const FieldElement& x) { return x.is_zero(); });
}

MultiPoly det_poly(const std::vector<std::vector<MultiPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("det_poly: empty matrix");
  if (n > 8) throw std::invalid_argument("det_poly: size over the 8x8 budget");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det_poly: not square");

  const Field field = m[0][0].field();
  const auto& vars = m[0][0].vars();
  std::unordered_map<std::uint32_t, MultiPoly> memo;

  // det over column subset `mask`, using rows [n - popcount(mask), n).
  auto rec = [&](auto&& self, std::uint32_t mask) -> MultiPoly {
    if (mask == 0) return MultiPoly::constant(field, vars, FieldElement::one(field));
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    MultiPoly acc(field, vars);
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      const std::uint32_t bit = 1u << col;
      if (!(mask & bit)) continue;
      if (!m[row][col].is_zero()) {
        MultiPoly term = m[row][col] * self(self, mask & ~bit);
        acc += sign > 0 ? term : -term;
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, (n >= 32 ? 0xffffffffu : (1u << n) - 1u));
}

namespace {

bool exponents_divisible(const MultiPoly& p, std::uint32_t q) {
  for (const auto& [m, c] : p.terms())
    for (auto e : m)
      if (e % q != 0) return false;
  return true;
}

MultiPoly frobenius_root(const MultiPoly& p, std::uint32_t q) {
  MultiPoly r(p.field(), p.vars());
  for (const auto& [m, c] : p.terms()) {
    Monomial d = m;
    for (auto& e : d) e /= q;
    r.add_term(d, c);  // prime field: c^q == c
  }
  return r;
}

}  // namespace

std::optional<std::pair<FieldElement, LinForm>> scaled_linear_power(const MultiPoly& p,
                                                                    unsigned s) {
  if (s < 1 || p.is_zero() || !p.is_homogeneous(s) || p.degree() != s) return std::nullopt;

  const Field field = p.field();
  const auto q = static_cast<std::uint32_t>(field.characteristic());

  // Unwind Frobenius twists: over GF(q), c*l^(qe) = (c*l^e)^q.
  MultiPoly work = p;
  unsigned e = s;
  while (q != 0 && e % q == 0) {
    if (!exponents_divisible(work, q)) return std::nullopt;
    work = frobenius_root(work, q);
    e /= q;
  }

  auto sup = work.support();
  if (sup.empty()) return std::nullopt;
  const std::size_t lead = sup.front();

  Monomial pure(work.nvars(), 0);
  pure[lead] = static_cast<std::uint32_t>(e);
  FieldElement c = work.coeff(pure);
  if (c.is_zero()) return std::nullopt;

  LinForm lambda(field, work.nvars());
  lambda.coeffs[lead] = FieldElement::one(field);
  if (e > 1) {
    const FieldElement denom = c * FieldElement::from_int(field, e);
    for (std::size_t j : sup) {
      if (j == lead) continue;
      Monomial m(work.nvars(), 0);
      m[lead] = static_cast<std::uint32_t>(e - 1);
      m[j] = 1;
      lambda.coeffs[j] = work.coeff(m) / denom;
    }
  } else {
    FieldElement inv = c.inverse();
    for (std::size_t j : sup) {
      Monomial m(work.nvars(), 0);
      m[j] = 1;
      lambda.coeffs[j] = work.coeff(m) * inv;
    }
  }

  // Exact verification on the original polynomial.
  if (lambda.to_poly(p.vars()).pow(s).scaled(c) != p) return std::nullopt;
  return std::make_pair(c, lambda);
}

}  // namespace qri
