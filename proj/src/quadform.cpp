#include "qri/quadform.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>

namespace qri {

QuadForm::QuadForm(Field f, std::vector<std::string> vars)
    : field_(f), vars_(std::move(vars)) {}

QuadForm QuadForm::from_poly(const MultiPoly& p) {
  if (!p.is_zero() && (!p.is_homogeneous(2) || p.degree() != 2))
    throw std::invalid_argument("QuadForm::from_poly: not homogeneous of degree 2");
  QuadForm q(p.field(), p.vars());
  for (const auto& [m, c] : p.terms()) {
    std::size_t i = m.size(), j = m.size();
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 2) {
        i = j = k;
      } else if (m[k] == 1) {
        if (i == m.size())
          i = k;
        else
          j = k;
      }
    }
    q.add(i, j, c);
  }
  return q;
}

FieldElement QuadForm::coeff(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = coeffs_.find({i, j});
  return it == coeffs_.end() ? FieldElement::zero(field_) : it->second;
}

void QuadForm::add(std::size_t i, std::size_t j, const FieldElement& c) {
  if (c.is_zero()) return;
  if (i > j) std::swap(i, j);
  if (j >= vars_.size()) throw std::out_of_range("QuadForm::add: index");
  auto [it, inserted] = coeffs_.emplace(std::make_pair(i, j), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

QuadForm QuadForm::operator-() const {
  QuadForm r(field_, vars_);
  for (const auto& [ij, c] : coeffs_) r.coeffs_.emplace(ij, -c);
  return r;
}

QuadForm& QuadForm::operator+=(const QuadForm& o) {
  if (!(field_ == o.field_) || vars_ != o.vars_)
    throw std::invalid_argument("QuadForm: mismatched operands");
  for (const auto& [ij, c] : o.coeffs_) add(ij.first, ij.second, c);
  return *this;
}

QuadForm& QuadForm::operator-=(const QuadForm& o) {
  if (!(field_ == o.field_) || vars_ != o.vars_)
    throw std::invalid_argument("QuadForm: mismatched operands");
  for (const auto& [ij, c] : o.coeffs_) add(ij.first, ij.second, -c);
  return *this;
}

QuadForm QuadForm::scaled(const FieldElement& c) const {
  QuadForm r(field_, vars_);
  if (c.is_zero()) return r;
  for (const auto& [ij, v] : coeffs_) r.coeffs_.emplace(ij, v * c);
  return r;
}

bool QuadForm::operator==(const QuadForm& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && coeffs_ == o.coeffs_;
}

MultiPoly QuadForm::to_poly() const {
  MultiPoly p(field_, vars_);
  for (const auto& [ij, c] : coeffs_) {
    Monomial m(vars_.size(), 0);
    m[ij.first] += 1;
    m[ij.second] += 1;
    p.add_term(m, c);
  }
  return p;
}

std::vector<FieldElement> QuadForm::flatten() const {
  const std::size_t n = vars_.size();
  std::vector<FieldElement> flat(n * (n + 1) / 2, FieldElement::zero(field_));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) flat[idx++] = coeff(i, j);
  return flat;
}

QuadForm QuadForm::from_flat(Field f, std::vector<std::string> vars,
                             const std::vector<FieldElement>& flat) {
  QuadForm q(f, std::move(vars));
  const std::size_t n = q.vars_.size();
  if (flat.size() != n * (n + 1) / 2)
    throw std::invalid_argument("QuadForm::from_flat: length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) q.add(i, j, flat[idx++]);
  return q;
}

QuadForm QuadForm::to_field(const Field& f) const {
  if (f == field_) return *this;
  QuadForm r(f, vars_);
  for (const auto& [ij, c] : coeffs_) {
    FieldElement v = field_.is_rational() ? c.reduce_to(f) : c.lift_symmetric();
    r.add(ij.first, ij.second, v);
  }
  return r;
}

QuadForm QuadForm::normalized() const {
  if (coeffs_.empty()) return *this;
  const FieldElement& lead = coeffs_.begin()->second;
  if (!field_.is_rational()) return scaled(lead.inverse());
  BigInt num_gcd = 0, den_lcm = 1;
  for (const auto& [ij, c] : coeffs_) {
    num_gcd = boost::multiprecision::gcd(
        num_gcd, boost::multiprecision::abs(boost::multiprecision::numerator(c.rat())));
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c.rat()));
  }
  BigRat scale(den_lcm, num_gcd);
  if (lead.rat() < 0) scale = -scale;
  return scaled(FieldElement::from_rat(field_, scale));
}

unsigned QuadForm::rank() const { return sym_rank(quad_to_sym(*this)); }

SymMatrix::SymMatrix(Field f, std::size_t n)
    : field_(f), n_(n), upper_(n * (n + 1) / 2, FieldElement::zero(f)) {}

std::size_t SymMatrix::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= n_) throw std::out_of_range("SymMatrix: index");
  return i * n_ - i * (i + 1) / 2 + j;
}

const FieldElement& SymMatrix::at(std::size_t i, std::size_t j) const {
  return upper_[index(i, j)];
}

void SymMatrix::set(std::size_t i, std::size_t j, const FieldElement& v) {
  upper_[index(i, j)] = v;
}

bool SymMatrix::operator==(const SymMatrix& o) const {
  return field_ == o.field_ && n_ == o.n_ && upper_ == o.upper_;
}

SymMatrix quad_to_sym(const QuadForm& q) {
  SymMatrix m(q.field(), q.dim());
  const FieldElement two = FieldElement::from_int(q.field(), 2);
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = i; j < q.dim(); ++j) {
      FieldElement c = q.coeff(i, j);
      if (c.is_zero()) continue;
      m.set(i, j, i == j ? c * two : c);
    }
  }
  return m;
}

unsigned sym_rank(const SymMatrix& m) {
  const std::size_t n = m.size();
  Matrix rows(n, std::vector<FieldElement>(n, FieldElement::zero(m.field())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = m.at(i, j);
  return static_cast<unsigned>(rref(rows).rank);
}

}  // namespace qri
