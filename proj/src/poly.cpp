#include "qri/poly.hpp"

#include <algorithm>
#include <sstream>

namespace qri {

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  unsigned da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da < db;
  // Same degree: compare from the last variable backwards; the monomial with
  // the larger exponent at the last difference is the smaller one.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

namespace {

void require_compatible(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument("MultiPoly: mixed fields");
  if (a.vars() != b.vars())
    throw std::invalid_argument("MultiPoly: mismatched variable sets");
}

}  // namespace

MultiPoly::MultiPoly(Field f, std::vector<std::string> vars)
    : field_(f), vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(Field f, std::vector<std::string> vars, const FieldElement& c) {
  MultiPoly p(f, std::move(vars));
  p.add_term(Monomial(p.nvars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(Field f, std::vector<std::string> vars, std::size_t index) {
  MultiPoly p(f, std::move(vars));
  if (index >= p.nvars()) throw std::out_of_range("MultiPoly::variable: index");
  Monomial m(p.nvars(), 0);
  m[index] = 1;
  p.add_term(m, FieldElement::one(f));
  return p;
}

MultiPoly MultiPoly::from_monomial(Field f, std::vector<std::string> vars, Monomial m,
                                   const FieldElement& c) {
  MultiPoly p(f, std::move(vars));
  if (m.size() != p.nvars()) throw std::invalid_argument("MultiPoly::from_monomial: arity");
  p.add_term(std::move(m), c);
  return p;
}

unsigned MultiPoly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

bool MultiPoly::is_homogeneous(unsigned d) const {
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) != d) return false;
  return true;
}

FieldElement MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const FieldElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(field_, vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  require_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  require_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_compatible(a, b);
  MultiPoly r(a.field(), a.vars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(monomial_mul(ma, mb), ca * cb);
  return r;
}

MultiPoly MultiPoly::scaled(const FieldElement& c) const {
  MultiPoly r(field_, vars_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = constant(field_, vars_, FieldElement::one(field_));
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(field_, vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * FieldElement::from_int(field_, m[var]));
  }
  return r;
}

MultiPoly MultiPoly::substituted(std::size_t var, const MultiPoly& value) const {
  require_compatible(*this, value);
  MultiPoly r(field_, vars_);
  std::vector<MultiPoly> powers{constant(field_, vars_, FieldElement::one(field_))};
  for (const auto& [m, c] : terms_) {
    while (powers.size() <= m[var]) powers.push_back(powers.back() * value);
    Monomial rest = m;
    rest[var] = 0;
    r += powers[m[var]].scaled(c) * from_monomial(field_, vars_, rest, FieldElement::one(field_));
  }
  return r;
}

FieldElement MultiPoly::eval(std::span<const FieldElement> point) const {
  if (point.size() != nvars()) throw std::invalid_argument("MultiPoly::eval: arity");
  FieldElement acc = FieldElement::zero(field_);
  for (const auto& [m, c] : terms_) {
    FieldElement t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t *= point[i].pow(m[i]);
    acc += t;
  }
  return acc;
}

std::vector<std::size_t> MultiPoly::support() const {
  std::vector<bool> seen(nvars(), false);
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) seen[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

bool MultiPoly::uses_var(std::size_t var) const {
  for (const auto& [m, c] : terms_)
    if (m[var] > 0) return true;
  return false;
}

MultiPoly MultiPoly::dropped_var(std::size_t var) const {
  if (uses_var(var)) throw std::logic_error("MultiPoly::dropped_var: variable occurs");
  std::vector<std::string> vars = vars_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(var));
  MultiPoly r(field_, std::move(vars));
  for (const auto& [m, c] : terms_) {
    Monomial d = m;
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(var));
    r.terms_.emplace(std::move(d), c);
  }
  return r;
}

MultiPoly MultiPoly::to_field(const Field& f) const {
  if (f == field_) return *this;
  MultiPoly r(f, vars_);
  for (const auto& [m, c] : terms_) {
    FieldElement v = field_.is_rational() ? c.reduce_to(f) : c.lift_symmetric();
    r.add_term(m, v);
  }
  return r;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool negative = cs.front() == '-';
    std::string mag = negative ? cs.substr(1) : cs;
    if (first) {
      if (negative) out << '-';
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (m[i] > 1) mono += '^' + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out << mag;
    } else if (mag == "1") {
      out << mono;
    } else {
      out << mag << '*' << mono;
    }
  }
  return out.str();
}

LinForm::LinForm(Field f, std::size_t n) : field(f), coeffs(n, FieldElement::zero(f)) {}

bool LinForm::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

LinForm LinForm::normalized() const {
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    LinForm r = *this;
    FieldElement inv = c.inverse();
    for (auto& x : r.coeffs) x *= inv;
    return r;
  }
  return *this;
}

MultiPoly LinForm::to_poly(const std::vector<std::string>& vars) const {
  if (vars.size() != coeffs.size()) throw std::invalid_argument("LinForm::to_poly: arity");
  MultiPoly p(field, vars);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Monomial m(coeffs.size(), 0);
    m[i] = 1;
    p.add_term(m, coeffs[i]);
  }
  return p;
}

bool LinForm::operator==(const LinForm& o) const {
  return field == o.field && coeffs == o.coeffs;
}

std::string LinForm::str(const std::vector<std::string>& vars) const {
  return to_poly(vars).str();
}

}  // namespace qri
