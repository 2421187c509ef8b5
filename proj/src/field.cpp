#include "qri/field.hpp"

#include <charconv>

namespace qri {

bool is_odd_prime(std::int64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

Field Field::gf(std::int64_t p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("Field::gf: modulus must be an odd prime, got " +
                                std::to_string(p));
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::name() const {
  return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

std::optional<Field> Field::parse(std::string_view s) {
  if (s == "Q" || s == "q") return rationals();
  std::string_view num = s;
  if (s.size() > 4 && s.substr(0, 3) == "GF(" && s.back() == ')')
    num = s.substr(3, s.size() - 4);
  else if (s.size() > 2 && (s.substr(0, 2) == "GF" || s.substr(0, 2) == "gf"))
    num = s.substr(2);
  std::int64_t p = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
  if (ec != std::errc{} || ptr != num.data() + num.size() || !is_odd_prime(p))
    return std::nullopt;
  return gf(p);
}

namespace {

std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod_norm(a, p);
  if (new_r == 0) throw std::domain_error("FieldElement: division by zero in GF(p)");
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_norm(t, p);
}

void require_same(const Field& a, const Field& b) {
  if (!(a == b))
    throw std::invalid_argument("FieldElement: mixed fields " + a.name() + " and " + b.name());
}

}  // namespace

FieldElement FieldElement::from_int(const Field& f, long long v) {
  FieldElement e;
  e.field_ = f;
  if (f.is_rational())
    e.rat_ = BigRat(v);
  else
    e.res_ = mod_norm(v, f.characteristic());
  return e;
}

FieldElement FieldElement::from_rat(const Field& f, const BigRat& v) {
  FieldElement e;
  e.field_ = Field::rationals();
  e.rat_ = v;
  if (f.is_rational()) return e;
  return e.reduce_to(f);
}

FieldElement FieldElement::parse(const Field& f, std::string_view s) {
  auto slash = s.find('/');
  BigInt num(std::string(s.substr(0, slash)));
  BigInt den = 1;
  if (slash != std::string_view::npos) den = BigInt(std::string(s.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("FieldElement::parse: zero denominator");
  return from_rat(f, BigRat(num, den));
}

bool FieldElement::is_zero() const {
  return field_.is_rational() ? rat_.is_zero() : res_ == 0;
}

bool FieldElement::is_one() const {
  return field_.is_rational() ? rat_ == 1 : res_ == 1;
}

FieldElement FieldElement::operator-() const {
  FieldElement e = *this;
  if (field_.is_rational())
    e.rat_ = -rat_;
  else
    e.res_ = mod_norm(-res_, field_.characteristic());
  return e;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same(field_, o.field_);
  if (field_.is_rational())
    rat_ += o.rat_;
  else
    res_ = mod_norm(res_ + o.res_, field_.characteristic());
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same(field_, o.field_);
  if (field_.is_rational())
    rat_ -= o.rat_;
  else
    res_ = mod_norm(res_ - o.res_, field_.characteristic());
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same(field_, o.field_);
  if (field_.is_rational())
    rat_ *= o.rat_;
  else
    res_ = mod_norm(res_ * o.res_, field_.characteristic());
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same(field_, o.field_);
  if (field_.is_rational()) {
    if (o.rat_.is_zero()) throw std::domain_error("FieldElement: division by zero");
    rat_ /= o.rat_;
  } else {
    res_ = mod_norm(res_ * mod_inv(o.res_, field_.characteristic()), field_.characteristic());
  }
  return *this;
}

FieldElement FieldElement::inverse() const {
  return one(field_) / *this;
}

FieldElement FieldElement::pow(unsigned e) const {
  FieldElement acc = one(field_);
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1u;
  }
  return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.is_rational() ? rat_ == o.rat_ : res_ == o.res_;
}

const BigRat& FieldElement::rat() const {
  if (!field_.is_rational()) throw std::logic_error("FieldElement::rat on modular element");
  return rat_;
}

std::int64_t FieldElement::residue() const {
  if (field_.is_rational()) throw std::logic_error("FieldElement::residue on rational element");
  return res_;
}

FieldElement FieldElement::reduce_to(const Field& gf) const {
  if (gf.is_rational()) {
    if (field_.is_rational()) return *this;
    throw std::invalid_argument("FieldElement::reduce_to: target must be modular");
  }
  if (!field_.is_rational()) {
    if (field_ == gf) return *this;
    throw std::invalid_argument("FieldElement::reduce_to: cannot change modulus");
  }
  const std::int64_t p = gf.characteristic();
  BigInt num = boost::multiprecision::numerator(rat_);
  BigInt den = boost::multiprecision::denominator(rat_);
  std::int64_t n = static_cast<std::int64_t>(num % p);
  std::int64_t d = static_cast<std::int64_t>(den % p);
  if (mod_norm(d, p) == 0)
    throw std::domain_error("FieldElement::reduce_to: denominator divisible by " +
                            std::to_string(p));
  FieldElement e;
  e.field_ = gf;
  e.res_ = mod_norm(mod_norm(n, p) * mod_inv(d, p), p);
  return e;
}

FieldElement FieldElement::lift_symmetric() const {
  if (field_.is_rational()) return *this;
  const std::int64_t p = field_.characteristic();
  std::int64_t v = res_ > (p - 1) / 2 ? res_ - p : res_;
  return from_int(Field::rationals(), v);
}

std::string FieldElement::str() const {
  if (field_.is_rational()) return rat_.str();
  return std::to_string(res_);
}

}  // namespace qri
