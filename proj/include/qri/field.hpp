#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qri {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

bool is_odd_prime(std::int64_t p);

/// Coefficient domain: the rationals or a prime field GF(p), p an odd prime.
/// Characteristic 2 is rejected at construction; the symmetric-matrix rank
/// convention used throughout (diagonal entries 2*a_ii) degenerates there.
class Field {
 public:
  Field() = default;  // rationals

  static Field rationals() { return Field{}; }
  static Field gf(std::int64_t p);

  std::int64_t characteristic() const { return p_; }  // 0 for Q
  bool is_rational() const { return p_ == 0; }
  bool operator==(const Field&) const = default;

  std::string name() const;  // "Q" or "GF(p)"
  static std::optional<Field> parse(std::string_view s);

 private:
  std::int64_t p_ = 0;
};

/// An exact scalar in a fixed field. Binary operations require both operands
/// to come from the same field.
class FieldElement {
 public:
  FieldElement() = default;  // 0 in Q

  static FieldElement zero(const Field& f) { return from_int(f, 0); }
  static FieldElement one(const Field& f) { return from_int(f, 1); }
  static FieldElement from_int(const Field& f, long long v);
  static FieldElement from_rat(const Field& f, const BigRat& v);
  /// Parses "a" or "a/b" with integer a, b.
  static FieldElement parse(const Field& f, std::string_view s);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  FieldElement inverse() const;
  FieldElement pow(unsigned e) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  /// Rational value; only valid over Q.
  const BigRat& rat() const;
  /// Residue in [0, p); only valid over GF(p).
  std::int64_t residue() const;

  /// Q -> GF(p) reduction. Throws if the denominator vanishes mod p.
  FieldElement reduce_to(const Field& gf) const;
  /// GF(p) -> Q lift to the symmetric representative in [-(p-1)/2, (p-1)/2].
  FieldElement lift_symmetric() const;

  std::string str() const;

 private:
  Field field_;
  BigRat rat_;          // used when rational
  std::int64_t res_ = 0;  // used when modular
};

}  // namespace qri
