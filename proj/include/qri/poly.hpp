#pragma once

#include "qri/field.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qri {

/// Exponent vector; length equals the number of variables of the polynomial.
using Monomial = std::vector<std::uint32_t>;

unsigned monomial_degree(const Monomial& m);
Monomial monomial_mul(const Monomial& a, const Monomial& b);

/// Graded reverse lexicographic order, earlier variables dominant.
/// Matches the order in which generator listings are conventionally printed.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(b, a); }
};

/// Sparse multivariate polynomial over an exact field, with named variables.
/// Terms are kept in a canonical graded order so equality is structural and
/// printing is deterministic (leading term first).
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, FieldElement, MonomialGreater>;

  MultiPoly() = default;
  MultiPoly(Field f, std::vector<std::string> vars);

  static MultiPoly constant(Field f, std::vector<std::string> vars, const FieldElement& c);
  static MultiPoly variable(Field f, std::vector<std::string> vars, std::size_t index);
  static MultiPoly from_monomial(Field f, std::vector<std::string> vars, Monomial m,
                                 const FieldElement& c);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;  // 0 for the zero polynomial
  bool is_homogeneous(unsigned d) const;
  std::size_t term_count() const { return terms_.size(); }

  FieldElement coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const FieldElement& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly scaled(const FieldElement& c) const;
  MultiPoly pow(unsigned e) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(std::size_t var) const;
  /// Substitutes a polynomial for one variable (same variable set).
  MultiPoly substituted(std::size_t var, const MultiPoly& value) const;
  FieldElement eval(std::span<const FieldElement> point) const;

  /// Set of variable indices that occur with positive exponent.
  std::vector<std::size_t> support() const;
  bool uses_var(std::size_t var) const;
  /// Removes an unused variable slot; throws if the variable occurs.
  MultiPoly dropped_var(std::size_t var) const;

  MultiPoly to_field(const Field& f) const;

  std::string str() const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  TermMap terms_;
};

/// Homogeneous linear form as a bare coefficient vector. Variable names and
/// the zero/nonzero distinction are the caller's context.
struct LinForm {
  Field field;
  std::vector<FieldElement> coeffs;

  LinForm() = default;
  LinForm(Field f, std::size_t n);

  bool is_zero() const;
  /// Scales so the first nonzero coefficient is 1; identity on the zero form.
  LinForm normalized() const;
  MultiPoly to_poly(const std::vector<std::string>& vars) const;
  bool operator==(const LinForm& o) const;

  std::string str(const std::vector<std::string>& vars) const;
};

}  // namespace qri
