#pragma once

#include "qri/linalg.hpp"
#include "qri/poly.hpp"

#include <map>

namespace qri {

class SymMatrix;

/// Homogeneous quadratic polynomial in the ambient coordinates, stored as a
/// coefficient map on monomials z_i z_j with i <= j.
class QuadForm {
 public:
  QuadForm() = default;
  QuadForm(Field f, std::vector<std::string> vars);

  static QuadForm from_poly(const MultiPoly& p);

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t ambient() const { return vars_.size() - 1; }
  std::size_t dim() const { return vars_.size(); }

  bool is_zero() const { return coeffs_.empty(); }
  FieldElement coeff(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, const FieldElement& c);

  QuadForm operator-() const;
  QuadForm& operator+=(const QuadForm& o);
  QuadForm& operator-=(const QuadForm& o);
  friend QuadForm operator+(QuadForm a, const QuadForm& b) { return a += b; }
  friend QuadForm operator-(QuadForm a, const QuadForm& b) { return a -= b; }
  QuadForm scaled(const FieldElement& c) const;
  bool operator==(const QuadForm& o) const;

  MultiPoly to_poly() const;
  std::string str() const { return to_poly().str(); }

  /// Coefficient vector over pairs (i <= j) in lexicographic order.
  std::vector<FieldElement> flatten() const;
  static QuadForm from_flat(Field f, std::vector<std::string> vars,
                            const std::vector<FieldElement>& flat);

  QuadForm to_field(const Field& f) const;
  /// Over Q: scales to a primitive integer vector whose first nonzero
  /// coefficient (pair order) is positive. Over GF(p): leading coefficient 1.
  QuadForm normalized() const;

  unsigned rank() const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  std::map<std::pair<std::size_t, std::size_t>, FieldElement> coeffs_;
};

/// Symmetric matrix over an exact field (upper triangle stored).
class SymMatrix {
 public:
  SymMatrix() = default;
  SymMatrix(Field f, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t size() const { return n_; }
  const FieldElement& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const FieldElement& v);

  bool operator==(const SymMatrix& o) const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;
  Field field_;
  std::size_t n_ = 0;
  std::vector<FieldElement> upper_;
};

/// The symmetric matrix of a quadric: off-diagonal (i,j) entries carry the
/// z_i z_j coefficient, diagonal entries twice the z_i^2 coefficient, so
/// z^T M z = 2q identically.
SymMatrix quad_to_sym(const QuadForm& q);

unsigned sym_rank(const SymMatrix& m);

}  // namespace qri
