#pragma once

#include "qri/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qri {

using Matrix = std::vector<std::vector<FieldElement>>;

struct RrefResult {
  std::size_t rank = 0;
  Matrix rows;                      // nonzero rows of the reduced echelon form
  std::vector<std::size_t> pivots;  // pivot column per row
};

/// Reduced row echelon form over the exact field. Deterministic given the
/// input order: the first row with a nonzero entry in the leftmost open
/// column is chosen as pivot.
RrefResult rref(const Matrix& input);

/// Basis of {x : A x = 0}, one vector per free column, in column order.
Matrix nullspace_basis(const Matrix& a, std::size_t ncols, const Field& field);

/// Reduces v against the rows of a reduced echelon form; v is in the row
/// span iff the residue is zero.
std::vector<FieldElement> reduce_against(const RrefResult& r, std::vector<FieldElement> v);
bool in_row_span(const RrefResult& r, const std::vector<FieldElement>& v);

/// Incrementally maintained reduced echelon basis of a growing row span.
class SpanBuilder {
 public:
  explicit SpanBuilder(Field f) : field_(f) {}
  /// Returns true if the vector enlarged the span.
  bool insert(std::vector<FieldElement> v);
  bool contains(const std::vector<FieldElement>& v) const;
  std::size_t dim() const { return rows_.size(); }
  const Matrix& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  Field field_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

/// Exact symbolic determinant by cofactor expansion with memoization on
/// column subsets. Size capped at 8; all certificates used here are <= 6x6.
MultiPoly det_poly(const std::vector<std::vector<MultiPoly>>& m);

/// If p == c * lambda^s for a nonzero scalar c and a nonzero linear form
/// lambda, returns (c, lambda) with lambda normalized so its first nonzero
/// coefficient is 1. The identity is re-verified by exact expansion before
/// returning. Over GF(q) the Frobenius twist is unwound first when q | s.
std::optional<std::pair<FieldElement, LinForm>> scaled_linear_power(const MultiPoly& p,
                                                                    unsigned s);

}  // namespace qri
