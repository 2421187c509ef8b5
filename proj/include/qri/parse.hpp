#pragma once

#include "qri/poly.hpp"

#include <string_view>

namespace qri {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the polynomial text syntax used across the repo: terms joined by
/// `+`/`-`, monomials like `z3*z5` or `z7^2`, coefficients as integers or
/// `a/b` rationals. Round-trips with MultiPoly::str().
MultiPoly parse_poly(const Field& field, const std::vector<std::string>& vars,
                     std::string_view text);

}  // namespace qri
