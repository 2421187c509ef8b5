#pragma once

#include "qri/catalog.hpp"

namespace qri {

struct lift_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expresses a parameter-space polynomial as a linear form in the ambient
/// coordinates: p = sum c_i m_i with m_i the image monomials. Throws
/// lift_error when a monomial of p is not among the images.
LinForm lift_to_coords(const MultiPoly& p, const MonomialMap& map);

/// The product-of-lifts construction: lift(s^2 h) * lift(t^2 h) - lift(s t h)^2.
/// The result is zero or a quadric of rank at most 3 in the ideal of the
/// parametrized variety; the rank bound is checked.
QuadForm qab(const MultiPoly& s, const MultiPoly& t, const MultiPoly& h, const MonomialMap& map);

/// The 21 rank-3 quadrics of the 2-uple embedding of P^3 (three index
/// families over pairs and sums of coordinates; deduplicated count checked).
GeneratorSet gamma_v2p3();

/// The 27 rank-3 quadrics of the 3-uple embedding of P^2, a basis of the
/// quadric space.
GeneratorSet gamma_v3p2();

/// Restriction of gamma_v2p3 to the hyperplane z3 = z5, together with the
/// restricted rank-3 quadric of z3 z5 - z2 z6. Spans the full 20-dimensional
/// quadric space of the restricted surface.
GeneratorSet s5_witness();

/// Greedy rank-3 spanning witness for the d-uple embedding of P^n, built
/// from the product construction over small section families. Throws when
/// the family fails to span (it spans for every case used here over Q).
GeneratorSet veronese_rank3_witness(unsigned n, unsigned d);

}  // namespace qri
