#pragma once

#include <optional>

#include "adelic/poly.hpp"

namespace adelic {

// Decide whether c (a polynomial of degree < deg pi, read modulo pi) is a
// square in the number field Q[x]/(pi), pi monic irreducible over Q.
//   - returns a square root (reduced mod pi) when c is a square; the root is
//     verified exactly, so a Split answer is unconditional
//   - returns nullopt when a modular witness proves c is not a square; the
//     witness prime avoids the discriminant, so this is also unconditional
//   - throws UnsupportedInput if the bounded search cannot decide
std::optional<Poly> sqrt_in_number_field(const Poly& pi, const Poly& c);

// Flatten the quadratic tower (Q[x]/(pi))[y]/(y^2 - c) with c a certified
// non-square: a degree-2d field Q[z]/(m) together with the images of x and y.
struct FlatQuadratic {
  RingPtr field;  // Q[z]/(m)
  Poly x_embed;   // image of x as a polynomial in z
  Poly y_embed;   // image of y as a polynomial in z
};
FlatQuadratic flatten_quadratic_over_q(const Poly& pi, const Poly& c);

// resultant of two rational polynomials (Euclidean algorithm)
Scalar resultant(const Poly& a, const Poly& b);

}  // namespace adelic
