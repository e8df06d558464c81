#pragma once

#include "adelic/place.hpp"

namespace adelic {

// Differentials are written as g dx with g in the function field; every
// routine below takes and returns the multiplier g.

// global 1-forms x^i dx / y, 0 <= i < genus (empty on the line)
std::vector<FFElt> holomorphic_basis(const CurvePtr& C);
// second-kind representatives x^i dx / y, 0 <= i < 2 genus
std::vector<FFElt> second_kind_basis(const CurvePtr& C);

enum class DifferentialKind { FirstKind, SecondKind, NotSecondKind };
DifferentialKind classify_differential(const FFElt& g);

// omega = sum_i coords[i] * basis_i + d(witness), basis_i = x^i dx / y
struct ReducedDifferential {
  std::vector<Scalar> coords;
  FFElt witness;
};

// Rewrite a second-kind differential over the basis above by stripping pole
// layers with exact differentials; throws NotSecondKind when a simple-pole
// residual survives, CharPObstruction when a layer needs a division by p.
ReducedDifferential reduce_to_basis(const FFElt& g);

// Cartier operator (char p > 0): C(u^p omega) = u C(omega), C(x^(p-1) dx) = dx,
// and C kills exact differentials; the inverse map sends g dx to g^p x^(p-1) dx
FFElt cartier(const FFElt& g);
FFElt cartier_inverse(const FFElt& g);

}  // namespace adelic
