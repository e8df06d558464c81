#pragma once

#include <utility>
#include <vector>

#include "adelic/poly.hpp"

namespace adelic {

// Complete factorization into monic irreducibles with multiplicities,
// canonically sorted (degree, then coefficient order). The unit is dropped;
// callers that need it read f.lead(). Supported coefficient rings: prime
// fields (any p) and the rationals (square-free part handled by a single
// large prime exceeding the factor-coefficient bound, then subset
// recombination). Inputs whose modular factor count exceeds the
// recombination cap are rejected rather than mis-factored.
std::vector<std::pair<Poly, int>> factor(const Poly& f);

// all roots of f inside the finite ring M (brute scan; coefficients of f are
// embedded from M's base field when they do not already live in M)
std::vector<Scalar> roots_in(const Poly& f, const RingPtr& M);

// deterministic helper: uniform residue modulo m drawn from a seeded stream
Int rand_mod(Rng& rng, const Int& m);

}  // namespace adelic
