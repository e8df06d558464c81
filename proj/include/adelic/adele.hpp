#pragma once

#include <map>
#include <set>

#include "adelic/series.hpp"

namespace adelic {

// A cochain of bidegree (p, q), p, q in {0, 1}:
//   p = 0 carries functions, p = 1 differentials (local shape s(t) dt);
//   q = 0 lives on the one-step chains (gen) and (x), q = 1 on (gen, x).
// Point and chain components are stored as a rational default plus finitely
// many Laurent-series exceptions (the exception wins where present). For
// q = 0 the point components must be integral: exceptions need min_exp >= 0
// and every pole of the default must sit under an exception.
// `excluded` marks places where a q = 0 section makes no claim (a section
// over an open set); chains over excluded places stay live, but derivative
// checks skip them.
struct Cochain {
  int p = 0, q = 0;
  CurvePtr curve;
  FFElt gen;   // generic-chain component, used only when q == 0
  FFElt def;   // default for the (x)- or (gen,x)-components
  std::map<Place, LaurentSeries> exc;
  std::set<Place> excluded;

  static Cochain make(int p, int q, const CurvePtr& C);
};

// a total-degree-1 element: the pair of its (1,0) and (0,1) legs
struct Degree1 {
  Cochain a10, a01;
};

// the component of u at the place (exception if present, else the expanded
// default; `precision` controls fresh expansions)
LaurentSeries component_at(const Cochain& u, const Place& P, int precision);

// integrality and shape checks; throws InvalidSpec on violation
void validate_cochain(const Cochain& u);

// componentwise exterior derivative with the Koszul sign (-1)^q; needs p == 0
Cochain d_prime(const Cochain& u);
// difference of restrictions (gen) - (x), promoting q = 0 to q = 1
Cochain d_second(const Cochain& u, int precision);
// the full differential on degrees 0 and 1
Degree1 total_d0(const Cochain& u00, int precision);
Cochain total_d1(const Degree1& u, int precision);  // lands in (1,1)

bool cochain_is_zero(const Cochain& u, int precision);

Cochain add(const Cochain& a, const Cochain& b, int precision);
Cochain negate(const Cochain& a);
Degree1 add(const Degree1& a, const Degree1& b, int precision);
Degree1 negate(const Degree1& a);

// cup products (front component times back component); on degree-1 pairs the
// (1,0) x (0,1) term carries the sign -1 forced by the graded Leibniz rule
Cochain cup(const Degree1& u, const Degree1& v, int precision);
Degree1 cup(const Cochain& u00, const Degree1& v, int precision);
Degree1 cup(const Degree1& v, const Cochain& u00, int precision);
Cochain cup00(const Cochain& u00, const Cochain& v00, int precision);
// dispatches on bidegrees: (0,0)x(0,0), (0,0)x(1,1), (1,1)x(0,0)
Cochain cup(const Cochain& a, const Cochain& b, int precision);

// sum of residues of a (1,1) cochain over all materialized chains
Scalar integrate(const Cochain& u);

// residue pairing <u, v> = integrate(cup(u, v)) on degree-1 elements
Scalar pairing(const Degree1& u, const Degree1& v, int precision);

// Degree-1 cocycle attached to a second-kind differential omega = g dx: the
// (1,0) leg keeps g with zeroed slots at its poles, the (0,1) leg carries
// local antiderivatives there; D of the result vanishes identically.
Degree1 cocycle_from_second_kind(const FFElt& g, int precision);
// the same with slots at every place of S (S must cover the poles of g dx)
Degree1 cocycle_with_slots(const FFElt& g, const std::vector<Place>& S, int precision);

// Solve D(b) = (0, beta) for a (0,0) cochain b. Requires beta closed, which
// forces constant components; throws NotClosed otherwise (and
// UnsupportedInput for the characteristic-p closed-but-nonconstant shapes).
Cochain coboundary_witness_01(const Cochain& beta, int precision);

}  // namespace adelic
