#pragma once

#include "adelic/adele.hpp"
#include "adelic/derham.hpp"

namespace adelic {

// quadratic lift of a prime-characteristic curve: coefficients in Z/p^2
struct W2Curve {
  CurvePtr C;     // the reduction, over F_p
  RingPtr W;      // Z/p^2 in base-p digit coordinates
  Poly f_tilde;   // coefficient lift of the defining polynomial (unused for the line)
};
W2Curve lift_curve(const CurvePtr& C);

// transport between F_p and Z/p^2 coefficients
Scalar lift_scalar(const RingPtr& W, const Scalar& a);
Scalar reduce_scalar(const RingPtr& k, const Scalar& a);
Scalar scalar_div_p(const RingPtr& k, const Scalar& a);  // a must vanish mod p
Poly lift_poly(const RingPtr& W, const Poly& a);
Poly reduce_poly(const RingPtr& k, const Poly& a);
Poly poly_div_p(const RingPtr& k, const Poly& a);
LaurentSeries lift_series(const RingPtr& W, const LaurentSeries& s);
LaurentSeries reduce_series(const RingPtr& k, const LaurentSeries& s);
LaurentSeries series_div_p(const RingPtr& k, const LaurentSeries& s);

// coefficientwise Frobenius t -> t^p over a prime field
LaurentSeries frobenius_series(const LaurentSeries& s);
// substitution of a positive-valuation series into a power series
LaurentSeries compose_series(const LaurentSeries& outer, const LaurentSeries& inner);
// p-th power of a function field element
FFElt frobenius_function(const FFElt& g);

// the generic-point Frobenius lifting x -> x^p, y -> y^p (1 + p c)
struct GenericLift {
  W2Curve lifted;
  RationalFunction c;  // over F_p; zero for the projective line
};
GenericLift generic_lift(const CurvePtr& C);

// Frobenius liftings chosen at individual places
struct LocalLift {
  Place place;
  bool ramified = false;
  RationalFunction delta;     // unramified: x -> x^p + p delta, delta regular at the place
  LaurentSeries delta_series; // ramified: t -> t^p + p delta(t), positive valuation
};

struct LiftFamily {
  GenericLift generic;
  std::map<Place, LocalLift> local;
  std::set<Place> excluded;  // places left out of the q = 0 claims
};
// generic lift plus a trivial ramified lifting at every finite rational branch place
LiftFamily standard_family(const CurvePtr& C);
// standard family with seeded pseudorandom lifting offsets, plus offsets at a
// few extra unramified places; same seed, same family
LiftFamily random_family(const CurvePtr& C, std::uint64_t seed);
void add_unramified_lift(LiftFamily& F, const Place& P, const RationalFunction& delta);
void add_ramified_lift(LiftFamily& F, const Place& P, const LaurentSeries& delta);

// the x-coordinate over Z/p^2 as a series in the branch uniformizer t = y
LaurentSeries lift_x_series(const W2Curve& WC, const Place& P, int prec);

// the lifting-induced splitting on one-forms: psi(g dx) as a closed degree-1
// chain; the default is the inverse Cartier image and the family places carry
// the local lifting data
Degree1 splitting_map(const FFElt& g, const LiftFamily& F, int precision);
// psi applied to dy via the y-component of the liftings
Degree1 splitting_map_dy(const LiftFamily& F, int precision);

// the chain with the inverse Cartier image alone (no local corrections)
Degree1 canonical_cocycle(const FFElt& g, const LiftFamily& F, int precision);
// y^{p-1} dy as a multiplier of dx: the comparison default for psi(dy)
FFElt canonical_dy_multiplier(const CurvePtr& C);
// point-level u with D(u) = splitting_map(g) - canonical_cocycle(g)
Cochain homotopy_witness(const FFElt& g, const LiftFamily& F, int precision);
// point-level u with D(u) = psi(dy) - diagonal of canonical_dy_multiplier
Cochain homotopy_adele_y(const LiftFamily& F, int precision);

struct DecompositionReport {
  bool closed = false;          // D(psi(omega)) = 0
  bool valid = false;           // psi(omega) passes the integrality checks
  bool exact_homotopy = false;  // psi - canonical = D(witness), componentwise
  std::vector<Scalar> pairings; // <psi(omega), basis cocycle> per basis element
};
// runs the checks for a form g dx against one family; the family must be
// global (no excluded places) so classes can be paired
DecompositionReport verify_decomposition(const FFElt& g, const LiftFamily& F, int precision);

// cocycles of the second-kind basis forms; a basis form whose local
// antiderivative hits the characteristic is skipped
std::vector<Degree1> basis_cocycles(const CurvePtr& C, int precision);

// lifting independence: the same forms split through two families
struct QuasiIsoFormReport {
  bool closed_a = false, closed_b = false;    // both psi(omega) closed
  bool witness_a = false, witness_b = false;  // psi - canonical = D(u), each family
  std::vector<Scalar> pair_gap;  // <psi_A(omega) - psi_B(omega), basis cocycle>
  bool agree = false;            // every pairing gap vanishes
};
struct QuasiIsoReport {
  std::vector<QuasiIsoFormReport> forms;
  bool ok = false;
};
QuasiIsoReport verify_quasi_iso(const std::vector<FFElt>& forms, const LiftFamily& A,
                                const LiftFamily& B, int precision);

}  // namespace adelic
