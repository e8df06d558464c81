#pragma once

#include "adelic/place.hpp"

namespace adelic {

// Truncated Laurent series: coefficients known exactly for exponents in
// [min_exp, prec). Exponents below min_exp are exactly zero; exponents at or
// beyond prec are unknown (asking for them is an error, not a guess).
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(RingPtr ring, int min_exp, std::vector<Scalar> coeffs, int prec);
  static LaurentSeries zero(const RingPtr& ring, int prec);
  static LaurentSeries constant(const Scalar& c, int prec);
  static LaurentSeries monomial(const Scalar& c, int exp, int prec);

  const RingPtr& ring() const { return ring_; }
  int prec() const { return prec_; }
  int min_exp() const { return min_; }
  bool is_zero() const { return c_.empty(); }  // zero on the whole known range
  // valuation: exponent of the first nonzero known coefficient; prec() if none
  int valuation() const { return c_.empty() ? prec_ : min_; }
  Scalar coeff(int e) const;  // exact below prec, error at or above

  LaurentSeries operator-() const;
  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator*(const Scalar& s) const;
  LaurentSeries operator/(const LaurentSeries& o) const;
  LaurentSeries inverse() const;
  bool operator==(const LaurentSeries& o) const;  // equal known windows and values

  LaurentSeries truncate(int new_prec) const;
  LaurentSeries shift(int k) const;  // multiply by t^k
  LaurentSeries pow(long e) const;
  LaurentSeries derivative() const;  // d/dt
  // termwise antiderivative, no constant term; throws NonzeroResidue when the
  // t^-1 coefficient is nonzero, CharPObstruction when a division by p blocks
  LaurentSeries antiderivative() const;

  std::string to_string(const std::string& var = "t") const;

 private:
  RingPtr ring_;
  int min_ = 0;
  int prec_ = 0;
  std::vector<Scalar> c_;  // c_[i] is the coefficient of t^(min_ + i)
  void normalize();
};

// embed a base-field scalar into M (identity when rings match)
Scalar embed_into(const Scalar& c, const RingPtr& M);

// evaluate a base-field polynomial at a series with coefficients in M
LaurentSeries eval_poly_at_series(const Poly& p, const LaurentSeries& s);

// solve P(X) = 0 for a power series X(t) with X(0) = seed, where
// P(X) = sum coeffs[i] X^i and d/dX P(seed) is a unit at t = 0
LaurentSeries newton_solve(const std::vector<LaurentSeries>& coeffs, const Scalar& seed, int prec);

// local coordinates at a place: x(t) and y(t) (y is the zero series on the line)
struct CoordinateSeries {
  LaurentSeries x;
  LaurentSeries y;
};
CoordinateSeries coordinate_series(const Place& P, int prec);

// Laurent expansion of the function g at P, known at least on [min, prec)
LaurentSeries expand_element(const FFElt& g, const Place& P, int prec);

// Laurent expansion of the differential g dx at P, in the form (series) dt
LaurentSeries expand_differential(const FFElt& g, const Place& P, int prec);

// residue of g dx at P: trace of the t^-1 coefficient down to the base field
Scalar residue_at_place(const FFElt& g, const Place& P);

// sum of residues over every pole (for verification; enumerates poles directly)
Scalar residue_sum(const FFElt& g);

}  // namespace adelic
