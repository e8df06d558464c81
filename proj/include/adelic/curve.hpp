#pragma once

#include <memory>
#include <string>

#include "adelic/poly.hpp"

namespace adelic {

// num/den over the base field, den monic, gcd(num, den) = 1
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Poly num);  // denominator 1
  RationalFunction(Poly num, Poly den);
  static RationalFunction constant(const Scalar& c);
  static RationalFunction x(const RingPtr& ring);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.deg() == 0; }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction derivative() const;  // quotient rule
  Scalar eval(const Scalar& at) const;  // throws when the denominator vanishes
  std::string to_string(const std::string& var = "x") const;

 private:
  Poly num_, den_;
  void reduce();
};

// Smooth projective model: the projective line, or the smooth completion of
// y^2 = f(x) with deg f in {3, 5} and f square-free (one point above x = inf).
struct CurveModel {
  RingPtr k;    // base field: Q or F_p, p odd
  bool is_p1 = true;
  Poly f;       // zero polynomial for the projective line
  int genus = 0;

  std::string to_string() const;
};

using CurvePtr = std::shared_ptr<const CurveModel>;

CurvePtr make_projective_line(const RingPtr& k);
CurvePtr make_hyperelliptic(const Poly& f);  // validates deg, square-freeness, char != 2
bool same_curve(const CurvePtr& A, const CurvePtr& B);

// Element a(x) + b(x) y of the function field (b = 0 identically on the line)
class FFElt {
 public:
  FFElt() = default;
  FFElt(CurvePtr curve, RationalFunction a, RationalFunction b);
  static FFElt zero(const CurvePtr& c);
  static FFElt one(const CurvePtr& c);
  static FFElt from_rational(const CurvePtr& c, RationalFunction a);
  static FFElt x(const CurvePtr& c);
  static FFElt y(const CurvePtr& c);  // hyperelliptic only
  static FFElt constant(const CurvePtr& c, const Scalar& s);

  const CurvePtr& curve() const { return curve_; }
  const RationalFunction& a() const { return a_; }
  const RationalFunction& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  FFElt operator-() const;
  FFElt operator+(const FFElt& o) const;
  FFElt operator-(const FFElt& o) const;
  FFElt operator*(const FFElt& o) const;
  FFElt operator/(const FFElt& o) const;
  FFElt inverse() const;
  FFElt pow(long e) const;
  bool operator==(const FFElt& o) const;
  bool operator!=(const FFElt& o) const { return !(*this == o); }

  // d/dx in the function field: (a + b y)' = a' + (b' + b f'/(2f)) y
  FFElt derivative() const;

  std::string to_string() const;

 private:
  CurvePtr curve_;
  RationalFunction a_, b_;
};

}  // namespace adelic
