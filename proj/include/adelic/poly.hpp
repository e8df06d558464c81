#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adelic/scalar.hpp"

namespace adelic {

// Dense univariate polynomial over a Scalar ring. Division-style operations
// require the relevant leading coefficients to be units.
class Poly {
 public:
  Poly() = default;  // unusable until assigned
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, std::vector<Scalar> coeffs);

  static Poly constant(const Scalar& c);
  static Poly x(const RingPtr& ring);
  // convenience: coefficients given as small integers, index = exponent
  static Poly from_ints(const RingPtr& ring, const std::vector<long>& coeffs);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  Scalar coeff(int i) const;
  const Scalar& lead() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Scalar& s) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // quotient and remainder; divisor's leading coefficient must be a unit
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  bool divides(const Poly& multiple) const;

  Poly derivative() const;
  Scalar eval(const Scalar& at) const;
  Poly eval_at_poly(const Poly& inner) const;  // composition
  Poly pow(unsigned long e) const;
  Poly pow_mod(Int e, const Poly& mod) const;
  Poly monic() const;  // requires unit lead
  Poly shift_up(int k) const;  // multiply by x^k

  std::string to_string(const std::string& var = "x") const;

  // deterministic total order (degree, then coefficients from the top)
  static int cmp(const Poly& a, const Poly& b);

 private:
  RingPtr ring_;
  std::vector<Scalar> c_;
  void trim();
};

// Euclidean operations over a coefficient FIELD
Poly gcd_poly(Poly a, Poly b);                               // monic gcd
Poly extgcd_poly(const Poly& a, const Poly& b, Poly& s, Poly& t);  // monic g = s*a + t*b
// inverse of a modulo m (field coefficients, gcd(a, m) = 1)
Poly invert_mod(const Poly& a, const Poly& m);

// square-free decomposition: list of (monic square-free factor, multiplicity),
// multiplicities strictly increasing, product matching the monic part.
// Characteristic 0 uses Yun's algorithm; characteristic p handles p-th powers.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

}  // namespace adelic
