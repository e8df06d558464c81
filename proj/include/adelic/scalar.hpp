#pragma once
// Exact scalars: Q, F_p, W2 = Z/p^2 (length-2 Witt vectors of F_p in base-p
// digit coordinates), and simple extensions k[z]/(m) of Q or F_p.  Towers are
// always flattened on construction, so `base` is never itself an extension.

#include <memory>
#include <string>
#include <vector>

#include "adelic/base.hpp"

namespace adelic {

enum class RingKind { Rationals, Prime, Witt2, Extension };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Scalar {
 public:
  Scalar() = default;

  const RingPtr& ring() const { return ring_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(Int e) const;  // negative exponents invert first

  // p-th root in a finite field (bijective Frobenius inverse); errors in char 0
  Scalar pth_root() const;
  // trace of the multiplication-by-this endomorphism down to the base field;
  // identity on non-extension scalars
  Scalar trace_to_base() const;

  // Witt2 accessors: value = a0 + p*a1 with digits in [0,p)
  Scalar witt_a0() const;             // element of F_p
  Scalar witt_a1() const;             // element of F_p
  Scalar reduce_mod_p() const;        // ring map W2 -> F_p
  bool divisible_by_p() const;
  Scalar divide_by_p() const;         // (p*a)/p, W2 -> F_p; errors if not divisible

  // extension coefficient access (constant term for base scalars)
  const std::vector<Scalar>& ext_coeffs() const;
  Scalar ext_coeff(int i) const;

  const Rat& rat_value() const;
  const Int& int_value() const;  // Prime / Witt2 representative

  std::string to_string() const;

  // deterministic total order (for canonical choices, not algebraic meaning)
  static int cmp(const Scalar& a, const Scalar& b);

 private:
  friend class Ring;
  RingPtr ring_;
  Rat q_;
  Int z_;
  std::vector<Scalar> v_;  // extension coefficients over base, trimmed
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  RingKind kind = RingKind::Rationals;
  Int p = 0;        // characteristic prime for Prime/Witt2/Extension-over-F_p
  Int modulus = 0;  // Prime: p, Witt2: p^2
  RingPtr base;     // Extension only
  std::vector<Scalar> minpoly;  // Extension only; monic, length deg+1
  std::string var = "z";
  int deg = 1;      // extension degree over base

  static RingPtr rationals();
  static RingPtr prime_field(const Int& p);
  static RingPtr witt2(const Int& p);
  // monic minimal polynomial over base (Q or F_p); irreducibility is checked
  // (complete over F_p; rational-root + square-free over Q), degree cap 6
  static RingPtr extension(const RingPtr& base, const std::vector<Scalar>& minpoly_monic,
                           const std::string& var = "z");

  Int characteristic() const;
  bool is_field() const { return kind != RingKind::Witt2; }
  bool is_finite() const;
  Int size_if_finite() const;  // 0 when infinite

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(const Int& n) const;
  Scalar from_rat(const Rat& q) const;
  Scalar embed(const Scalar& base_elt) const;          // base ring -> this
  Scalar make_ext(std::vector<Scalar> coeffs) const;   // coefficients over base
  Scalar element_from_index(const Int& idx) const;     // finite enumeration

  bool same(const Ring& o) const;
  std::string to_string() const;

  // square roots in finite fields: empty optional when non-residue
  bool sqrt_in_field(const Scalar& a, Scalar& root) const;

  friend class Scalar;
};

// searches z^deg + c deterministically, then random-ish dense polynomials
RingPtr find_extension_field(const Int& p, int deg);

void require_same_ring(const Scalar& a, const Scalar& b, const char* where);

}  // namespace adelic
