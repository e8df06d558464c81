#pragma once
// Shared basics: exact integers/rationals over GMP, typed errors, and the
// deterministic RNG used by every seeded test and CLI run.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adelic {

using Int = mpz_class;
using Rat = mpq_class;

enum class Err {
  DivisionByZero,
  FieldMismatch,
  NotInvertible,
  ReducibleModulus,
  DegreeCap,
  InsufficientPrecision,
  NonzeroResidue,
  CharPObstruction,
  NotSecondKind,
  NotClosed,
  HenselFailure,
  UnsupportedCharacteristic,
  UnsupportedInput,
  InvalidSpec,
  Internal,
};

struct error : std::runtime_error {
  Err code;
  error(Err c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& what) { throw error(c, what); }

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(Err::DivisionByZero, "rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();  // mpq_class does not canonicalize two-argument constructions
  return q;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int pow_int(Int base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// floor square root plus exactness flag
inline bool is_square_int(const Int& n, Int& root) {
  if (n < 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root * root == n;
}

inline bool is_square_rat(const Rat& q, Rat& root) {
  Int rn, rd;
  if (!is_square_int(q.get_num(), rn) || !is_square_int(q.get_den(), rd)) return false;
  root = make_rat(rn, rd);
  return true;
}

// splitmix64-seeded mersenne twister would drag <random> everywhere; the tests
// only need a small, stable, documented generator, so use splitmix64 itself.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [lo, hi], inclusive
  long range(long lo, long hi) {
    if (hi < lo) fail(Err::Internal, "Rng::range: empty interval");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline const std::vector<long>& small_primes() {
  static const std::vector<long> ps = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                       41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  return ps;
}

}  // namespace adelic
