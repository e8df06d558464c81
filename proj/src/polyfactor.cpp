#include "adelic/polyfactor.hpp"

#include <algorithm>

namespace adelic {

Int rand_mod(Rng& rng, const Int& m) {
  size_t words = mpz_sizeinbase(m.get_mpz_t(), 2) / 64 + 1;
  Int r = 0;
  for (size_t i = 0; i < words; ++i) {
    Int w = Int(rng.next() >> 32) << 32 | Int(rng.next() >> 32);
    r = (r << 64) + w;
  }
  return mod_floor(r, m);
}

namespace {

Poly random_poly_below(Rng& rng, const RingPtr& F, int deg_bound) {
  std::vector<Scalar> cs;
  for (int i = 0; i < deg_bound; ++i) cs.push_back(F->from_int(rand_mod(rng, F->p)));
  return Poly(F, std::move(cs));
}

// equal-degree factorization of a square-free product of degree-d irreducibles
void edf(const Poly& g, int d, Rng& rng, std::vector<Poly>& out) {
  int n = g.deg() / d;
  if (n == 1) {
    out.push_back(g.monic());
    return;
  }
  const RingPtr& F = g.ring();
  const Int& p = F->p;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Poly a = random_poly_below(rng, F, g.deg());
    if (a.deg() < 1) continue;
    Poly b(F);
    if (p == 2) {
      // trace map splitting
      Poly t = a;
      Poly acc = a;
      for (int i = 1; i < d; ++i) {
        t = t.pow_mod(2, g);
        acc = acc + t;
      }
      b = acc;
    } else {
      Int e = 1;
      for (int i = 0; i < d; ++i) e *= p;
      e = (e - 1) / 2;
      b = a.pow_mod(e, g) - Poly::constant(F->one());
    }
    Poly h = gcd_poly(b, g);
    if (h.deg() > 0 && h.deg() < g.deg()) {
      edf(h, d, rng, out);
      edf(g / h, d, rng, out);
      return;
    }
  }
  fail(Err::Internal, "equal-degree splitting did not converge");
}

// factor a square-free monic polynomial over a prime field
std::vector<Poly> factor_squarefree_fp(const Poly& f, Rng& rng) {
  std::vector<Poly> out;
  const RingPtr& F = f.ring();
  Poly h = f;
  Poly w = Poly::x(F).pow_mod(1, h);
  int d = 0;
  while (h.deg() > 0 && 2 * (d + 1) <= h.deg()) {
    ++d;
    w = w.pow_mod(F->p, h);
    Poly g = gcd_poly(w - Poly::x(F), h);
    if (g.deg() > 0) {
      edf(g, d, rng, out);
      h = h / g;
      w = w % h;
    }
  }
  if (h.deg() > 0) out.push_back(h.monic());
  return out;
}

std::vector<std::pair<Poly, int>> factor_fp(const Poly& f) {
  Rng rng(0x9e3779b97f4a7c15ull);  // fixed seed: factorization must be reproducible
  std::vector<std::pair<Poly, int>> out;
  for (const auto& [piece, mult] : squarefree_decomposition(f))
    for (const Poly& irr : factor_squarefree_fp(piece, rng)) out.emplace_back(irr, mult);
  return out;
}

// ---- rationals: single-large-prime Zassenhaus -------------------------------

struct IntPoly {
  std::vector<Int> c;  // trimmed, c[i] = coeff of x^i
  int deg() const { return static_cast<int>(c.size()) - 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

IntPoly to_int_poly(const Poly& f) {
  Int den_lcm = 1;
  for (const auto& s : f.coeffs()) {
    const Int& d = s.rat_value().get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  IntPoly r;
  for (const auto& s : f.coeffs()) r.c.push_back(Rat(s.rat_value() * Rat(den_lcm)).get_num());
  r.trim();
  return r;
}

void make_primitive(IntPoly& f) {
  Int g = 0;
  for (const Int& c : f.c) g = gcd(g, c);
  if (g == 0) return;
  if (f.c.back() < 0) g = -g;
  for (Int& c : f.c) c /= g;
}

Poly to_rat_poly(const IntPoly& f) {
  auto Q = Ring::rationals();
  std::vector<Scalar> cs;
  for (const Int& c : f.c) cs.push_back(Q->from_int(c));
  return Poly(Q, std::move(cs));
}

// exact division test over Z via rational division (Gauss: primitive * primitive)
bool divides_int(const IntPoly& g, const IntPoly& f, IntPoly& quot) {
  auto [q, r] = to_rat_poly(f).divmod(to_rat_poly(g));
  if (!r.is_zero()) return false;
  quot.c.clear();
  for (const auto& s : q.coeffs()) {
    if (s.rat_value().get_den() != 1) return false;
    quot.c.push_back(s.rat_value().get_num());
  }
  quot.trim();
  return true;
}

Int balanced(const Int& c, const Int& p) {
  Int r = mod_floor(c, p);
  if (2 * r > p) r -= p;
  return r;
}

// factor a square-free primitive integer polynomial with positive lead
std::vector<IntPoly> factor_squarefree_int(IntPoly S) {
  std::vector<IntPoly> out;
  if (S.deg() < 1) return out;
  if (S.deg() == 1) {
    out.push_back(S);
    return out;
  }
  // factor-coefficient bound (Mignotte-style, generous)
  Int norm2_sq = 0;
  for (const Int& c : S.c) norm2_sq += c * c;
  Int norm2 = sqrt(norm2_sq) + 1;
  Int bound = (norm2 + abs(S.c.back())) * abs(S.c.back());
  bound <<= S.deg() + 1;
  Int p = bound * 2 + 3;
  RingPtr F;
  Poly Sp;
  for (;;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (S.c.back() % p == 0) continue;
    F = Ring::prime_field(p);
    std::vector<Scalar> cs;
    for (const Int& c : S.c) cs.push_back(F->from_int(c));
    Sp = Poly(F, std::move(cs));
    if (gcd_poly(Sp, Sp.derivative()).deg() == 0) break;  // square-free mod p
  }
  Rng rng(0x2545f4914f6cdd1dull);
  std::vector<Poly> mods = factor_squarefree_fp(Sp.monic(), rng);
  if (mods.size() > 14) fail(Err::UnsupportedInput, "too many modular factors to recombine");
  std::vector<int> avail(mods.size());
  for (size_t i = 0; i < mods.size(); ++i) avail[i] = static_cast<int>(i);

  auto lift_candidate = [&](unsigned mask) {
    Poly prod = Poly::constant(F->from_int(S.c.back()));
    for (size_t i = 0; i < avail.size(); ++i)
      if (mask >> i & 1u) prod = prod * mods[avail[i]];
    IntPoly h;
    for (const auto& s : prod.coeffs()) h.c.push_back(balanced(s.int_value(), p));
    h.trim();
    make_primitive(h);
    return h;
  };

  unsigned card = 1;
  while (2 * card <= avail.size()) {
    bool hit = false;
    unsigned n = static_cast<unsigned>(avail.size());
    unsigned limit = 1u << n;
    // masks over avail at fixed popcount, ascending (Gosper's hack)
    for (unsigned mask = (1u << card) - 1; mask < limit;) {
      IntPoly h = lift_candidate(mask);
      IntPoly quot;
      if (h.deg() >= 1 && divides_int(h, S, quot)) {
        out.push_back(h);
        S = quot;
        make_primitive(S);
        std::vector<int> rest;
        for (size_t i = 0; i < avail.size(); ++i)
          if (!(mask >> i & 1u)) rest.push_back(avail[i]);
        avail = std::move(rest);
        hit = true;
        break;
      }
      unsigned c = mask & (~mask + 1u);
      unsigned r = mask + c;
      mask = r | (((mask ^ r) >> 2) / c);
    }
    if (!hit) ++card;  // a hit keeps the same cardinality over the shrunk set
  }
  if (S.deg() >= 1) out.push_back(S);
  return out;
}

std::vector<std::pair<Poly, int>> factor_q(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  for (const auto& [piece, mult] : squarefree_decomposition(f)) {
    IntPoly ip = to_int_poly(piece);
    make_primitive(ip);
    for (const IntPoly& g : factor_squarefree_int(ip)) out.emplace_back(to_rat_poly(g).monic(), mult);
  }
  return out;
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  if (f.deg() < 1) fail(Err::Internal, "factoring a constant");
  std::vector<std::pair<Poly, int>> out;
  switch (f.ring()->kind) {
    case RingKind::Prime: out = factor_fp(f); break;
    case RingKind::Rationals: out = factor_q(f); break;
    default: fail(Err::UnsupportedInput, "factorization supported over prime fields and Q only");
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int c = Poly::cmp(a.first, b.first);
    return c < 0 || (c == 0 && a.second < b.second);
  });
  return out;
}

std::vector<Scalar> roots_in(const Poly& f, const RingPtr& M) {
  if (!M->is_finite() || M->kind == RingKind::Witt2) fail(Err::Internal, "root scan needs a finite field");
  auto lift = [&](const Scalar& c) {
    if (c.ring()->same(*M)) return c;
    return M->embed(c);
  };
  std::vector<Scalar> lifted;
  for (const auto& c : f.coeffs()) lifted.push_back(lift(c));
  Poly g(M, std::move(lifted));
  std::vector<Scalar> roots;
  Int q = M->size_if_finite();
  for (Int i = 0; i < q; ++i) {
    Scalar a = M->element_from_index(i);
    if (g.eval(a).is_zero()) roots.push_back(a);
  }
  return roots;
}

}  // namespace adelic
