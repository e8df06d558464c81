#include "adelic/nfsquare.hpp"

#include <algorithm>

#include "adelic/linalg.hpp"
#include "adelic/polyfactor.hpp"

namespace adelic {

Scalar resultant(const Poly& a0, const Poly& b0) {
  const RingPtr& R = a0.ring();
  Poly a = a0, b = b0;
  if (a.is_zero() || b.is_zero()) return R->zero();
  Scalar res = R->one();
  while (b.deg() > 0) {
    Poly r = a % b;
    if (r.is_zero()) return a.deg() == 0 ? res * a.lead().pow(b.deg()) : R->zero();
    int sign_exp = a.deg() * b.deg();
    Scalar sign = sign_exp % 2 ? -R->one() : R->one();
    res = res * sign * b.lead().pow(a.deg() - r.deg());
    a = b;
    b = r;
  }
  return res * b.lead().pow(a.deg());
}

namespace {

// ---- integer polynomial helpers modulo (m, g), g monic over Z --------------

using VI = std::vector<Int>;

void vi_trim(VI& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

VI vi_mul(const VI& a, const VI& b) {
  if (a.empty() || b.empty()) return {};
  VI r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  vi_trim(r);
  return r;
}

VI vi_sub(const VI& a, const VI& b) {
  VI r = a;
  if (b.size() > r.size()) r.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  vi_trim(r);
  return r;
}

// reduce modulo monic integer g and coefficientwise modulo m
VI vi_reduce(VI a, const VI& g, const Int& m) {
  while (a.size() >= g.size()) {
    Int c = a.back();
    size_t shift = a.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) a[shift + i] -= c * g[i];
    vi_trim(a);
  }
  for (Int& c : a) c = mod_floor(c, m);
  vi_trim(a);
  return a;
}

bool rational_reconstruct(const Int& a, const Int& m, Rat& out) {
  Int bound = sqrt(m / 2);
  Int r0 = m, r1 = mod_floor(a, m);
  Int t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Int num = t1 < 0 ? Int(-r1) : r1;
  Int den = abs(t1);
  if (den == 0) return false;
  out = make_rat(num, den);
  // candidate check; the caller still verifies the final square exactly
  Int check = Rat(out).get_num() - a * Rat(out).get_den();
  return mod_floor(check, m) == 0;
}

struct ThetaForm {
  VI g;        // monic integer minimal polynomial of theta = l * x
  Int l;       // scaling x -> theta
  Int e;       // c_int = e^2 * c rewritten in theta powers
  VI c_int;    // integral representative, reduced mod g
  Int disc;    // |resultant(g, g')|
};

ThetaForm thetaize(const Poly& pi, const Poly& c) {
  auto Q = Ring::rationals();
  int d = pi.deg();
  Int l = 1;
  for (const auto& s : pi.coeffs()) {
    const Int& den = s.rat_value().get_den();
    l = l / gcd(l, den) * den;
  }
  ThetaForm t;
  t.l = l;
  // g(X) = l^d pi(X / l) has integer coefficients and is monic
  std::vector<Int> lpow(d + 1);
  lpow[d] = 1;
  for (int i = d - 1; i >= 0; --i) lpow[i] = lpow[i + 1] * l;
  for (int i = 0; i <= d; ++i) {
    Rat v = Rat(pi.coeff(i).rat_value() * Rat(lpow[i]));
    if (v.get_den() != 1) fail(Err::Internal, "theta transform lost integrality");
    t.g.push_back(v.get_num());
  }
  // c in theta powers: coefficient j becomes c_j / l^j
  std::vector<Rat> theta_coeffs;
  Int lp = 1;
  for (int j = 0; j < d; ++j) {
    theta_coeffs.push_back(Rat(c.coeff(j).rat_value() / Rat(lp)));
    lp *= l;
  }
  Int e = 1;
  for (const Rat& r : theta_coeffs) {
    const Int& den = r.get_den();
    e = e / gcd(e, den) * den;
  }
  t.e = e;
  for (const Rat& r : theta_coeffs) t.c_int.push_back(Rat(r * Rat(e * e)).get_num());
  vi_trim(t.c_int);
  // discriminant-size quantity controlling denominators of integral elements
  std::vector<Scalar> gq;
  for (const Int& gi : t.g) gq.push_back(Q->from_int(gi));
  Poly G(Q, gq);
  Scalar res = resultant(G, G.derivative());
  t.disc = abs(Rat(res.rat_value()).get_num());
  if (t.disc == 0) fail(Err::Internal, "degenerate discriminant for an irreducible center");
  return t;
}

// value of integer poly v at the generator of F_p[x]/(h) (deg h >= 1)
Scalar value_in_factor_field(const VI& v, const Poly& h, const RingPtr& field) {
  const RingPtr& Fp = h.ring();
  std::vector<Scalar> cs;
  for (const Int& c : v) cs.push_back(Fp->from_int(c));
  Poly vp = Poly(Fp, cs) % h;
  if (h.deg() == 1) return vp.coeff(0);
  std::vector<Scalar> ext_cs;
  for (int i = 0; i < h.deg(); ++i) ext_cs.push_back(vp.coeff(i));
  return field->make_ext(ext_cs);
}

Poly scalar_to_poly(const Scalar& s, const RingPtr& Fp, int deg) {
  std::vector<Scalar> cs;
  if (deg == 1) {
    cs.push_back(s);
  } else {
    for (int i = 0; i < deg; ++i) cs.push_back(s.ext_coeff(i));
  }
  return Poly(Fp, cs);
}

}  // namespace

std::optional<Poly> sqrt_in_number_field(const Poly& pi, const Poly& c_in) {
  auto Q = Ring::rationals();
  if (pi.deg() < 1 || !pi.lead().is_one()) fail(Err::Internal, "center must be monic of positive degree");
  Poly c = c_in % pi;
  if (c.is_zero()) return Poly(Q);
  if (pi.deg() == 1) {
    // residue field is Q itself
    Scalar v = c.coeff(0);
    Rat q = v.rat_value();
    if (q < 0) return std::nullopt;
    Int n2, d2;
    if (!is_square_int(q.get_num(), n2) || !is_square_int(q.get_den(), d2)) return std::nullopt;
    return Poly::constant(Q->from_rat(make_rat(n2, d2)));
  }

  ThetaForm T = thetaize(pi, c);
  std::vector<Scalar> gq;
  for (const Int& gi : T.g) gq.push_back(Q->from_int(gi));
  Poly Gq(Q, gq);

  // phase A: scan witness primes; keep every prime fit for lifting
  struct LiftData {
    Int p;
    std::vector<Poly> mods, roots;
    Poly gp;
  };
  std::vector<LiftData> lifts;
  int usable_primes = 0;
  Int p = 2;
  while (usable_primes < 8) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (T.disc % p == 0) continue;
    ++usable_primes;
    auto Fp = Ring::prime_field(p);
    std::vector<Scalar> gp_cs;
    for (const Int& gi : T.g) gp_cs.push_back(Fp->from_int(gi));
    Poly gp(Fp, gp_cs);
    auto factors = factor(gp);
    bool all_nonzero = true;
    std::vector<Poly> mods, roots;
    for (const auto& [h, mult] : factors) {
      if (mult != 1) fail(Err::Internal, "repeated factor at a prime not dividing the discriminant");
      RingPtr F = h.deg() == 1 ? RingPtr(Fp) : Ring::extension(Fp, h.coeffs());
      Scalar val = value_in_factor_field(T.c_int, h, F);
      if (val.is_zero()) {
        all_nonzero = false;
        continue;
      }
      Scalar root = F->zero();
      if (!F->sqrt_in_field(val, root)) return std::nullopt;  // certified non-square
      mods.push_back(h);
      roots.push_back(scalar_to_poly(root, Fp, h.deg()));
    }
    if (all_nonzero) lifts.push_back(LiftData{p, std::move(mods), std::move(roots), gp});
  }
  if (lifts.empty()) fail(Err::UnsupportedInput, "no prime fit for square-root lifting");
  // fewer modular factors means fewer sign patterns to search below
  std::sort(lifts.begin(), lifts.end(),
            [](const LiftData& a, const LiftData& b) { return a.mods.size() < b.mods.size(); });

  std::vector<Scalar> c_q;
  for (const Int& ci : T.c_int) c_q.push_back(Q->from_int(ci));
  Poly Cq(Q, c_q);

  // phase B: the factor-field roots carry one sign choice each, and only the
  // pattern matching the rational root (up to a global flip) can reconstruct,
  // so enumerate patterns with the first factor's sign pinned
  size_t lift_attempts = std::min<size_t>(lifts.size(), 3);
  for (size_t li = 0; li < lift_attempts; ++li) {
    const LiftData& L = lifts[li];
    auto Fp = Ring::prime_field(L.p);
    Poly gmon = L.gp.monic();
    size_t r = L.mods.size();
    for (unsigned long mask = 0; mask < (1ul << (r - 1)); ++mask) {
      // CRT the signed roots to u0 with u0^2 = c mod (p, g)
      Poly u0(Fp);
      for (size_t j = 0; j < r; ++j) {
        Poly rj = L.roots[j];
        if (j > 0 && (mask >> (j - 1)) & 1) rj = rj * -Fp->one();
        Poly Gj = gmon / L.mods[j];
        Poly adj = invert_mod(Gj % L.mods[j], L.mods[j]);
        u0 = (u0 + rj * Gj * adj) % gmon;
      }
      Poly w0 = invert_mod(u0 * Fp->from_int(2), gmon);

      // Hensel: double the modulus exponent, reconstruct, verify exactly
      VI u, w;
      for (const auto& s : u0.coeffs()) u.push_back(s.int_value());
      for (const auto& s : w0.coeffs()) w.push_back(s.int_value());
      Int pm = L.p;
      for (int round = 0; round < 12 && mpz_sizeinbase(pm.get_mpz_t(), 2) <= 4096; ++round) {
        pm = pm * pm;
        // u <- u - (u^2 - c) * w  mod (pm, g)
        VI u2 = vi_reduce(vi_mul(u, u), T.g, pm);
        VI diff = vi_reduce(vi_sub(u2, T.c_int), T.g, pm);
        u = vi_reduce(vi_sub(u, vi_mul(diff, w)), T.g, pm);
        // w <- w (2 - 2 u w)  mod (pm, g)
        VI two_uw = vi_reduce(vi_mul(vi_mul(u, w), {2}), T.g, pm);
        w = vi_reduce(vi_mul(w, vi_sub({2}, two_uw)), T.g, pm);

        std::vector<Scalar> cand;
        bool ok = true;
        for (const Int& ci : u) {
          Int bal = ci;
          if (2 * bal > pm) bal -= pm;
          if (abs(bal) <= sqrt(pm / 2)) {
            cand.push_back(Q->from_int(bal));
            continue;
          }
          Rat rr;
          if (!rational_reconstruct(ci, pm, rr)) {
            ok = false;
            break;
          }
          cand.push_back(Q->from_rat(rr));
        }
        if (!ok) continue;
        Poly u_theta(Q, cand);
        if (((u_theta * u_theta - Cq) % Gq).is_zero()) {
          // back to the x coordinate: u(x) = u_theta(l x) / e, then verify
          Poly lx = Poly::x(Q) * Q->from_int(T.l);
          Poly u_x = (u_theta.eval_at_poly(lx) * Q->from_rat(make_rat(1, T.e))) % pi;
          if (((u_x * u_x - c) % pi).is_zero()) return u_x;
          fail(Err::Internal, "theta-form square root failed to transfer");
        }
      }
    }
  }
  fail(Err::UnsupportedInput, "could not certify squareness in the residue field");
}

FlatQuadratic flatten_quadratic_over_q(const Poly& pi, const Poly& c) {
  auto Q = Ring::rationals();
  int d = pi.deg();
  if (2 * d > 6) fail(Err::DegreeCap, "flattened quadratic extension would exceed the degree cap");

  // elements of (Q[x]/pi)[y]/(y^2 - c) are pairs (u, v); vectorize as Q^(2d)
  auto mul_pair = [&](const std::pair<Poly, Poly>& A, const std::pair<Poly, Poly>& B) {
    Poly u = (A.first * B.first + A.second * B.second * c) % pi;
    Poly v = (A.first * B.second + A.second * B.first) % pi;
    return std::make_pair(u, v);
  };
  auto vectorize = [&](const std::pair<Poly, Poly>& A) {
    std::vector<Scalar> v;
    for (int i = 0; i < d; ++i) v.push_back(A.first.coeff(i));
    for (int i = 0; i < d; ++i) v.push_back(A.second.coeff(i));
    return v;
  };

  for (long lambda = 0; lambda < 50; ++lambda) {
    std::pair<Poly, Poly> zeta = {Poly::x(Q) * Q->from_int(lambda), Poly::constant(Q->one())};
    std::vector<std::pair<Poly, Poly>> powers = {{Poly::constant(Q->one()), Poly(Q)}};
    for (int i = 1; i <= 2 * d; ++i) powers.push_back(mul_pair(powers.back(), zeta));

    Matrix span;
    for (int i = 0; i < 2 * d; ++i) span.push_back(vectorize(powers[i]));
    Matrix copy = span;
    if (static_cast<int>(rref(copy).size()) != 2 * d) continue;  // not primitive, bump lambda

    std::vector<std::vector<Scalar>> cols = span;  // columns: zeta^i
    auto to_col = [&](const std::pair<Poly, Poly>& A) { return vectorize(A); };
    auto sol = solve_columns(cols, to_col(powers[2 * d]), Q);
    if (!sol) fail(Err::Internal, "power of primitive element escaped its own span");
    std::vector<Scalar> mp;
    for (const auto& s : *sol) mp.push_back(-s);
    mp.push_back(Q->one());
    RingPtr M = Ring::extension(Q, mp);

    auto x_sol = solve_columns(cols, to_col({Poly::x(Q) % pi, Poly(Q)}), Q);
    auto y_sol = solve_columns(cols, to_col({Poly(Q), Poly::constant(Q->one())}), Q);
    if (!x_sol || !y_sol) fail(Err::Internal, "embedding solve failed despite full rank");
    FlatQuadratic out{M, Poly(Q, *x_sol), Poly(Q, *y_sol)};

    // verify: pi(x_embed) = 0 and y_embed^2 = c(x_embed) in M
    Poly mpoly(Q, mp);
    Poly check1 = pi.eval_at_poly(out.x_embed) % mpoly;
    Poly check2 = (out.y_embed * out.y_embed - c.eval_at_poly(out.x_embed)) % mpoly;
    if (!check1.is_zero() || !check2.is_zero()) fail(Err::Internal, "flattening verification failed");
    return out;
  }
  fail(Err::Internal, "no primitive element found for the quadratic tower");
}

}  // namespace adelic
