#include "adelic/derham.hpp"

#include "adelic/linalg.hpp"

namespace adelic {

namespace {

// x^i dx / y rewritten as a dx-multiplier: (x^i / f) y
FFElt basis_multiplier(const CurvePtr& C, int i) {
  return FFElt(C, RationalFunction(Poly(C->k)),
               RationalFunction(Poly::x(C->k).pow(i), C->f));
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) fail(Err::Internal, "expected an exact polynomial division");
  return q;
}

Scalar nonzero_in_base(const RingPtr& k, long n, const char* step) {
  Scalar s = k->from_int(n);
  if (s.is_zero())
    fail(Err::CharPObstruction, std::string(step) + " needs a division by the characteristic");
  return s;
}

// Ostrogradsky split of the even part: u dx = d(A/Dm + intP) + (B/Ds) dx with
// Dm = gcd(D, D'), Ds = D/Dm squarefree; B = 0 exactly when u dx is exact up
// to the simple-pole residual being absent
RationalFunction reduce_even(const CurvePtr& C, const RationalFunction& u, Poly& B_out,
                             Poly& Ds_out) {
  const RingPtr& k = C->k;
  B_out = Poly(k);
  Ds_out = Poly::constant(k->one());
  if (u.is_zero()) return RationalFunction(Poly(k));

  Poly N = u.num();
  const Poly& D = u.den();  // monic
  auto [P, N0] = N.divmod(D);

  RationalFunction witness{Poly(k)};
  if (D.deg() > 0) {
    Poly Dm = gcd_poly(D, D.derivative());
    Poly Ds = exact_div(D, Dm);
    if (Dm.deg() > 0) {
      Poly H = exact_div(Dm.derivative() * Ds, Dm);
      int dm = Dm.deg(), ds = Ds.deg(), n = D.deg();
      std::vector<std::vector<Scalar>> cols;
      auto to_col = [&](const Poly& q) {
        std::vector<Scalar> v;
        for (int e = 0; e < n; ++e) v.push_back(q.coeff(e));
        return v;
      };
      for (int i = 0; i < dm; ++i) {
        Poly xi = Poly::x(k).pow(i);
        cols.push_back(to_col(xi.derivative() * Ds - xi * H));
      }
      for (int i = 0; i < ds; ++i) cols.push_back(to_col(Poly::x(k).pow(i) * Dm));
      auto sol = solve_columns(cols, to_col(N0), k);
      if (!sol) {
        // solvable over any field of characteristic zero; in characteristic p
        // a denominator multiplicity divisible by p can genuinely block it
        if (k->characteristic() == 0) fail(Err::Internal, "pole-layer split must be solvable");
        fail(Err::CharPObstruction, "pole layers blocked by the characteristic");
      }
      std::vector<Scalar> ac(sol->begin(), sol->begin() + dm);
      std::vector<Scalar> bc(sol->begin() + dm, sol->end());
      witness = witness + RationalFunction(Poly(k, ac), Dm);
      B_out = Poly(k, bc);
      Ds_out = Ds;
    } else {
      B_out = N0;
      Ds_out = Ds;
    }
  }

  // polynomial part integrates termwise
  if (!P.is_zero()) {
    std::vector<Scalar> ip = {k->zero()};
    for (int e = 0; e <= P.deg(); ++e) {
      if (P.coeff(e).is_zero()) {
        ip.push_back(k->zero());
        continue;
      }
      ip.push_back(P.coeff(e) / nonzero_in_base(k, e + 1, "integrating the polynomial part"));
    }
    witness = witness + RationalFunction(Poly(k, ip));
  }
  return witness;
}

// Strip pole layers of W dx/y by exact differentials d(B y / Q^m); the final
// denominator is squarefree and coprime to f exactly when only simple
// non-branch poles survive (then the form is not of the second kind).
Poly reduce_odd(const CurvePtr& C, RationalFunction W, RationalFunction& wit_b) {
  const RingPtr& k = C->k;
  const Poly& f = C->f;
  Scalar half = k->from_int(2).inverse();

  for (;;) {
    Poly D = W.den();
    if (D.deg() == 0) break;
    auto layers = squarefree_decomposition(D);
    bool progressed = false;
    for (auto it = layers.rbegin(); it != layers.rend() && !progressed; ++it) {
      auto [Qa, j] = *it;
      Poly Qw = gcd_poly(Qa, f);
      if (Qw.deg() > 0) {
        // branch-locus layer: d(C y / Q^j) cancels A_j / Q^j, any j >= 1
        const Poly& Q = Qw;
        Poly fQ = exact_div(f, Q);
        Poly R = exact_div(D, Q.pow(j));
        Poly Aj = (W.num() * invert_mod(R % Q, Q)) % Q;
        Scalar s = nonzero_in_base(k, 1 - 2 * j, "a branch pole layer") * half;
        Poly Cp = (Aj * invert_mod((Q.derivative() * fQ) % Q * s, Q)) % Q;
        wit_b = wit_b + RationalFunction(Cp, Q.pow(j));
        Poly T = (Q.derivative() * fQ * Cp) * s +
                 Q * (Cp.derivative() * fQ + (fQ.derivative() * Cp) * half);
        W = W - RationalFunction(T, Q.pow(j));
        progressed = true;
      } else if (j >= 2) {
        // off-branch layer: d(B y / Q^(j-1)) lowers the multiplicity
        const Poly& Q = Qa;
        Poly R = exact_div(D, Q.pow(j));
        Poly Aj = (W.num() * invert_mod(R % Q, Q)) % Q;
        Scalar s = nonzero_in_base(k, 1 - j, "an off-branch pole layer");
        Poly Bp = (Aj * invert_mod((Q.derivative() * f) % Q * s, Q)) % Q;
        wit_b = wit_b + RationalFunction(Bp, Q.pow(j - 1));
        Poly T = (Q.derivative() * f * Bp) * s +
                 Q * (Bp.derivative() * f + (f.derivative() * Bp) * half);
        W = W - RationalFunction(T, Q.pow(j));
        progressed = true;
      }
    }
    if (!progressed) break;  // only simple off-branch poles remain
  }

  if (W.den().deg() > 0)
    fail(Err::NotSecondKind, "surviving simple poles carry nonzero residues");

  // infinity: d(x^j y) lowers the degree of the polynomial part
  Poly Wp = W.num();
  long g2 = 2l * C->genus;
  while (Wp.deg() >= g2) {
    long j = Wp.deg() - g2;
    Scalar den = f.lead() * nonzero_in_base(k, 2 * j + g2 + 1, "the pole layer at infinity") * half;
    Scalar c = Wp.lead() / den;
    wit_b = wit_b + RationalFunction(Poly::x(k).pow(j) * c);
    Poly sub = (Poly::x(k).pow(j) * f.derivative()) * (c * half);
    if (j > 0) sub = sub + (Poly::x(k).pow(j - 1) * f) * (c * k->from_int(j));
    Wp = Wp - sub;
  }
  return Wp;
}

// C(N/D dx) with everything rational in x: h = N D^(p-1) over D(x)^p = D(x^p),
// and only exponents p-1 mod p survive, with p-th roots on their coefficients
RationalFunction rational_cartier(const RingPtr& k, const RationalFunction& u, long p) {
  if (u.is_zero()) return u;
  Poly h = u.num() * u.den().pow(static_cast<unsigned long>(p - 1));
  std::vector<Scalar> out;
  for (int e = static_cast<int>(p) - 1; e <= h.deg(); e += static_cast<int>(p))
    out.push_back(h.coeff(e).pth_root());
  return RationalFunction(Poly(k, out), u.den());
}

long odd_characteristic(const CurvePtr& C, const char* what) {
  Int p = C->k->characteristic();
  if (p == 0) fail(Err::UnsupportedCharacteristic, std::string(what) + " needs characteristic p > 0");
  return p.get_si();
}

}  // namespace

std::vector<FFElt> holomorphic_basis(const CurvePtr& C) {
  std::vector<FFElt> out;
  for (int i = 0; i < C->genus; ++i) out.push_back(basis_multiplier(C, i));
  return out;
}

std::vector<FFElt> second_kind_basis(const CurvePtr& C) {
  std::vector<FFElt> out;
  for (int i = 0; i < 2 * C->genus; ++i) out.push_back(basis_multiplier(C, i));
  return out;
}

ReducedDifferential reduce_to_basis(const FFElt& g) {
  const CurvePtr& C = g.curve();
  const RingPtr& k = C->k;

  Poly B(k), Ds(k);
  RationalFunction wit_a = reduce_even(C, g.a(), B, Ds);

  std::vector<Scalar> coords;
  RationalFunction wit_b{Poly(k)};
  if (!C->is_p1 && !g.b().is_zero()) {
    Poly Wp = reduce_odd(C, g.b() * RationalFunction(C->f), wit_b);
    for (int i = 0; i < 2 * C->genus; ++i) coords.push_back(Wp.coeff(i));
  } else {
    for (int i = 0; i < 2 * C->genus; ++i) coords.push_back(k->zero());
  }

  if (!B.is_zero()) fail(Err::NotSecondKind, "surviving simple poles carry nonzero residues");
  return {coords, FFElt(C, wit_a, wit_b)};
}

DifferentialKind classify_differential(const FFElt& g) {
  if (g.is_zero() || poles_of_differential(g).empty()) return DifferentialKind::FirstKind;
  try {
    reduce_to_basis(g);
    return DifferentialKind::SecondKind;
  } catch (const error& e) {
    if (e.code == Err::NotSecondKind) return DifferentialKind::NotSecondKind;
    throw;
  }
}

FFElt cartier(const FFElt& g) {
  const CurvePtr& C = g.curve();
  long p = odd_characteristic(C, "the Cartier operator");
  RationalFunction ca = rational_cartier(C->k, g.a(), p);
  RationalFunction cb{Poly(C->k)};
  if (!g.b().is_zero()) {
    // b y dx = (b f^((1-p)/2)) y^p dx, and C pulls the p-th power out as y
    RationalFunction B = g.b() / RationalFunction(C->f.pow(static_cast<unsigned long>((p - 1) / 2)));
    cb = rational_cartier(C->k, B, p);
  }
  return FFElt(C, ca, cb);
}

FFElt cartier_inverse(const FFElt& g) {
  const CurvePtr& C = g.curve();
  long p = odd_characteristic(C, "the inverse Cartier map");
  FFElt xpow = FFElt::from_rational(C, RationalFunction(Poly::x(C->k).pow(static_cast<unsigned long>(p - 1))));
  return g.pow(p) * xpow;
}

}  // namespace adelic
