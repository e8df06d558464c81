#include "adelic/charp.hpp"

#include "adelic/polyfactor.hpp"

namespace adelic {

namespace {

long small_char(const RingPtr& k) {
  Int p = k->characteristic();
  if (p == 0) fail(Err::InvalidSpec, "a prime-characteristic base field is required");
  if (p == 2) fail(Err::UnsupportedCharacteristic, "characteristic two is not supported");
  return p.get_si();
}

}  // namespace

W2Curve lift_curve(const CurvePtr& C) {
  long p = small_char(C->k);
  RingPtr W = Ring::witt2(p);
  Poly ft = C->is_p1 ? Poly::constant(W->zero()) : lift_poly(W, C->f);
  return {C, W, ft};
}

Scalar lift_scalar(const RingPtr& W, const Scalar& a) { return W->from_int(a.int_value()); }

Scalar reduce_scalar(const RingPtr& k, const Scalar& a) { return k->from_int(a.int_value()); }

Scalar scalar_div_p(const RingPtr& k, const Scalar& a) {
  const Int& p = k->characteristic();
  Int v = a.int_value();
  if (v % p != 0) fail(Err::Internal, "division by p of a unit");
  return k->from_int(v / p);
}

Poly lift_poly(const RingPtr& W, const Poly& a) {
  std::vector<Scalar> cs;
  for (int i = 0; i <= a.deg(); ++i) cs.push_back(lift_scalar(W, a.coeff(i)));
  return Poly(W, cs);
}

Poly reduce_poly(const RingPtr& k, const Poly& a) {
  std::vector<Scalar> cs;
  for (int i = 0; i <= a.deg(); ++i) cs.push_back(reduce_scalar(k, a.coeff(i)));
  return Poly(k, cs);
}

Poly poly_div_p(const RingPtr& k, const Poly& a) {
  std::vector<Scalar> cs;
  for (int i = 0; i <= a.deg(); ++i) cs.push_back(scalar_div_p(k, a.coeff(i)));
  return Poly(k, cs);
}

LaurentSeries lift_series(const RingPtr& W, const LaurentSeries& s) {
  std::vector<Scalar> cs;
  for (int e = s.min_exp(); e < s.prec(); ++e) cs.push_back(lift_scalar(W, s.coeff(e)));
  return LaurentSeries(W, s.min_exp(), cs, s.prec());
}

LaurentSeries reduce_series(const RingPtr& k, const LaurentSeries& s) {
  std::vector<Scalar> cs;
  for (int e = s.min_exp(); e < s.prec(); ++e) cs.push_back(reduce_scalar(k, s.coeff(e)));
  return LaurentSeries(k, s.min_exp(), cs, s.prec());
}

LaurentSeries series_div_p(const RingPtr& k, const LaurentSeries& s) {
  std::vector<Scalar> cs;
  for (int e = s.min_exp(); e < s.prec(); ++e) cs.push_back(scalar_div_p(k, s.coeff(e)));
  return LaurentSeries(k, s.min_exp(), cs, s.prec());
}

LaurentSeries frobenius_series(const LaurentSeries& s) {
  const RingPtr& k = s.ring();
  if (k->kind != RingKind::Prime) fail(Err::InvalidSpec, "coefficientwise Frobenius needs a prime field");
  long p = small_char(k);
  if (s.is_zero()) return LaurentSeries::zero(k, p * (s.prec() - 1) + 1);
  int m = s.min_exp();
  std::vector<Scalar> cs(static_cast<size_t>(p * (s.prec() - 1 - m)) + 1, k->zero());
  for (int e = m; e < s.prec(); ++e) cs[static_cast<size_t>(p) * (e - m)] = s.coeff(e);
  return LaurentSeries(k, p * m, cs, p * (s.prec() - 1) + 1);
}

LaurentSeries compose_series(const LaurentSeries& outer, const LaurentSeries& inner) {
  if (!outer.is_zero() && outer.min_exp() < 0)
    fail(Err::InvalidSpec, "series composition needs a power series on the outside");
  if (!inner.is_zero() && inner.valuation() < 1)
    fail(Err::InvalidSpec, "series composition needs positive valuation on the inside");
  const RingPtr& R = outer.ring();
  int cap = inner.prec();
  if (outer.is_zero()) return LaurentSeries::zero(R, cap);
  LaurentSeries res = LaurentSeries::zero(R, cap);
  for (int e = outer.prec() - 1; e >= outer.min_exp(); --e)
    res = res * inner + LaurentSeries::constant(outer.coeff(e), cap);
  for (int i = 0; i < outer.min_exp(); ++i) res = res * inner;
  return res;
}

FFElt frobenius_function(const FFElt& g) { return g.pow(small_char(g.curve()->k)); }

GenericLift generic_lift(const CurvePtr& C) {
  long p = small_char(C->k);
  W2Curve WC = lift_curve(C);
  GenericLift L{WC, RationalFunction(Poly::constant(C->k->zero()))};
  if (C->is_p1) return L;
  Poly xp = Poly::x(WC.W).pow(static_cast<unsigned long>(p));
  Poly A = WC.f_tilde.eval_at_poly(xp);
  Poly B = WC.f_tilde.pow(static_cast<unsigned long>(p));
  Poly w = poly_div_p(C->k, A - B);
  Poly fp = C->f.pow(static_cast<unsigned long>(p));
  L.c = RationalFunction(w, fp + fp);
  return L;
}

LiftFamily standard_family(const CurvePtr& C) {
  LiftFamily F{generic_lift(C), {}, {}};
  if (C->is_p1) return F;
  for (const auto& [q, mult] : factor(C->f))
    for (const Place& pl : places_over(C, q))
      if (pl.kind == PlaceKind::Ramified && pl.residue_field->kind == RingKind::Prime)
        add_ramified_lift(F, pl, LaurentSeries::zero(C->k, 1));
  return F;
}

LiftFamily random_family(const CurvePtr& C, std::uint64_t seed) {
  long p = small_char(C->k);
  Rng rng(seed);
  LiftFamily F{generic_lift(C), {}, {}};
  const RingPtr& k = C->k;
  auto random_delta_series = [&]() {
    std::vector<Scalar> cs;
    for (int i = 0; i < 3; ++i) cs.push_back(k->from_int(rng.range(0, p - 1)));
    return LaurentSeries(k, 1, cs, 64);
  };
  if (!C->is_p1)
    for (const auto& [q, mult] : factor(C->f))
      for (const Place& pl : places_over(C, q))
        if (pl.kind == PlaceKind::Ramified && pl.residue_field->kind == RingKind::Prime)
          add_ramified_lift(F, pl, rng.coin() ? LaurentSeries::zero(k, 64) : random_delta_series());
  int wanted = 2;
  for (int attempt = 0; attempt < 32 && wanted > 0; ++attempt) {
    Scalar a = k->from_int(rng.range(0, p - 1));
    if (!C->is_p1 && C->f.eval(a).is_zero()) continue;  // branch value: place is ramified
    Poly center = Poly::x(k) - Poly::constant(a);
    Place pl = places_over(C, center).front();
    if (F.local.count(pl)) continue;
    Poly delta = Poly(k, {k->from_int(rng.range(0, p - 1)), k->from_int(rng.range(0, p - 1)),
                          k->from_int(rng.range(0, p - 1))});
    add_unramified_lift(F, pl, RationalFunction(delta));
    --wanted;
  }
  return F;
}

void add_unramified_lift(LiftFamily& F, const Place& P, const RationalFunction& delta) {
  if (P.ram != 1 || P.kind == PlaceKind::InfiniteLine || P.kind == PlaceKind::InfiniteOdd)
    fail(Err::InvalidSpec, "unramified local liftings live at finite unramified places");
  const CurvePtr& C = F.generic.lifted.C;
  if (!delta.is_zero() && order_at(FFElt::from_rational(C, delta), P) < 0)
    fail(Err::InvalidSpec, "the lifting offset must be regular at its place");
  F.local[P] = LocalLift{P, false, delta, LaurentSeries::zero(C->k, 1)};
}

void add_ramified_lift(LiftFamily& F, const Place& P, const LaurentSeries& delta) {
  if (P.kind != PlaceKind::Ramified)
    fail(Err::InvalidSpec, "ramified local liftings live at finite branch places");
  if (P.residue_field->kind != RingKind::Prime)
    fail(Err::UnsupportedInput, "branch places of higher degree are not supported by the lifting layer");
  if (!delta.is_zero() && delta.valuation() < 1)
    fail(Err::InvalidSpec, "the lifting offset must have positive valuation");
  const CurvePtr& C = F.generic.lifted.C;
  F.local[P] = LocalLift{P, true, RationalFunction(Poly::constant(C->k->zero())), delta};
}

LaurentSeries lift_x_series(const W2Curve& WC, const Place& P, int prec) {
  if (P.kind != PlaceKind::Ramified) fail(Err::InvalidSpec, "the x-series lift lives at branch places");
  const RingPtr& W = WC.W;
  LaurentSeries X0 = lift_series(W, coordinate_series(P, prec).x);
  LaurentSeries t2 = LaurentSeries::monomial(W->one(), 2, prec);
  LaurentSeries X = X0 - (eval_poly_at_series(WC.f_tilde, X0) - t2) *
                             eval_poly_at_series(WC.f_tilde.derivative(), X0).inverse();
  if (!(eval_poly_at_series(WC.f_tilde, X) - t2).is_zero())
    fail(Err::Internal, "the lifted coordinate misses the curve equation");
  return X;
}

namespace {

struct LocalPieces {
  LaurentSeries l10;  // the local lifting's (1,0)-component of psi(g dx)
  LaurentSeries h;    // the chain-level homotopy against the generic lifting
};

LocalPieces local_pieces(const FFElt& g, const GenericLift& G, const LocalLift& L, int precision) {
  const CurvePtr& C = G.lifted.C;
  const RingPtr& k = C->k;
  long p = small_char(k);
  if (!L.ramified) {
    FFElt gp = frobenius_function(g);
    FFElt xq = FFElt::x(C).pow(p - 1);
    FFElt del = FFElt::from_rational(C, L.delta);
    return {expand_differential(gp * (xq + del.derivative()), L.place, precision),
            expand_element(-(gp * del), L.place, precision)};
  }
  int prec2 = precision + 4 * static_cast<int>(p) + 8;
  const RingPtr& W = G.lifted.W;
  LaurentSeries X = lift_x_series(G.lifted, L.place, prec2);
  LaurentSeries del = L.delta_series.is_zero() ? LaurentSeries::zero(k, prec2) : L.delta_series;
  LaurentSeries tau = LaurentSeries::monomial(W->one(), static_cast<int>(p), prec2) +
                      lift_series(W, del) * LaurentSeries::constant(W->from_int(p), prec2);
  LaurentSeries Xtau = compose_series(X, tau);
  LaurentSeries A = X.pow(p) - Xtau;
  // two-digit inversion: the leading coefficient may be divisible by p even
  // when the series is a unit (the mod-p reduction decides invertibility)
  auto invert = [&](const LaurentSeries& s) -> LaurentSeries {
    LaurentSeries u0 = lift_series(W, reduce_series(k, s).inverse());
    LaurentSeries su = s * u0;
    LaurentSeries e = su - LaurentSeries::constant(W->one(), su.prec());
    return u0 - u0 * e;
  };
  auto evalrat = [&](const RationalFunction& r) -> LaurentSeries {
    if (r.is_zero()) return LaurentSeries::zero(W, Xtau.prec());
    LaurentSeries num = eval_poly_at_series(lift_poly(W, r.num()), Xtau);
    LaurentSeries den = eval_poly_at_series(lift_poly(W, r.den()), Xtau);
    return num * invert(den);
  };
  LaurentSeries geval = evalrat(g.a()) + evalrat(g.b()) * tau;
  LaurentSeries l10 = series_div_p(k, geval * Xtau.derivative());
  LaurentSeries G0 = expand_element(g, L.place, precision + 2);
  LaurentSeries h = series_div_p(k, lift_series(W, frobenius_series(G0)) * A);
  return {l10, h};
}

}  // namespace

Degree1 splitting_map(const FFElt& g, const LiftFamily& F, int precision) {
  const CurvePtr& C = g.curve();
  FFElt ci = cartier_inverse(g);
  Cochain a10 = Cochain::make(1, 0, C);
  a10.gen = ci;
  a10.def = ci;
  a10.excluded = F.excluded;
  Cochain a01 = Cochain::make(0, 1, C);
  a01.excluded = F.excluded;
  for (const auto& [pl, L] : F.local) {
    if (F.excluded.count(pl)) fail(Err::InvalidSpec, "local lifting at an excluded place");
    LocalPieces pc = local_pieces(g, F.generic, L, precision);
    a10.exc.emplace(pl, pc.l10);
    a01.exc.emplace(pl, pc.h);
  }
  return {a10, a01};
}

Degree1 canonical_cocycle(const FFElt& g, const LiftFamily& F, int precision) {
  (void)precision;
  const CurvePtr& C = g.curve();
  FFElt ci = cartier_inverse(g);
  Cochain a10 = Cochain::make(1, 0, C);
  a10.gen = ci;
  a10.def = ci;
  a10.excluded = F.excluded;
  Cochain a01 = Cochain::make(0, 1, C);
  a01.excluded = F.excluded;
  return {a10, a01};
}

Cochain homotopy_witness(const FFElt& g, const LiftFamily& F, int precision) {
  Cochain u = Cochain::make(0, 0, g.curve());
  u.excluded = F.excluded;
  for (const auto& [pl, L] : F.local)
    u.exc.emplace(pl, -local_pieces(g, F.generic, L, precision).h);
  return u;
}

namespace {

// the unramified y-correction exponent: phi_x(y) = y^p (1 + p e_x)
RationalFunction local_y_exponent(const GenericLift& G, const RationalFunction& delta) {
  const CurvePtr& C = G.lifted.C;
  long p = small_char(C->k);
  Poly xp = Poly::x(C->k).pow(static_cast<unsigned long>(p));
  Poly fpx = C->f.derivative().eval_at_poly(xp);
  Poly fp = C->f.pow(static_cast<unsigned long>(p));
  return G.c + delta * RationalFunction(fpx, fp + fp);
}

FFElt y_correction_elt(const CurvePtr& C, const RationalFunction& r) {
  long p = small_char(C->k);
  return FFElt::y(C).pow(p) * FFElt::from_rational(C, r);
}

}  // namespace

FFElt canonical_dy_multiplier(const CurvePtr& C) {
  if (C->is_p1) fail(Err::InvalidSpec, "the line has no y-coordinate");
  long p = small_char(C->k);
  return FFElt::y(C).pow(p - 2) * FFElt::from_rational(C, RationalFunction(C->f.derivative())) *
         FFElt::constant(C, C->k->from_int(2).inverse());
}

Degree1 splitting_map_dy(const LiftFamily& F, int precision) {
  const CurvePtr& C = F.generic.lifted.C;
  long p = small_char(C->k);
  FFElt base = canonical_dy_multiplier(C);
  FFElt M = base + y_correction_elt(C, F.generic.c).derivative();

  Cochain a10 = Cochain::make(1, 0, C);
  a10.gen = M;
  a10.def = M;
  a10.excluded = F.excluded;
  Cochain a01 = Cochain::make(0, 1, C);
  a01.excluded = F.excluded;
  for (const auto& [pl, L] : F.local) {
    if (F.excluded.count(pl)) fail(Err::InvalidSpec, "local lifting at an excluded place");
    if (!L.ramified) {
      FFElt ype = y_correction_elt(C, local_y_exponent(F.generic, L.delta));
      FFElt Mx = base + ype.derivative();
      a10.exc.emplace(pl, expand_differential(Mx, pl, precision));
      a01.exc.emplace(pl, expand_element(y_correction_elt(C, F.generic.c) - ype, pl, precision));
    } else {
      LaurentSeries del =
          L.delta_series.is_zero() ? LaurentSeries::zero(C->k, precision) : L.delta_series;
      LaurentSeries l10 =
          LaurentSeries::monomial(C->k->one(), static_cast<int>(p) - 1, precision) + del.derivative();
      a10.exc.emplace(pl, l10);
      a01.exc.emplace(pl, expand_element(y_correction_elt(C, F.generic.c), pl, precision) - del);
    }
  }
  return {a10, a01};
}

Cochain homotopy_adele_y(const LiftFamily& F, int precision) {
  const CurvePtr& C = F.generic.lifted.C;
  if (C->is_p1) fail(Err::InvalidSpec, "the line has no y-coordinate");
  Cochain u = Cochain::make(0, 0, C);
  u.excluded = F.excluded;
  FFElt ypc = y_correction_elt(C, F.generic.c);
  u.gen = ypc;
  u.def = ypc;
  for (const auto& [pl, L] : F.local) {
    if (!L.ramified) {
      u.exc.emplace(pl, expand_element(y_correction_elt(C, local_y_exponent(F.generic, L.delta)),
                                       pl, precision));
    } else {
      LaurentSeries del =
          L.delta_series.is_zero() ? LaurentSeries::zero(C->k, precision) : L.delta_series;
      u.exc.emplace(pl, del);
    }
  }
  return u;
}

namespace {

bool passes_validation(const Degree1& v) {
  try {
    validate_cochain(v.a10);
    validate_cochain(v.a01);
    return true;
  } catch (const error&) {
    return false;
  }
}

// pairing a split chain against the basis cocycles multiplies its generic
// part into their antiderivative slots, so those windows must reach past the
// generic poles there
int pairing_room(const FFElt& g, const CurvePtr& C, int precision) {
  int need = precision;
  if (C->genus == 0) return need;
  FFElt ci = cartier_inverse(g);
  for (const FFElt& b : second_kind_basis(C))
    for (const Place& pl : poles_of_differential(b))
      need = std::max(need, 2 - order_at_differential(ci, pl));
  return need;
}

}  // namespace

std::vector<Degree1> basis_cocycles(const CurvePtr& C, int precision) {
  std::vector<Degree1> out;
  if (C->genus == 0) return out;
  for (const FFElt& b : second_kind_basis(C)) {
    try {
      out.push_back(cocycle_from_second_kind(b, precision));
    } catch (const error&) {
    }
  }
  return out;
}

DecompositionReport verify_decomposition(const FFElt& g, const LiftFamily& F, int precision) {
  const CurvePtr& C = g.curve();
  if (!F.excluded.empty())
    fail(Err::InvalidSpec, "class comparison needs a family with no excluded places");

  Degree1 psi = splitting_map(g, F, precision);
  Degree1 canon = canonical_cocycle(g, F, precision);
  Cochain u = homotopy_witness(g, F, precision);

  DecompositionReport rep;
  rep.closed = cochain_is_zero(total_d1(psi, precision), precision);
  rep.valid = passes_validation(psi);
  Degree1 diff = add(psi, negate(canon), precision);
  Degree1 du = total_d0(u, precision);
  Degree1 gap = add(diff, negate(du), precision);
  rep.exact_homotopy =
      cochain_is_zero(gap.a10, precision) && cochain_is_zero(gap.a01, precision);

  int room = pairing_room(g, C, precision);
  std::vector<Degree1> basis = basis_cocycles(C, room);
  if (!basis.empty()) {
    Degree1 wide = room == precision ? psi : splitting_map(g, F, room);
    for (const Degree1& cb : basis) rep.pairings.push_back(pairing(wide, cb, room));
  }
  return rep;
}

QuasiIsoReport verify_quasi_iso(const std::vector<FFElt>& forms, const LiftFamily& A,
                                const LiftFamily& B, int precision) {
  if (!A.excluded.empty() || !B.excluded.empty())
    fail(Err::InvalidSpec, "lifting independence needs families with no excluded places");
  const CurvePtr& C = A.generic.lifted.C;
  if (!same_curve(C, B.generic.lifted.C)) fail(Err::InvalidSpec, "families live on different curves");

  std::vector<Degree1> basis = basis_cocycles(C, precision);
  QuasiIsoReport rep;
  rep.ok = true;
  for (const FFElt& g : forms) {
    QuasiIsoFormReport fr;
    Degree1 psi_a = splitting_map(g, A, precision);
    Degree1 psi_b = splitting_map(g, B, precision);
    Degree1 canon = canonical_cocycle(g, A, precision);
    fr.closed_a = cochain_is_zero(total_d1(psi_a, precision), precision);
    fr.closed_b = cochain_is_zero(total_d1(psi_b, precision), precision);
    auto exact_against = [&](const Degree1& psi, const LiftFamily& F) {
      Degree1 gap = add(add(psi, negate(canon), precision),
                        negate(total_d0(homotopy_witness(g, F, precision), precision)), precision);
      return cochain_is_zero(gap.a10, precision) && cochain_is_zero(gap.a01, precision);
    };
    fr.witness_a = exact_against(psi_a, A);
    fr.witness_b = exact_against(psi_b, B);
    // the generic parts are the same inverse Cartier image, so the difference
    // is carried by the family places alone and pairs within any window
    Degree1 gap = add(psi_a, negate(psi_b), precision);
    fr.agree = true;
    for (const Degree1& cb : basis) {
      fr.pair_gap.push_back(pairing(gap, cb, precision));
      fr.agree = fr.agree && fr.pair_gap.back().is_zero();
    }
    rep.ok = rep.ok && fr.closed_a && fr.closed_b && fr.witness_a && fr.witness_b && fr.agree;
    rep.forms.push_back(std::move(fr));
  }
  return rep;
}

}  // namespace adelic
