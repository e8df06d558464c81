#include "adelic/adele.hpp"

namespace adelic {

namespace {

void require_shape(const Cochain& u, int p, int q, const char* what) {
  if (u.p != p || u.q != q) fail(Err::InvalidSpec, std::string(what) + ": wrong bidegree");
}

void require_compatible(const Cochain& a, const Cochain& b) {
  if (a.p != b.p || a.q != b.q || !same_curve(a.curve, b.curve))
    fail(Err::InvalidSpec, "cochains live in different slots");
}

LaurentSeries expand_by_p(int p, const FFElt& g, const Place& P, int prec) {
  if (g.is_zero()) return LaurentSeries::zero(P.residue_field, prec);
  return p == 0 ? expand_element(g, P, prec) : expand_differential(g, P, prec);
}

}  // namespace

Cochain Cochain::make(int p, int q, const CurvePtr& C) {
  Cochain u;
  u.p = p;
  u.q = q;
  u.curve = C;
  u.gen = FFElt::zero(C);
  u.def = FFElt::zero(C);
  return u;
}

LaurentSeries component_at(const Cochain& u, const Place& P, int precision) {
  auto it = u.exc.find(P);
  if (it != u.exc.end()) return it->second;
  return expand_by_p(u.p, u.def, P, precision);
}

void validate_cochain(const Cochain& u) {
  if (!u.curve) fail(Err::InvalidSpec, "cochain without a curve");
  if (u.p < 0 || u.p > 1 || u.q < 0 || u.q > 1) fail(Err::InvalidSpec, "bidegree out of range");
  for (const auto& [pl, s] : u.exc) {
    if (!same_curve(pl.curve, u.curve)) fail(Err::InvalidSpec, "exception on a foreign curve");
    if (!s.ring()->same(*pl.residue_field))
      fail(Err::InvalidSpec, "exception series in the wrong residue field");
  }
  if (u.q == 1) {
    if (!u.gen.is_zero()) fail(Err::InvalidSpec, "chain-level cochain with a generic component");
    return;
  }
  // q = 0: point components must be integral and actually claimed
  for (const auto& [pl, s] : u.exc) {
    if (u.excluded.count(pl)) fail(Err::InvalidSpec, "exception at an excluded place");
    if (!s.is_zero() && s.min_exp() < 0)
      fail(Err::InvalidSpec, "point component with a pole at " + pl.id);
  }
  auto poles = u.p == 0 ? poles_of_element(u.def) : poles_of_differential(u.def);
  for (const Place& pl : poles)
    if (!u.exc.count(pl) && !u.excluded.count(pl))
      fail(Err::InvalidSpec, "default has an uncovered pole at " + pl.id);
}

Cochain d_prime(const Cochain& u) {
  if (u.p != 0) fail(Err::InvalidSpec, "d' needs a function-degree cochain");
  Cochain r = Cochain::make(1, u.q, u.curve);
  r.excluded = u.excluded;
  bool flip = u.q == 1;  // Koszul sign (-1)^q
  auto sgn = [&](const FFElt& g) { return flip ? -g : g; };
  r.gen = sgn(u.gen.derivative());
  r.def = sgn(u.def.derivative());
  for (const auto& [pl, s] : u.exc) {
    LaurentSeries ds = s.derivative();
    r.exc.emplace(pl, flip ? -ds : ds);
  }
  return r;
}

Cochain d_second(const Cochain& u, int precision) {
  if (u.q != 0) fail(Err::InvalidSpec, "d'' needs a point-level cochain");
  Cochain r = Cochain::make(u.p, 1, u.curve);
  r.excluded = u.excluded;
  r.def = u.gen - u.def;
  for (const auto& [pl, s] : u.exc)
    r.exc.emplace(pl, expand_by_p(u.p, u.gen, pl, std::max(s.prec(), precision)) - s);
  return r;
}

Degree1 total_d0(const Cochain& u00, int precision) {
  require_shape(u00, 0, 0, "the total differential on degree 0");
  return {d_prime(u00), d_second(u00, precision)};
}

Cochain total_d1(const Degree1& u, int precision) {
  require_shape(u.a10, 1, 0, "the total differential on degree 1");
  require_shape(u.a01, 0, 1, "the total differential on degree 1");
  return add(d_second(u.a10, precision), d_prime(u.a01), precision);
}

bool cochain_is_zero(const Cochain& u, int precision) {
  (void)precision;
  if (!u.gen.is_zero() || !u.def.is_zero()) return false;
  for (const auto& [pl, s] : u.exc) {
    if (u.excluded.count(pl)) continue;
    if (!s.is_zero()) return false;
  }
  return true;
}

Cochain add(const Cochain& a, const Cochain& b, int precision) {
  (void)precision;
  require_compatible(a, b);
  Cochain r = Cochain::make(a.p, a.q, a.curve);
  r.gen = a.gen + b.gen;
  r.def = a.def + b.def;
  r.excluded = a.excluded;
  r.excluded.insert(b.excluded.begin(), b.excluded.end());
  for (const auto& [pl, s] : a.exc) {
    auto it = b.exc.find(pl);
    if (it != b.exc.end())
      r.exc.emplace(pl, s + it->second);
    else
      r.exc.emplace(pl, s + expand_by_p(b.p, b.def, pl, s.prec()));
  }
  for (const auto& [pl, s] : b.exc)
    if (!a.exc.count(pl)) r.exc.emplace(pl, expand_by_p(a.p, a.def, pl, s.prec()) + s);
  return r;
}

Cochain negate(const Cochain& a) {
  Cochain r = a;
  r.gen = -a.gen;
  r.def = -a.def;
  for (auto& [pl, s] : r.exc) s = -s;
  return r;
}

Degree1 add(const Degree1& a, const Degree1& b, int precision) {
  return {add(a.a10, b.a10, precision), add(a.a01, b.a01, precision)};
}

Degree1 negate(const Degree1& a) { return {negate(a.a10), negate(a.a01)}; }

Cochain cup(const Degree1& u, const Degree1& v, int precision) {
  require_shape(u.a10, 1, 0, "cup");
  require_shape(u.a01, 0, 1, "cup");
  require_shape(v.a10, 1, 0, "cup");
  require_shape(v.a01, 0, 1, "cup");
  const CurvePtr& C = u.a10.curve;

  // (1,0) x (0,1): front is the generic component of u.a10, sign -1
  Cochain t1 = Cochain::make(1, 1, C);
  t1.def = u.a10.gen * v.a01.def;
  for (const auto& [pl, s] : v.a01.exc)
    t1.exc.emplace(pl, expand_by_p(1, u.a10.gen, pl, precision) * s);

  // (0,1) x (1,0): back is the point component of v.a10, sign +1
  Cochain t2 = Cochain::make(1, 1, C);
  t2.def = u.a01.def * v.a10.def;
  for (const auto& [pl, s] : u.a01.exc)
    t2.exc.emplace(pl, s * component_at(v.a10, pl, precision));
  for (const auto& [pl, s] : v.a10.exc)
    if (!u.a01.exc.count(pl)) t2.exc.emplace(pl, component_at(u.a01, pl, precision) * s);

  Cochain r = add(negate(t1), t2, precision);
  r.excluded = u.a10.excluded;
  for (const auto& c : {u.a01.excluded, v.a10.excluded, v.a01.excluded})
    r.excluded.insert(c.begin(), c.end());
  return r;
}

Cochain cup00(const Cochain& u, const Cochain& v, int precision) {
  require_shape(u, 0, 0, "cup00");
  require_shape(v, 0, 0, "cup00");
  Cochain r = Cochain::make(0, 0, u.curve);
  r.gen = u.gen * v.gen;
  r.def = u.def * v.def;
  r.excluded = u.excluded;
  r.excluded.insert(v.excluded.begin(), v.excluded.end());
  for (const auto& [pl, s] : u.exc) r.exc.emplace(pl, s * component_at(v, pl, s.prec()));
  for (const auto& [pl, s] : v.exc)
    if (!u.exc.count(pl)) r.exc.emplace(pl, component_at(u, pl, s.prec()) * s);
  (void)precision;
  return r;
}

Degree1 cup(const Cochain& u00, const Degree1& v, int precision) {
  require_shape(u00, 0, 0, "cup");
  // (0,0) x (1,0) stays point-level and multiplies componentwise
  Cochain a10 = Cochain::make(1, 0, u00.curve);
  a10.gen = u00.gen * v.a10.gen;
  a10.def = u00.def * v.a10.def;
  for (const auto& [pl, s] : u00.exc) a10.exc.emplace(pl, s * component_at(v.a10, pl, precision));
  for (const auto& [pl, s] : v.a10.exc)
    if (!u00.exc.count(pl)) a10.exc.emplace(pl, component_at(u00, pl, precision) * s);
  // (0,0) x (0,1): front of u00 is its generic component
  Cochain a01 = Cochain::make(0, 1, u00.curve);
  a01.def = u00.gen * v.a01.def;
  for (const auto& [pl, s] : v.a01.exc)
    a01.exc.emplace(pl, expand_by_p(0, u00.gen, pl, precision) * s);
  for (Cochain* c : {&a10, &a01}) {
    c->excluded = u00.excluded;
    c->excluded.insert(v.a10.excluded.begin(), v.a10.excluded.end());
    c->excluded.insert(v.a01.excluded.begin(), v.a01.excluded.end());
  }
  return {a10, a01};
}

Degree1 cup(const Degree1& v, const Cochain& u00, int precision) {
  require_shape(u00, 0, 0, "cup");
  Cochain a10 = Cochain::make(1, 0, u00.curve);
  a10.gen = v.a10.gen * u00.gen;
  a10.def = v.a10.def * u00.def;
  for (const auto& [pl, s] : v.a10.exc) a10.exc.emplace(pl, s * component_at(u00, pl, precision));
  for (const auto& [pl, s] : u00.exc)
    if (!v.a10.exc.count(pl)) a10.exc.emplace(pl, component_at(v.a10, pl, precision) * s);
  // (0,1) x (0,0): back of u00 is its point component
  Cochain a01 = Cochain::make(0, 1, u00.curve);
  a01.def = v.a01.def * u00.def;
  for (const auto& [pl, s] : v.a01.exc) a01.exc.emplace(pl, s * component_at(u00, pl, precision));
  for (const auto& [pl, s] : u00.exc)
    if (!v.a01.exc.count(pl)) a01.exc.emplace(pl, component_at(v.a01, pl, precision) * s);
  for (Cochain* c : {&a10, &a01}) {
    c->excluded = u00.excluded;
    c->excluded.insert(v.a10.excluded.begin(), v.a10.excluded.end());
    c->excluded.insert(v.a01.excluded.begin(), v.a01.excluded.end());
  }
  return {a10, a01};
}

Cochain cup(const Cochain& a, const Cochain& b, int precision) {
  if (a.p == 0 && a.q == 0 && b.p == 0 && b.q == 0) return cup00(a, b, precision);
  if (a.p == 0 && a.q == 0 && b.p == 1 && b.q == 1) {
    // front of a is its generic component
    Cochain r = Cochain::make(1, 1, a.curve);
    r.def = a.gen * b.def;
    for (const auto& [pl, s] : b.exc) r.exc.emplace(pl, expand_by_p(0, a.gen, pl, precision) * s);
    r.excluded = a.excluded;
    r.excluded.insert(b.excluded.begin(), b.excluded.end());
    return r;
  }
  if (a.p == 1 && a.q == 1 && b.p == 0 && b.q == 0) {
    // back of b is its point component
    Cochain r = Cochain::make(1, 1, a.curve);
    r.def = a.def * b.def;
    for (const auto& [pl, s] : a.exc) r.exc.emplace(pl, s * component_at(b, pl, precision));
    for (const auto& [pl, s] : b.exc)
      if (!a.exc.count(pl)) r.exc.emplace(pl, component_at(a, pl, precision) * s);
    r.excluded = a.excluded;
    r.excluded.insert(b.excluded.begin(), b.excluded.end());
    return r;
  }
  fail(Err::InvalidSpec, "cup: unsupported bidegree combination");
}

Scalar integrate(const Cochain& u) {
  require_shape(u, 1, 1, "integrate");
  if (!u.excluded.empty()) fail(Err::InvalidSpec, "cannot integrate a partial section");
  Scalar total = u.curve->k->zero();
  for (const auto& [pl, s] : u.exc) total = total + s.coeff(-1).trace_to_base();
  if (!u.def.is_zero())
    for (const Place& pl : poles_of_differential(u.def))
      if (!u.exc.count(pl)) total = total + residue_at_place(u.def, pl);
  return total;
}

Scalar pairing(const Degree1& u, const Degree1& v, int precision) {
  return integrate(cup(u, v, precision));
}

Degree1 cocycle_from_second_kind(const FFElt& g, int precision) {
  return cocycle_with_slots(g, poles_of_differential(g), precision);
}

Degree1 cocycle_with_slots(const FFElt& g, const std::vector<Place>& S, int precision) {
  const CurvePtr& C = g.curve();
  {
    std::set<Place> s_set(S.begin(), S.end());
    for (const Place& pl : poles_of_differential(g))
      if (!s_set.count(pl)) fail(Err::InvalidSpec, "slot set misses the pole at " + pl.id);
  }
  Cochain a10 = Cochain::make(1, 0, C);
  a10.gen = g;
  a10.def = g;
  Cochain a01 = Cochain::make(0, 1, C);
  for (const Place& pl : S) {
    a10.exc.emplace(pl, LaurentSeries::zero(pl.residue_field, precision));
    a01.exc.emplace(pl, expand_differential(g, pl, precision).antiderivative());
  }
  return {a10, a01};
}

Cochain coboundary_witness_01(const Cochain& beta, int precision) {
  require_shape(beta, 0, 1, "coboundary witness");
  const CurvePtr& C = beta.curve;


  auto constant_of = [&](const FFElt& g) -> Scalar {
    if (!g.derivative().is_zero()) fail(Err::NotClosed, "default chain component is not closed");
    if (!g.b().is_zero() || g.a().den().deg() > 0 || g.a().num().deg() > 0)
      fail(Err::UnsupportedInput, "closed non-constant chain component");
    return g.a().num().coeff(0);
  };
  Scalar c = constant_of(beta.def);

  Cochain u = Cochain::make(0, 0, C);
  u.def = FFElt::constant(C, -c);
  u.excluded = beta.excluded;
  for (const auto& [pl, s] : beta.exc) {
    if (!s.derivative().is_zero()) fail(Err::NotClosed, "chain component is not closed at " + pl.id);
    Scalar cx = pl.residue_field->zero();
    for (int e = s.min_exp(); e < s.prec(); ++e) {
      if (e == 0) {
        cx = s.coeff(0);
        continue;
      }
      if (!s.coeff(e).is_zero())
        fail(Err::UnsupportedInput, "closed but non-constant component at " + pl.id);
    }
    u.exc.emplace(pl, LaurentSeries::constant(-cx, std::max(s.prec(), 1)));
  }
  (void)precision;
  return u;
}

}  // namespace adelic
