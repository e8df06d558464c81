#include "adelic/place.hpp"

#include <algorithm>

#include "adelic/nfsquare.hpp"
#include "adelic/polyfactor.hpp"
#include "adelic/series.hpp"

namespace adelic {

namespace {

std::string center_id(const Poly& center) {
  std::string s = center.to_string("x");
  std::string out;
  for (char ch : s)
    if (ch != ' ') out.push_back(ch);
  return out;
}

// smallest root by the deterministic scalar order (canonical choice)
Scalar min_root(std::vector<Scalar> roots) {
  if (roots.empty()) fail(Err::Internal, "expected at least one root");
  Scalar best = roots[0];
  for (const auto& r : roots)
    if (Scalar::cmp(r, best) < 0) best = r;
  return best;
}

Place base_place(const CurvePtr& C, PlaceKind kind, const Poly& center) {
  Place P;
  P.curve = C;
  P.kind = kind;
  P.center = center;
  return P;
}

// evaluate a base-field polynomial at a point of an extension of its ring
Scalar eval_embedded(const Poly& f, const Scalar& at) {
  const RingPtr& M = at.ring();
  Scalar acc = M->zero();
  for (int i = f.deg(); i >= 0; --i) {
    Scalar ci = f.coeff(i);
    if (!ci.ring()->same(*M)) ci = M->embed(ci);
    acc = acc * at + ci;
  }
  return acc;
}

// residue field of a degree-d closed point of the x-line, with the image of x
void line_residue(const CurvePtr& C, const Poly& center, RingPtr& M, Scalar& x_image) {
  const RingPtr& k = C->k;
  int d = center.deg();
  if (d == 1) {
    M = k;
    x_image = -center.coeff(0);
    return;
  }
  if (k->kind == RingKind::Rationals) {
    M = Ring::extension(k, center.coeffs());
    x_image = M->make_ext({k->zero(), k->one()});
    return;
  }
  M = find_extension_field(k->p, d);
  x_image = min_root(roots_in(center, M));
}

}  // namespace

std::vector<Place> places_over(const CurvePtr& C, const Poly& center) {
  if (!C) fail(Err::Internal, "places_over without a curve");
  if (center.deg() < 1 || !center.lead().is_one())
    fail(Err::Internal, "place center must be monic of positive degree");
  if (!center.ring()->same(*C->k)) fail(Err::FieldMismatch, "center over the wrong field");

  std::vector<Place> out;
  if (C->is_p1) {
    Place P = base_place(C, PlaceKind::FiniteLine, center);
    line_residue(C, center, P.residue_field, P.x_image);
    P.y_image = P.residue_field->zero();
    P.degree = center.deg();
    P.id = center_id(center);
    out.push_back(std::move(P));
    return out;
  }

  const Poly& f = C->f;
  if ((f % center).is_zero()) {
    // center divides f: the unique point above is ramified, y = 0 there
    Place P = base_place(C, PlaceKind::Ramified, center);
    line_residue(C, center, P.residue_field, P.x_image);
    P.y_image = P.residue_field->zero();
    P.ram = 2;
    P.degree = center.deg();
    P.id = center_id(center) + ":r";
    out.push_back(std::move(P));
    return out;
  }

  const RingPtr& k = C->k;
  if (k->kind == RingKind::Prime) {
    RingPtr M;
    Scalar x_image = k->zero();
    line_residue(C, center, M, x_image);
    Scalar val = eval_embedded(f, x_image);
    Scalar root = M->zero();
    if (M->sqrt_in_field(val, root)) {
      Scalar r0 = Scalar::cmp(root, -root) <= 0 ? root : -root;
      for (int s = 0; s < 2; ++s) {
        Place P = base_place(C, PlaceKind::Split, center);
        P.residue_field = M;
        P.x_image = x_image;
        P.y_image = s == 0 ? r0 : -r0;
        P.degree = center.deg();
        P.id = center_id(center) + (s == 0 ? ":s0" : ":s1");
        out.push_back(std::move(P));
      }
      return out;
    }
    // inert: flatten into the degree-2d field
    RingPtr M2 = find_extension_field(k->p, 2 * center.deg());
    Scalar x2 = min_root(roots_in(center, M2));
    Scalar v2 = eval_embedded(f, x2);
    Scalar y2 = M2->zero();
    if (!M2->sqrt_in_field(v2, y2)) fail(Err::Internal, "non-square persists in the quadratic extension");
    if (Scalar::cmp(y2, -y2) > 0) y2 = -y2;
    Place P = base_place(C, PlaceKind::Inert, center);
    P.residue_field = M2;
    P.x_image = x2;
    P.y_image = y2;
    P.degree = 2 * center.deg();
    P.id = center_id(center) + ":i";
    out.push_back(std::move(P));
    return out;
  }

  // base field Q
  Poly c = f % center;
  auto sq = sqrt_in_number_field(center, c);
  if (sq) {
    RingPtr M;
    Scalar x_image = k->zero();
    line_residue(C, center, M, x_image);
    Scalar y0 = M->zero();
    if (center.deg() == 1) {
      y0 = sq->coeff(0);
    } else {
      std::vector<Scalar> cs;
      for (int i = 0; i < center.deg(); ++i) cs.push_back(sq->coeff(i));
      y0 = M->make_ext(cs);
    }
    Scalar r0 = Scalar::cmp(y0, -y0) <= 0 ? y0 : -y0;
    for (int s = 0; s < 2; ++s) {
      Place P = base_place(C, PlaceKind::Split, center);
      P.residue_field = M;
      P.x_image = x_image;
      P.y_image = s == 0 ? r0 : -r0;
      P.degree = center.deg();
      P.id = center_id(center) + (s == 0 ? ":s0" : ":s1");
      out.push_back(std::move(P));
    }
    return out;
  }
  if (center.deg() == 1) {
    // residue field Q, f(x0) a rational non-square: adjoin its square root
    Scalar x0 = -center.coeff(0);
    Scalar fx0 = f.eval(x0);
    RingPtr M = Ring::extension(k, {-fx0, k->zero(), k->one()});  // z^2 - f(x0)
    Place P = base_place(C, PlaceKind::Inert, center);
    P.residue_field = M;
    P.x_image = M->embed(x0);
    P.y_image = M->make_ext({k->zero(), k->one()});
    P.degree = 2;
    P.id = center_id(center) + ":i";
    out.push_back(std::move(P));
    return out;
  }
  FlatQuadratic flat = flatten_quadratic_over_q(center, c);
  Place P = base_place(C, PlaceKind::Inert, center);
  P.residue_field = flat.field;
  {
    std::vector<Scalar> xs, ys;
    for (int i = 0; i < 2 * center.deg(); ++i) xs.push_back(flat.x_embed.coeff(i));
    for (int i = 0; i < 2 * center.deg(); ++i) ys.push_back(flat.y_embed.coeff(i));
    P.x_image = flat.field->make_ext(xs);
    P.y_image = flat.field->make_ext(ys);
  }
  P.degree = 2 * center.deg();
  P.id = center_id(center) + ":i";
  out.push_back(std::move(P));
  return out;
}

std::vector<Place> infinite_places(const CurvePtr& C) {
  std::vector<Place> out;
  if (C->is_p1) {
    Place P = base_place(C, PlaceKind::InfiniteLine, Poly(C->k));
    P.residue_field = C->k;
    P.x_image = C->k->zero();
    P.y_image = C->k->zero();
    P.id = "inf";
    out.push_back(std::move(P));
  } else {
    Place P = base_place(C, PlaceKind::InfiniteOdd, Poly(C->k));
    P.residue_field = C->k;
    P.x_image = C->k->zero();
    P.y_image = C->k->zero();
    P.ram = 2;
    P.id = "inf:r";
    out.push_back(std::move(P));
  }
  return out;
}

namespace {

// multiplicity of the irreducible pi inside nonzero q
int multiplicity(const Poly& q, const Poly& pi) {
  int m = 0;
  Poly r = q;
  for (;;) {
    auto [quo, rem] = r.divmod(pi);
    if (!rem.is_zero()) return m;
    r = quo;
    ++m;
  }
}

// valuation of a nonzero rational function at the center (in units of v_pi)
int v_center(const RationalFunction& r, const Poly& pi) {
  return multiplicity(r.num(), pi) - multiplicity(r.den(), pi);
}

// deg den - deg num (valuation of a nonzero rational function at x = infinity)
int v_inf(const RationalFunction& r) { return r.den().deg() - r.num().deg(); }

}  // namespace

int dx_order(const Place& P) {
  switch (P.kind) {
    case PlaceKind::FiniteLine:
    case PlaceKind::Split:
    case PlaceKind::Inert: return 0;
    case PlaceKind::Ramified: return 1;
    case PlaceKind::InfiniteLine: return -2;
    case PlaceKind::InfiniteOdd: return -3;
  }
  return 0;
}

int order_at(const FFElt& g, const Place& P) {
  if (g.is_zero()) return ORDER_INF;
  const RationalFunction& a = g.a();
  const RationalFunction& b = g.b();
  switch (P.kind) {
    case PlaceKind::FiniteLine: return v_center(a, P.center);
    case PlaceKind::InfiniteLine: return v_inf(a);
    case PlaceKind::Inert: {
      int va = a.is_zero() ? ORDER_INF : v_center(a, P.center);
      int vb = b.is_zero() ? ORDER_INF : v_center(b, P.center);
      return std::min(va, vb);  // y is a unit; 1 and y stay independent mod P
    }
    case PlaceKind::Ramified: {
      int va = a.is_zero() ? ORDER_INF : 2 * v_center(a, P.center);
      int vb = b.is_zero() ? ORDER_INF : 2 * v_center(b, P.center) + 1;
      return std::min(va, vb);  // opposite parities: no cancellation
    }
    case PlaceKind::InfiniteOdd: {
      int deg_f = P.curve->f.deg();
      int va = a.is_zero() ? ORDER_INF : 2 * v_inf(a);
      int vb = b.is_zero() ? ORDER_INF : 2 * v_inf(b) - deg_f;
      return std::min(va, vb);  // v(y) = -deg f is odd: no cancellation
    }
    case PlaceKind::Split: {
      int va = a.is_zero() ? ORDER_INF : v_center(a, P.center);
      int vb = b.is_zero() ? ORDER_INF : v_center(b, P.center);
      if (va != vb) return std::min(va, vb);
      if (va == ORDER_INF) return ORDER_INF;
      // possible cancellation between a and b y: bound via the norm, expand
      RationalFunction norm = a * a - b * b * RationalFunction(P.curve->f);
      int upper = v_center(norm, P.center) - va;  // v(a+by) + v(a-by) = v(norm)
      LaurentSeries s = expand_element(g, P, upper + 1);
      return s.valuation();
    }
  }
  fail(Err::Internal, "unknown place kind");
}

int order_at_differential(const FFElt& g, const Place& P) {
  if (g.is_zero()) return ORDER_INF;
  return order_at(g, P) + dx_order(P);
}

std::vector<Place> places_over_denominator(const CurvePtr& C, const Poly& den, bool with_infinite) {
  std::vector<Place> out;
  if (den.deg() >= 1)
    for (const auto& [pi, mult] : factor(den)) {
      (void)mult;
      for (auto& P : places_over(C, pi)) out.push_back(std::move(P));
    }
  if (with_infinite)
    for (auto& P : infinite_places(C)) out.push_back(std::move(P));
  std::sort(out.begin(), out.end(), [](const Place& a, const Place& b) { return a.id < b.id; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<Place> pole_candidates(const FFElt& g) {
  Poly den = g.a().den() * g.b().den();
  // y itself only has poles above infinity, so candidates are denominator
  // centers plus the infinite places
  return places_over_denominator(g.curve(), den, true);
}

}  // namespace

std::vector<Place> poles_of_element(const FFElt& g) {
  std::vector<Place> out;
  if (g.is_zero()) return out;
  for (auto& P : pole_candidates(g))
    if (order_at(g, P) < 0) out.push_back(std::move(P));
  return out;
}

std::vector<Place> poles_of_differential(const FFElt& g) {
  std::vector<Place> out;
  if (g.is_zero()) return out;
  for (auto& P : pole_candidates(g))
    if (order_at_differential(g, P) < 0) out.push_back(std::move(P));
  return out;
}

}  // namespace adelic
