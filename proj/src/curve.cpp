#include "adelic/curve.hpp"

namespace adelic {

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)) {
  den_ = Poly::constant(num_.ring()->one());
}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(Err::DivisionByZero, "rational function with zero denominator");
  reduce();
}

void RationalFunction::reduce() {
  Poly g = gcd_poly(num_, den_);
  if (g.deg() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  Scalar lead_inv = den_.lead().inverse();
  num_ = num_ * lead_inv;
  den_ = den_ * lead_inv;
}

RationalFunction RationalFunction::constant(const Scalar& c) {
  return RationalFunction(Poly::constant(c));
}

RationalFunction RationalFunction::x(const RingPtr& ring) { return RationalFunction(Poly::x(ring)); }

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) fail(Err::DivisionByZero, "division by the zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Scalar RationalFunction::eval(const Scalar& at) const {
  Scalar d = den_.eval(at);
  if (d.is_zero()) fail(Err::DivisionByZero, "rational function has a pole at the evaluation point");
  return num_.eval(at) / d;
}

std::string RationalFunction::to_string(const std::string& var) const {
  if (is_poly()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

CurvePtr make_projective_line(const RingPtr& k) {
  if (k->kind != RingKind::Rationals && k->kind != RingKind::Prime)
    fail(Err::InvalidSpec, "base field must be Q or a prime field");
  if (k->characteristic() == 2) fail(Err::UnsupportedCharacteristic, "characteristic 2 is not supported");
  auto c = std::make_shared<CurveModel>();
  c->k = k;
  c->is_p1 = true;
  c->f = Poly(k);
  c->genus = 0;
  return c;
}

CurvePtr make_hyperelliptic(const Poly& f) {
  const RingPtr& k = f.ring();
  if (k->kind != RingKind::Rationals && k->kind != RingKind::Prime)
    fail(Err::InvalidSpec, "base field must be Q or a prime field");
  if (k->characteristic() == 2) fail(Err::UnsupportedCharacteristic, "characteristic 2 is not supported");
  if (f.deg() != 3 && f.deg() != 5) fail(Err::InvalidSpec, "hyperelliptic model needs deg f in {3, 5}");
  if (gcd_poly(f, f.derivative()).deg() != 0) fail(Err::InvalidSpec, "f must be square-free");
  auto c = std::make_shared<CurveModel>();
  c->k = k;
  c->is_p1 = false;
  c->f = f;
  c->genus = (f.deg() - 1) / 2;
  return c;
}

bool same_curve(const CurvePtr& A, const CurvePtr& B) {
  if (!A || !B) return false;
  if (A == B) return true;
  return A->is_p1 == B->is_p1 && A->k->same(*B->k) && A->f == B->f;
}

std::string CurveModel::to_string() const {
  if (is_p1) return "P1 over " + k->to_string();
  return "y^2 = " + f.to_string() + " over " + k->to_string();
}

FFElt::FFElt(CurvePtr curve, RationalFunction a, RationalFunction b)
    : curve_(std::move(curve)), a_(std::move(a)), b_(std::move(b)) {
  if (!curve_) fail(Err::Internal, "function field element without a curve");
  if (curve_->is_p1 && !b_.is_zero()) fail(Err::InvalidSpec, "the projective line has no y coordinate");
  if (!a_.ring()->same(*curve_->k) || !b_.ring()->same(*curve_->k))
    fail(Err::FieldMismatch, "coefficients must lie in the curve's base field");
}

FFElt FFElt::zero(const CurvePtr& c) {
  RationalFunction z{Poly(c->k)};
  return FFElt(c, z, z);
}

FFElt FFElt::one(const CurvePtr& c) { return constant(c, c->k->one()); }

FFElt FFElt::from_rational(const CurvePtr& c, RationalFunction a) {
  return FFElt(c, std::move(a), RationalFunction(Poly(c->k)));
}

FFElt FFElt::x(const CurvePtr& c) { return from_rational(c, RationalFunction::x(c->k)); }

FFElt FFElt::y(const CurvePtr& c) {
  if (c->is_p1) fail(Err::InvalidSpec, "the projective line has no y coordinate");
  return FFElt(c, RationalFunction(Poly(c->k)), RationalFunction(Poly::constant(c->k->one())));
}

FFElt FFElt::constant(const CurvePtr& c, const Scalar& s) {
  return from_rational(c, RationalFunction::constant(s));
}

FFElt FFElt::operator-() const { return FFElt(curve_, -a_, -b_); }

FFElt FFElt::operator+(const FFElt& o) const {
  if (!same_curve(curve_, o.curve_)) fail(Err::FieldMismatch, "elements on different curves");
  return FFElt(curve_, a_ + o.a_, b_ + o.b_);
}

FFElt FFElt::operator-(const FFElt& o) const { return *this + (-o); }

FFElt FFElt::operator*(const FFElt& o) const {
  if (!same_curve(curve_, o.curve_)) fail(Err::FieldMismatch, "elements on different curves");
  if (curve_->is_p1) return FFElt(curve_, a_ * o.a_, b_);
  RationalFunction f{curve_->f};
  return FFElt(curve_, a_ * o.a_ + b_ * o.b_ * f, a_ * o.b_ + o.a_ * b_);
}

FFElt FFElt::inverse() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero in the function field");
  if (curve_->is_p1)
    return from_rational(curve_, RationalFunction::constant(curve_->k->one()) / a_);
  // (a + b y)^{-1} = (a - b y) / (a^2 - b^2 f); the norm vanishes only at 0
  RationalFunction f{curve_->f};
  RationalFunction norm = a_ * a_ - b_ * b_ * f;
  if (norm.is_zero()) fail(Err::Internal, "vanishing norm for a nonzero element");
  return FFElt(curve_, a_ / norm, -(b_ / norm));
}

FFElt FFElt::operator/(const FFElt& o) const { return *this * o.inverse(); }

FFElt FFElt::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FFElt r = one(curve_);
  FFElt b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool FFElt::operator==(const FFElt& o) const {
  return same_curve(curve_, o.curve_) && a_ == o.a_ && b_ == o.b_;
}

FFElt FFElt::derivative() const {
  if (curve_->is_p1) return from_rational(curve_, a_.derivative());
  RationalFunction f{curve_->f};
  RationalFunction fprime{curve_->f.derivative()};
  RationalFunction two = RationalFunction::constant(curve_->k->from_int(2));
  return FFElt(curve_, a_.derivative(), b_.derivative() + b_ * fprime / (two * f));
}

std::string FFElt::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  std::string s = b_.to_string() + "*y";
  if (!a_.is_zero()) s = a_.to_string() + " + " + s;
  return s;
}

}  // namespace adelic
