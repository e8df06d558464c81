#include "adelic/series.hpp"

#include <sstream>

namespace adelic {

LaurentSeries::LaurentSeries(RingPtr ring, int min_exp, std::vector<Scalar> coeffs, int prec)
    : ring_(std::move(ring)), min_(min_exp), prec_(prec), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) > prec_ - min_) fail(Err::Internal, "series coefficients exceed the window");
  for (const auto& s : c_)
    if (!s.ring()->same(*ring_)) fail(Err::FieldMismatch, "series coefficient outside ring");
  c_.resize(static_cast<size_t>(prec_ - min_), ring_->zero());
  normalize();
}

void LaurentSeries::normalize() {
  size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    min_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) min_ = prec_;
}

LaurentSeries LaurentSeries::zero(const RingPtr& ring, int prec) {
  return LaurentSeries(ring, prec, {}, prec);
}

LaurentSeries LaurentSeries::constant(const Scalar& c, int prec) { return monomial(c, 0, prec); }

LaurentSeries LaurentSeries::monomial(const Scalar& c, int exp, int prec) {
  if (c.is_zero() || exp >= prec) return zero(c.ring(), prec);
  return LaurentSeries(c.ring(), exp, {c}, prec);
}

Scalar LaurentSeries::coeff(int e) const {
  if (e >= prec_)
    fail(Err::InsufficientPrecision,
         "coefficient of t^" + std::to_string(e) + " unknown at precision " + std::to_string(prec_));
  if (e < min_ || e - min_ >= static_cast<int>(c_.size())) return ring_->zero();
  return c_[e - min_];
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r = *this;
  for (auto& s : r.c_) s = -s;
  return r;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  if (!ring_->same(*o.ring_)) fail(Err::FieldMismatch, "series add: ring mismatch");
  int prec = std::min(prec_, o.prec_);
  int lo = std::min(min_, o.min_);
  if (lo >= prec) return zero(ring_, prec);
  std::vector<Scalar> cs(static_cast<size_t>(prec - lo), ring_->zero());
  for (int e = lo; e < prec; ++e) {
    Scalar v = ring_->zero();
    if (e >= min_ && e - min_ < static_cast<int>(c_.size())) v = v + c_[e - min_];
    if (e >= o.min_ && e - o.min_ < static_cast<int>(o.c_.size())) v = v + o.c_[e - o.min_];
    cs[e - lo] = v;
  }
  return LaurentSeries(ring_, lo, std::move(cs), prec);
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  if (!ring_->same(*o.ring_)) fail(Err::FieldMismatch, "series mul: ring mismatch");
  // known window of the product: min combines, precision limited by the
  // other factor's valuation floor
  int prec = std::min(prec_ + o.min_, o.prec_ + min_);
  int lo = min_ + o.min_;
  if (is_zero() || o.is_zero()) return zero(ring_, prec);
  std::vector<Scalar> cs(static_cast<size_t>(prec - lo), ring_->zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int e = min_ + static_cast<int>(i) + o.min_ + static_cast<int>(j);
      if (e >= prec) break;
      cs[e - lo] = cs[e - lo] + c_[i] * o.c_[j];
    }
  }
  return LaurentSeries(ring_, lo, std::move(cs), prec);
}

LaurentSeries LaurentSeries::operator*(const Scalar& s) const {
  LaurentSeries r = *this;
  for (auto& v : r.c_) v = v * s;
  r.normalize();
  return r;
}

LaurentSeries LaurentSeries::inverse() const {
  // a nonzero function whose expansion window shows only zeros needs a wider
  // window, so report a precision problem (callers retry), not division by zero
  if (is_zero()) fail(Err::InsufficientPrecision, "inverse of a series with no known nonzero coefficient");
  int v = min_;  // after normalize, c_[0] != 0
  int n = prec_ - v;            // known terms of the unit part
  int out_prec = prec_ - 2 * v; // window of the inverse
  Scalar lead_inv = c_[0].inverse();
  std::vector<Scalar> b(static_cast<size_t>(n), ring_->zero());
  b[0] = lead_inv;
  for (int j = 1; j < n; ++j) {
    Scalar acc = ring_->zero();
    for (int i = 1; i <= j && i < static_cast<int>(c_.size()); ++i) acc = acc + c_[i] * b[j - i];
    b[j] = -(acc * lead_inv);
  }
  return LaurentSeries(ring_, -v, std::move(b), out_prec);
}

LaurentSeries LaurentSeries::operator/(const LaurentSeries& o) const { return *this * o.inverse(); }

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  if (!ring_->same(*o.ring_)) return false;
  if (min_ != o.min_ || prec_ != o.prec_ || c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

LaurentSeries LaurentSeries::truncate(int new_prec) const {
  if (new_prec > prec_) fail(Err::InsufficientPrecision, "cannot extend a series by truncation");
  if (new_prec <= min_) return zero(ring_, new_prec);
  std::vector<Scalar> cs(c_.begin(), c_.begin() + std::min(c_.size(), static_cast<size_t>(new_prec - min_)));
  return LaurentSeries(ring_, min_, std::move(cs), new_prec);
}

LaurentSeries LaurentSeries::shift(int k) const {
  LaurentSeries r = *this;
  r.min_ += k;
  r.prec_ += k;
  return r;
}

LaurentSeries LaurentSeries::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  LaurentSeries r = constant(ring_->one(), prec_);
  if (e == 0) return r;
  LaurentSeries b = *this;
  for (;;) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e == 0) break;
    b = b * b;
  }
  return r;
}

LaurentSeries LaurentSeries::derivative() const {
  std::vector<Scalar> cs;
  for (size_t i = 0; i < c_.size(); ++i) {
    int e = min_ + static_cast<int>(i);
    cs.push_back(c_[i] * ring_->from_int(e));
  }
  return LaurentSeries(ring_, min_ - 1, std::move(cs), prec_ - 1);
}

LaurentSeries LaurentSeries::antiderivative() const {
  std::vector<Scalar> cs;
  const Int p = ring_->characteristic();
  for (size_t i = 0; i < c_.size(); ++i) {
    int e = min_ + static_cast<int>(i);
    if (e == -1) {
      if (!c_[i].is_zero()) fail(Err::NonzeroResidue, "antiderivative of a series with nonzero residue");
      cs.push_back(ring_->zero());
      continue;
    }
    if (p != 0 && Int(e + 1) % p == 0) {
      if (!c_[i].is_zero())
        fail(Err::CharPObstruction, "antiderivative needs division by the characteristic at t^" + std::to_string(e));
      cs.push_back(ring_->zero());
      continue;
    }
    cs.push_back(c_[i] / ring_->from_int(e + 1));
  }
  return LaurentSeries(ring_, min_ + 1, std::move(cs), prec_ + 1);
}

std::string LaurentSeries::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int e = min_ + static_cast<int>(i);
    if (!first) os << " + ";
    first = false;
    os << c_[i].to_string();
    if (e != 0) os << "*" << var << "^" << e;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << prec_ << ")";
  return os.str();
}

Scalar embed_into(const Scalar& c, const RingPtr& M) {
  if (c.ring()->same(*M)) return c;
  if (M->kind == RingKind::Extension && c.ring()->same(*M->base)) return M->embed(c);
  fail(Err::FieldMismatch, "no canonical embedding for this scalar");
}

LaurentSeries eval_poly_at_series(const Poly& p, const LaurentSeries& s) {
  const RingPtr& M = s.ring();
  int prec = s.prec();
  LaurentSeries acc = LaurentSeries::zero(M, prec);
  for (int i = p.deg(); i >= 0; --i)
    acc = acc * s + LaurentSeries::constant(embed_into(p.coeff(i), M), prec);
  return acc;
}

LaurentSeries newton_solve(const std::vector<LaurentSeries>& coeffs, const Scalar& seed, int prec) {
  if (coeffs.size() < 2) fail(Err::Internal, "newton_solve needs a nonconstant polynomial");
  const RingPtr& M = seed.ring();
  auto eval_at = [&](const std::vector<LaurentSeries>& cs, const LaurentSeries& X) {
    LaurentSeries acc = LaurentSeries::zero(M, prec);
    for (size_t i = cs.size(); i-- > 0;) acc = acc * X + cs[i];
    return acc;
  };
  std::vector<LaurentSeries> dcoeffs;
  for (size_t i = 1; i < coeffs.size(); ++i) dcoeffs.push_back(coeffs[i] * M->from_int(Int(i)));

  LaurentSeries X = LaurentSeries::constant(seed, prec);
  int rounds = 2;
  for (int window = 1; window < prec; window *= 2) ++rounds;
  for (int r = 0; r < rounds; ++r) {
    LaurentSeries num = eval_at(coeffs, X);
    LaurentSeries den = eval_at(dcoeffs, X);
    if (den.is_zero() || den.valuation() != 0) fail(Err::HenselFailure, "newton step lost its unit derivative");
    X = X - num / den;
    X = X.truncate(prec);
  }
  LaurentSeries check = eval_at(coeffs, X);
  if (!check.is_zero()) fail(Err::HenselFailure, "newton iteration did not converge");
  return X;
}

CoordinateSeries coordinate_series(const Place& P, int prec) {
  const RingPtr& M = P.residue_field;
  const CurvePtr& C = P.curve;
  switch (P.kind) {
    case PlaceKind::FiniteLine:
    case PlaceKind::Split:
    case PlaceKind::Inert: {
      LaurentSeries X = LaurentSeries::zero(M, prec);
      if (P.center.deg() == 1) {
        // t = x - x0, so x = x0 + t exactly
        X = LaurentSeries(M, 0, {P.x_image, M->one()}, prec);
      } else {
        // solve center(X) = t with X(0) = x_image
        std::vector<LaurentSeries> cs;
        for (int i = 0; i <= P.center.deg(); ++i)
          cs.push_back(LaurentSeries::constant(embed_into(P.center.coeff(i), M), prec));
        cs[0] = cs[0] - LaurentSeries::monomial(M->one(), 1, prec);
        X = newton_solve(cs, P.x_image, prec);
      }
      if (P.kind == PlaceKind::FiniteLine) return {X, LaurentSeries::zero(M, prec)};
      // y(t): solve Y^2 = f(X(t)) with Y(0) = y_image
      LaurentSeries fX = eval_poly_at_series(C->f, X);
      std::vector<LaurentSeries> ys = {-fX, LaurentSeries::zero(M, prec), LaurentSeries::constant(M->one(), prec)};
      LaurentSeries Y = newton_solve(ys, P.y_image, prec);
      return {X, Y};
    }
    case PlaceKind::Ramified: {
      // t = y; solve f(X) = t^2 with X(0) = x_image
      std::vector<LaurentSeries> cs;
      for (int i = 0; i <= C->f.deg(); ++i)
        cs.push_back(LaurentSeries::constant(embed_into(C->f.coeff(i), M), prec));
      cs[0] = cs[0] - LaurentSeries::monomial(M->one(), 2, prec);
      LaurentSeries X = newton_solve(cs, P.x_image, prec);
      return {X, LaurentSeries::monomial(M->one(), 1, prec)};
    }
    case PlaceKind::InfiniteLine: {
      return {LaurentSeries::monomial(M->one(), -1, prec), LaurentSeries::zero(M, prec)};
    }
    case PlaceKind::InfiniteOdd: {
      // t = x^g / y; x = v(t) t^-2 where
      //   lead(f) v^(2g+1) - v^(2g) + sum_{i<=2g} f_i v^i t^(2(2g+1-i)) = 0
      // work wide enough that every equation monomial and the final shifts fit
      int n = C->f.deg();  // 2g + 1
      int g = C->genus;
      int wprec = prec + 2 * n + 4;
      std::vector<LaurentSeries> cs(static_cast<size_t>(n) + 1, LaurentSeries::zero(M, wprec));
      cs[n] = LaurentSeries::constant(C->f.coeff(n), wprec);
      cs[n - 1] = LaurentSeries::constant(-M->one(), wprec);
      for (int i = 0; i <= n - 1; ++i) {
        int e = 2 * (n - i);
        Scalar fi = C->f.coeff(i);
        if (fi.is_zero()) continue;
        cs[i] = cs[i] + LaurentSeries::monomial(fi, e, wprec);
      }
      LaurentSeries v = newton_solve(cs, C->f.coeff(n).inverse(), wprec);
      LaurentSeries X = v.shift(-2);
      LaurentSeries Y = X.pow(g).shift(-1);
      return {X.truncate(prec), Y.truncate(prec)};
    }
  }
  fail(Err::Internal, "unknown place kind");
}

namespace {

LaurentSeries eval_rational_at_series(const RationalFunction& r, const LaurentSeries& xs) {
  LaurentSeries num = eval_poly_at_series(r.num(), xs);
  LaurentSeries den = eval_poly_at_series(r.den(), xs);
  return num / den;
}

}  // namespace

namespace {

LaurentSeries expand_impl(const FFElt& g, const Place& P, int prec, bool differential) {
  if (g.is_zero()) return LaurentSeries::zero(P.residue_field, prec);
  int slack = 4;
  for (int attempt = 0; attempt < 10; ++attempt, slack = slack * 2 + 4) {
    try {
      CoordinateSeries co = coordinate_series(P, prec + slack);
      LaurentSeries result = eval_rational_at_series(g.a(), co.x);
      if (!g.b().is_zero()) result = result + eval_rational_at_series(g.b(), co.x) * co.y;
      if (differential) result = result * co.x.derivative();
      if (result.prec() >= prec) return result.truncate(prec);
    } catch (const error& e) {
      if (e.code != Err::InsufficientPrecision) throw;  // real failures propagate
    }
  }
  fail(Err::InsufficientPrecision, "expansion did not stabilize at the requested precision");
}

}  // namespace

LaurentSeries expand_element(const FFElt& g, const Place& P, int prec) {
  return expand_impl(g, P, prec, false);
}

LaurentSeries expand_differential(const FFElt& g, const Place& P, int prec) {
  return expand_impl(g, P, prec, true);
}

Scalar residue_at_place(const FFElt& g, const Place& P) {
  if (g.is_zero()) return g.curve()->k->zero();
  LaurentSeries s = expand_differential(g, P, 1);
  return s.coeff(-1).trace_to_base();
}

Scalar residue_sum(const FFElt& g) {
  Scalar total = g.curve()->k->zero();
  for (const Place& P : poles_of_differential(g)) total = total + residue_at_place(g, P);
  return total;
}

}  // namespace adelic
