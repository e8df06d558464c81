#include "adelic/poly.hpp"

#include <sstream>

namespace adelic {

Poly::Poly(RingPtr ring, std::vector<Scalar> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (!c.ring() || !c.ring()->same(*ring_)) fail(Err::FieldMismatch, "polynomial coefficient outside ring");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Scalar& c) {
  Poly p(c.ring());
  if (!c.is_zero()) p.c_ = {c};
  return p;
}

Poly Poly::x(const RingPtr& ring) { return Poly(ring, {ring->zero(), ring->one()}); }

Poly Poly::from_ints(const RingPtr& ring, const std::vector<long>& coeffs) {
  std::vector<Scalar> cs;
  cs.reserve(coeffs.size());
  for (long c : coeffs) cs.push_back(ring->from_int(c));
  return Poly(ring, std::move(cs));
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

Scalar Poly::coeff(int i) const {
  if (i < 0 || static_cast<size_t>(i) >= c_.size()) return ring_->zero();
  return c_[i];
}

const Scalar& Poly::lead() const {
  if (c_.empty()) fail(Err::Internal, "leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (!ring_->same(*o.ring_)) fail(Err::FieldMismatch, "polynomial add: ring mismatch");
  Poly r = *this;
  if (o.c_.size() > r.c_.size()) r.c_.resize(o.c_.size(), ring_->zero());
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (!ring_->same(*o.ring_)) fail(Err::FieldMismatch, "polynomial mul: ring mismatch");
  Poly r(ring_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, ring_->zero());
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  r.trim();
  return r;
}

Poly Poly::operator*(const Scalar& s) const {
  Poly r = *this;
  for (auto& c : r.c_) c = c * s;
  r.trim();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!ring_->same(*o.ring_)) return false;
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
  Scalar lead_inv = d.lead().inverse();  // throws if not a unit
  Poly q(ring_), r = *this;
  if (r.c_.size() >= d.c_.size()) q.c_.assign(r.c_.size() - d.c_.size() + 1, ring_->zero());
  while (r.c_.size() >= d.c_.size()) {
    size_t shift = r.c_.size() - d.c_.size();
    Scalar c = r.c_.back() * lead_inv;
    q.c_[shift] = q.c_[shift] + c;
    for (size_t i = 0; i < d.c_.size(); ++i) r.c_[shift + i] = r.c_[shift + i] - c * d.c_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

bool Poly::divides(const Poly& multiple) const { return multiple.divmod(*this).second.is_zero(); }

Poly Poly::derivative() const {
  Poly r(ring_);
  for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * ring_->from_int(Int(i)));
  r.trim();
  return r;
}

Scalar Poly::eval(const Scalar& at) const {
  Scalar acc = ring_->zero();
  for (size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
  return acc;
}

Poly Poly::eval_at_poly(const Poly& inner) const {
  Poly acc(ring_);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
  return acc;
}

Poly Poly::pow(unsigned long e) const {
  Poly r = constant(ring_->one());
  Poly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::pow_mod(Int e, const Poly& mod) const {
  if (e < 0) fail(Err::Internal, "pow_mod with negative exponent");
  Poly r = constant(ring_->one());
  Poly b = divmod(mod).second;
  while (e > 0) {
    if (mpz_tstbit(e.get_mpz_t(), 0)) r = (r * b).divmod(mod).second;
    b = (b * b).divmod(mod).second;
    e >>= 1;
  }
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inverse();
}

Poly Poly::shift_up(int k) const {
  if (is_zero() || k == 0) return *this;
  if (k < 0) fail(Err::Internal, "shift_up with negative exponent");
  Poly r(ring_);
  r.c_.assign(k, ring_->zero());
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    std::string cs = c_[i].to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-", cs = cs.substr(1);
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    first = false;
    bool unit_coeff = (cs == "1") && i > 0;
    if (!unit_coeff) os << cs;
    if (i > 0) {
      if (!unit_coeff) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

int Poly::cmp(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
  for (int i = a.deg(); i >= 0; --i) {
    int c = Scalar::cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c;
  }
  return 0;
}

Poly gcd_poly(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly extgcd_poly(const Poly& a, const Poly& b, Poly& s, Poly& t) {
  const RingPtr& R = a.ring();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(R->one()), s1(R);
  Poly t0(R), t1 = Poly::constant(R->one());
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = Poly(R);
    t = Poly(R);
    return r0;
  }
  Scalar c = r0.lead().inverse();
  s = s0 * c;
  t = t0 * c;
  return r0 * c;
}

Poly invert_mod(const Poly& a, const Poly& m) {
  Poly s(a.ring()), t(a.ring());
  Poly g = extgcd_poly(a % m, m, s, t);
  if (g.deg() != 0) fail(Err::NotInvertible, "polynomial is not invertible modulo " + m.to_string());
  return s % m;
}

namespace {

// p-th root of a polynomial of the form h(x^p) over a finite field
Poly poly_pth_root(const Poly& g) {
  long p = g.ring()->characteristic().get_si();
  std::vector<Scalar> hc;
  for (int i = 0; i <= g.deg(); i += p) hc.push_back(g.coeff(i).pth_root());
  return Poly(g.ring(), std::move(hc));
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  const RingPtr& R = f.ring();
  if (f.deg() <= 0) return {};
  Poly g = f.monic();
  if (R->characteristic() == 0) {
    // Yun's algorithm
    std::vector<std::pair<Poly, int>> out;
    Poly d = g.derivative();
    Poly a = gcd_poly(g, d);
    Poly b = g / a;
    Poly c = d / a;
    int i = 1;
    while (b.deg() > 0) {
      Poly diff = c - b.derivative();
      Poly w = gcd_poly(b, diff);
      if (w.deg() > 0) out.emplace_back(w.monic(), i);
      b = b / w;
      c = diff / w;
      ++i;
    }
    return out;
  }
  // characteristic p: multiplicities divisible by p hide in the p-th-power part
  long p = R->characteristic().get_si();
  std::vector<std::pair<Poly, int>> out;
  Poly d = g.derivative();
  if (d.is_zero()) {
    for (auto& [fac, mult] : squarefree_decomposition(poly_pth_root(g)))
      out.emplace_back(fac, mult * p);
    return out;
  }
  Poly c = gcd_poly(g, d);
  Poly w = g / c;
  int i = 1;
  while (w.deg() > 0) {
    Poly y = gcd_poly(w, c);
    Poly fac = w / y;
    if (fac.deg() > 0) out.emplace_back(fac.monic(), i);
    w = std::move(y);
    c = c / w;
    ++i;
  }
  if (c.deg() > 0) {
    // loop multiplicities are prime to p, these are multiples of p: disjoint
    for (auto& [fac, mult] : squarefree_decomposition(poly_pth_root(c)))
      out.emplace_back(fac, mult * p);
  }
  return out;
}

}  // namespace adelic
