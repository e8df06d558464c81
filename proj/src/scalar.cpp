#include "adelic/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace adelic {

namespace {

// ---- tiny dense polynomial helpers over a coefficient FIELD ----------------
// Only what extension-field arithmetic needs; the full Poly type lives
// elsewhere and depends on Scalar, so these stay local.

using VS = std::vector<Scalar>;

void vtrim(VS& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

bool vzero(const VS& a) { return a.empty(); }

VS vadd(const VS& a, const VS& b) {
  VS r = a;
  if (b.size() > r.size()) r.resize(b.size(), b[0].ring()->zero());
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  vtrim(r);
  return r;
}

VS vneg(const VS& a) {
  VS r = a;
  for (auto& c : r) c = -c;
  return r;
}

VS vsub(const VS& a, const VS& b) { return vadd(a, vneg(b)); }

VS vmul(const VS& a, const VS& b, const RingPtr& ring) {
  if (vzero(a) || vzero(b)) return {};
  VS r(a.size() + b.size() - 1, ring->zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  vtrim(r);
  return r;
}

VS vscale(const VS& a, const Scalar& s) {
  VS r = a;
  for (auto& c : r) c = c * s;
  vtrim(r);
  return r;
}

// division with remainder by a polynomial with invertible leading coefficient
void vdivmod(const VS& a, const VS& b, VS& q, VS& r, const RingPtr& ring) {
  if (vzero(b)) fail(Err::DivisionByZero, "polynomial division by zero");
  r = a;
  vtrim(r);
  q.clear();
  if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, ring->zero());
  Scalar lead_inv = b.back().inverse();
  while (r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    Scalar c = r.back() * lead_inv;
    q[shift] = q[shift] + c;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - c * b[i];
    vtrim(r);  // top coefficient cancels, so the loop always makes progress
  }
  vtrim(q);
}

VS vmod(const VS& a, const VS& b, const RingPtr& ring) {
  VS q, r;
  vdivmod(a, b, q, r, ring);
  return r;
}

VS vmonic(const VS& a) {
  if (vzero(a)) return a;
  return vscale(a, a.back().inverse());
}

VS vgcd(VS a, VS b, const RingPtr& ring) {
  while (!vzero(b)) {
    VS r = vmod(a, b, ring);
    a = std::move(b);
    b = std::move(r);
  }
  return vmonic(a);
}

// s*a + t*b = g (monic); only s and g are needed by callers
void vextgcd(const VS& a, const VS& b, VS& g, VS& s, const RingPtr& ring) {
  VS r0 = a, r1 = b;
  VS s0 = {ring->one()}, s1 = {};
  while (!vzero(r1)) {
    VS q, r2;
    vdivmod(r0, r1, q, r2, ring);
    VS s2 = vsub(s0, vmul(q, s1, ring));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (vzero(r0)) {
    g = {};
    s = {};
    return;
  }
  Scalar c = r0.back().inverse();
  g = vscale(r0, c);
  s = vscale(s0, c);
}

VS vderiv(const VS& a, const RingPtr& ring) {
  VS r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * ring->from_int(Int(i)));
  vtrim(r);
  return r;
}

VS vpowmod(VS base, Int e, const VS& mod, const RingPtr& ring) {
  VS r = {ring->one()};
  base = vmod(base, mod, ring);
  while (e > 0) {
    if (mpz_tstbit(e.get_mpz_t(), 0)) r = vmod(vmul(r, base, ring), mod, ring);
    base = vmod(vmul(base, base, ring), mod, ring);
    e >>= 1;
  }
  return r;
}

// complete irreducibility test over F_p (Rabin): monic f of degree d is
// irreducible iff x^{p^d} = x mod f and gcd(x^{p^{d/q}} - x, f) = 1 for all
// primes q | d
bool irreducible_mod_p(const VS& f, const RingPtr& fp) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  VS x = {fp->zero(), fp->one()};
  std::vector<int> prime_divs;
  for (int q : {2, 3, 5}) {
    if (d % q == 0) prime_divs.push_back(q);
  }
  for (int q : prime_divs) {
    Int e = 1;
    for (int i = 0; i < d / q; ++i) e *= fp->p;
    VS xq = vpowmod(x, e, f, fp);
    VS diff = vsub(xq, x);
    VS g = vgcd(diff, f, fp);
    if (!(g.size() == 1)) return false;
  }
  Int e = 1;
  for (int i = 0; i < d; ++i) e *= fp->p;
  VS xq = vpowmod(x, e, f, fp);
  if (!vzero(vsub(xq, x))) return false;
  return true;
}

std::string poly_str(const VS& m, const std::string& var) {
  if (vzero(m)) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = m.size(); i-- > 0;) {
    if (m[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || !m[i].is_one()) os << m[i].to_string();
    if (i >= 1) {
      if (!m[i].is_one()) os << "*";
      os << var;
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace

// ---- Ring -------------------------------------------------------------------

RingPtr Ring::rationals() {
  static const RingPtr r = [] {
    auto q = std::make_shared<Ring>();
    q->kind = RingKind::Rationals;
    return q;
  }();
  return r;
}

RingPtr Ring::prime_field(const Int& p) {
  if (p < 2 || !mpz_probab_prime_p(p.get_mpz_t(), 30)) fail(Err::InvalidSpec, "characteristic must be prime");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Prime;
  r->p = p;
  r->modulus = p;
  return r;
}

RingPtr Ring::witt2(const Int& p) {
  if (p < 2 || !mpz_probab_prime_p(p.get_mpz_t(), 30)) fail(Err::InvalidSpec, "characteristic must be prime");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Witt2;
  r->p = p;
  r->modulus = p * p;
  return r;
}

RingPtr Ring::extension(const RingPtr& base, const std::vector<Scalar>& minpoly_monic,
                        const std::string& var) {
  if (!base || (base->kind != RingKind::Rationals && base->kind != RingKind::Prime))
    fail(Err::InvalidSpec, "extension base must be Q or a prime field (towers are flattened)");
  VS m = minpoly_monic;
  vtrim(m);
  int d = static_cast<int>(m.size()) - 1;
  if (d < 2) fail(Err::InvalidSpec, "extension degree must be at least 2");
  if (d > 6) fail(Err::DegreeCap, "extension degree cap is 6");
  for (const auto& c : m)
    if (!c.ring() || !c.ring()->same(*base)) fail(Err::FieldMismatch, "minimal polynomial coefficients must lie in the base field");
  if (!m.back().is_one()) fail(Err::InvalidSpec, "minimal polynomial must be monic");

  if (base->kind == RingKind::Prime) {
    if (!irreducible_mod_p(m, base)) fail(Err::ReducibleModulus, "minimal polynomial is reducible over F_p");
  } else {
    // desk-scale check over Q: square-free plus no rational roots
    VS g = vgcd(m, vderiv(m, base), base);
    if (g.size() != 1) fail(Err::ReducibleModulus, "minimal polynomial has a repeated factor");
    Int den_lcm = 1;
    for (const auto& c : m) den_lcm = den_lcm / gcd(den_lcm, c.rat_value().get_den()) * c.rat_value().get_den();
    Int c0 = Rat(m[0].rat_value() * Rat(den_lcm)).get_num();
    Int lead = Rat(m.back().rat_value() * Rat(den_lcm)).get_num();
    if (c0 == 0) fail(Err::ReducibleModulus, "minimal polynomial has root 0");
    auto divisors = [](Int n) {
      n = abs(n);
      std::vector<Int> ds;
      for (Int i = 1; i * i <= n; ++i)
        if (n % i == 0) {
          ds.push_back(i);
          ds.push_back(n / i);
        }
      return ds;
    };
    for (const Int& a : divisors(c0))
      for (const Int& b : divisors(lead))
        for (int sgn : {1, -1}) {
          Rat cand = make_rat(sgn * a, b);
          Scalar acc = base->zero();
          for (size_t i = m.size(); i-- > 0;) acc = acc * base->from_rat(cand) + m[i];
          if (acc.is_zero()) fail(Err::ReducibleModulus, "minimal polynomial has a rational root");
        }
  }

  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Extension;
  r->base = base;
  r->p = base->p;
  r->minpoly = m;
  r->var = var;
  r->deg = d;
  return r;
}

Int Ring::characteristic() const { return p; }

bool Ring::is_finite() const {
  return kind == RingKind::Prime || kind == RingKind::Witt2 ||
         (kind == RingKind::Extension && base->kind == RingKind::Prime);
}

Int Ring::size_if_finite() const {
  if (kind == RingKind::Prime) return p;
  if (kind == RingKind::Witt2) return modulus;
  if (kind == RingKind::Extension && base->kind == RingKind::Prime) {
    Int s = 1;
    for (int i = 0; i < deg; ++i) s *= p;
    return s;
  }
  return 0;
}

Scalar Ring::zero() const { return from_int(0); }
Scalar Ring::one() const { return from_int(1); }

Scalar Ring::from_int(const Int& n) const {
  Scalar s;
  s.ring_ = shared_from_this();
  switch (kind) {
    case RingKind::Rationals: s.q_ = Rat(n); break;
    case RingKind::Prime:
    case RingKind::Witt2: s.z_ = mod_floor(n, modulus); break;
    case RingKind::Extension: {
      Scalar c = base->from_int(n);
      if (!c.is_zero()) s.v_ = {c};
      break;
    }
  }
  return s;
}

Scalar Ring::from_rat(const Rat& q) const {
  switch (kind) {
    case RingKind::Rationals: {
      Scalar s;
      s.ring_ = shared_from_this();
      s.q_ = q;
      return s;
    }
    case RingKind::Prime:
    case RingKind::Witt2: {
      return from_int(q.get_num()) * from_int(q.get_den()).inverse();
    }
    case RingKind::Extension: return embed(base->from_rat(q));
  }
  fail(Err::Internal, "from_rat: unreachable");
}

Scalar Ring::embed(const Scalar& base_elt) const {
  if (base_elt.ring() && base_elt.ring()->same(*this)) return base_elt;
  if (kind != RingKind::Extension || !base_elt.ring() || !base_elt.ring()->same(*base))
    fail(Err::FieldMismatch, "embed: element does not lie in the base field");
  Scalar s;
  s.ring_ = shared_from_this();
  if (!base_elt.is_zero()) s.v_ = {base_elt};
  return s;
}

Scalar Ring::make_ext(std::vector<Scalar> coeffs) const {
  if (kind != RingKind::Extension) fail(Err::Internal, "make_ext on non-extension ring");
  for (auto& c : coeffs)
    if (!c.ring() || !c.ring()->same(*base)) fail(Err::FieldMismatch, "make_ext: coefficient outside base field");
  vtrim(coeffs);
  if (static_cast<int>(coeffs.size()) > deg) coeffs = vmod(coeffs, minpoly, base);
  Scalar s;
  s.ring_ = shared_from_this();
  s.v_ = std::move(coeffs);
  return s;
}

Scalar Ring::element_from_index(const Int& idx) const {
  switch (kind) {
    case RingKind::Prime:
    case RingKind::Witt2: return from_int(idx);
    case RingKind::Extension: {
      if (base->kind != RingKind::Prime) fail(Err::Internal, "enumeration needs a finite field");
      Int n = idx;
      std::vector<Scalar> cs;
      for (int i = 0; i < deg; ++i) {
        cs.push_back(base->from_int(mod_floor(n, p)));
        n /= p;
      }
      return make_ext(cs);
    }
    default: fail(Err::Internal, "element_from_index on infinite ring");
  }
}

bool Ring::same(const Ring& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case RingKind::Rationals: return true;
    case RingKind::Prime:
    case RingKind::Witt2: return p == o.p;
    case RingKind::Extension: {
      if (!base->same(*o.base) || deg != o.deg) return false;
      for (int i = 0; i <= deg; ++i)
        if (!(minpoly[i] == o.minpoly[i])) return false;
      return true;
    }
  }
  return false;
}

std::string Ring::to_string() const {
  switch (kind) {
    case RingKind::Rationals: return "Q";
    case RingKind::Prime: return "F_" + p.get_str();
    case RingKind::Witt2: return "Z/" + modulus.get_str();
    case RingKind::Extension:
      return base->to_string() + "[" + var + "]/(" + poly_str(minpoly, var) + ")";
  }
  return "?";
}

bool Ring::sqrt_in_field(const Scalar& a, Scalar& root) const {
  if (!is_finite() || kind == RingKind::Witt2) fail(Err::Internal, "sqrt_in_field needs a finite field");
  if (a.is_zero()) {
    root = zero();
    return true;
  }
  Int q = size_if_finite();
  Scalar euler = a.pow((q - 1) / 2);
  if (!euler.is_one()) return false;
  if (mod_floor(q, 4) == 3) {
    root = a.pow((q + 1) / 4);
    return true;
  }
  // Tonelli-Shanks with a deterministic non-residue search
  Int t = q - 1;
  long s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Scalar z = zero();
  for (Int i = 2; i < q; ++i) {
    z = element_from_index(i);
    if (z.is_zero()) continue;
    if (!z.pow((q - 1) / 2).is_one()) break;
  }
  Scalar c = z.pow(t);
  Scalar r = a.pow((t + 1) / 2);
  Scalar u = a.pow(t);
  long m = s;
  while (!u.is_one()) {
    long i = 0;
    Scalar w = u;
    while (!w.is_one()) {
      w = w * w;
      ++i;
      if (i == m) fail(Err::Internal, "tonelli-shanks failed");
    }
    Scalar b = c;
    for (long j = 0; j < m - i - 1; ++j) b = b * b;
    r = r * b;
    c = b * b;
    u = u * c;
    m = i;
  }
  root = r;
  return true;
}

void require_same_ring(const Scalar& a, const Scalar& b, const char* where) {
  if (!a.ring() || !b.ring() || !a.ring()->same(*b.ring()))
    fail(Err::FieldMismatch, std::string(where) + ": operands lie in different rings");
}

// ---- Scalar -----------------------------------------------------------------

bool Scalar::is_zero() const {
  if (!ring_) fail(Err::Internal, "uninitialized scalar");
  switch (ring_->kind) {
    case RingKind::Rationals: return q_ == 0;
    case RingKind::Prime:
    case RingKind::Witt2: return z_ == 0;
    case RingKind::Extension: return v_.empty();
  }
  return false;
}

bool Scalar::is_one() const { return *this == ring_->one(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  switch (ring_->kind) {
    case RingKind::Rationals: r.q_ = -q_; break;
    case RingKind::Prime:
    case RingKind::Witt2: r.z_ = z_ == 0 ? Int(0) : ring_->modulus - z_; break;
    case RingKind::Extension: r.v_ = vneg(v_); break;
  }
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_ring(*this, o, "add");
  Scalar r = *this;
  switch (ring_->kind) {
    case RingKind::Rationals: r.q_ = q_ + o.q_; break;
    case RingKind::Prime:
    case RingKind::Witt2: r.z_ = mod_floor(z_ + o.z_, ring_->modulus); break;
    case RingKind::Extension: r.v_ = vadd(v_, o.v_); break;
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_ring(*this, o, "mul");
  Scalar r = *this;
  switch (ring_->kind) {
    case RingKind::Rationals: r.q_ = q_ * o.q_; break;
    case RingKind::Prime:
    case RingKind::Witt2: r.z_ = mod_floor(z_ * o.z_, ring_->modulus); break;
    case RingKind::Extension:
      r.v_ = vmod(vmul(v_, o.v_, ring_->base), ring_->minpoly, ring_->base);
      break;
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  require_same_ring(*this, o, "eq");
  switch (ring_->kind) {
    case RingKind::Rationals: return q_ == o.q_;
    case RingKind::Prime:
    case RingKind::Witt2: return z_ == o.z_;
    case RingKind::Extension: {
      if (v_.size() != o.v_.size()) return false;
      for (size_t i = 0; i < v_.size(); ++i)
        if (!(v_[i] == o.v_[i])) return false;
      return true;
    }
  }
  return false;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
  Scalar r = *this;
  switch (ring_->kind) {
    case RingKind::Rationals: r.q_ = Rat(1) / q_; break;
    case RingKind::Prime:
    case RingKind::Witt2: {
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), z_.get_mpz_t(),
                 ring_->modulus.get_mpz_t());
      if (g != 1) fail(Err::NotInvertible, "not a unit modulo " + ring_->modulus.get_str());
      r.z_ = mod_floor(s, ring_->modulus);
      break;
    }
    case RingKind::Extension: {
      VS g, s;
      vextgcd(v_, ring_->minpoly, g, s, ring_->base);
      if (g.size() != 1) fail(Err::NotInvertible, "zero divisor in a non-field extension");
      r.v_ = vmod(s, ring_->minpoly, ring_->base);
      break;
    }
  }
  return r;
}

Scalar Scalar::pow(Int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = ring_->one();
  Scalar b = *this;
  while (e > 0) {
    if (mpz_tstbit(e.get_mpz_t(), 0)) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::pth_root() const {
  if (ring_->p == 0) fail(Err::UnsupportedCharacteristic, "p-th root needs positive characteristic");
  if (ring_->kind == RingKind::Witt2) fail(Err::UnsupportedCharacteristic, "p-th root is not defined on W2");
  if (ring_->kind == RingKind::Prime) return *this;  // Frobenius is the identity on F_p
  Int e = 1;
  for (int i = 0; i < ring_->deg - 1; ++i) e *= ring_->p;
  return pow(e);
}

Scalar Scalar::trace_to_base() const {
  if (!ring_) fail(Err::Internal, "uninitialized scalar");
  if (ring_->kind != RingKind::Extension) return *this;
  const RingPtr& B = ring_->base;
  Scalar tr = B->zero();
  Scalar w = *this;  // w = a * z^i, reduced
  for (int i = 0; i < ring_->deg; ++i) {
    tr = tr + w.ext_coeff(i);
    if (i + 1 < ring_->deg) {
      // multiply by z
      VS shifted(1, B->zero());
      shifted.insert(shifted.end(), w.v_.begin(), w.v_.end());
      vtrim(shifted);
      w = ring_->make_ext(shifted);
    }
  }
  return tr;
}

Scalar Scalar::witt_a0() const {
  if (ring_->kind != RingKind::Witt2) fail(Err::Internal, "witt_a0 on non-W2 scalar");
  return Ring::prime_field(ring_->p)->from_int(mod_floor(z_, ring_->p));
}

Scalar Scalar::witt_a1() const {
  if (ring_->kind != RingKind::Witt2) fail(Err::Internal, "witt_a1 on non-W2 scalar");
  return Ring::prime_field(ring_->p)->from_int((z_ - mod_floor(z_, ring_->p)) / ring_->p);
}

Scalar Scalar::reduce_mod_p() const {
  if (ring_->kind != RingKind::Witt2) fail(Err::Internal, "reduce_mod_p on non-W2 scalar");
  return Ring::prime_field(ring_->p)->from_int(z_);
}

bool Scalar::divisible_by_p() const {
  if (ring_->kind != RingKind::Witt2) fail(Err::Internal, "divisible_by_p on non-W2 scalar");
  return z_ % ring_->p == 0;
}

Scalar Scalar::divide_by_p() const {
  if (!divisible_by_p()) fail(Err::NotInvertible, "W2 value is not divisible by p");
  return Ring::prime_field(ring_->p)->from_int(z_ / ring_->p);
}

const std::vector<Scalar>& Scalar::ext_coeffs() const {
  if (ring_->kind != RingKind::Extension) fail(Err::Internal, "ext_coeffs on base scalar");
  return v_;
}

Scalar Scalar::ext_coeff(int i) const {
  if (ring_->kind != RingKind::Extension) {
    if (i == 0) return *this;
    fail(Err::Internal, "ext_coeff index out of range on base scalar");
  }
  if (i < 0 || i >= ring_->deg) fail(Err::Internal, "ext_coeff index out of range");
  if (static_cast<size_t>(i) >= v_.size()) return ring_->base->zero();
  return v_[i];
}

const Rat& Scalar::rat_value() const {
  if (ring_->kind != RingKind::Rationals) fail(Err::Internal, "rat_value on non-rational scalar");
  return q_;
}

const Int& Scalar::int_value() const {
  if (ring_->kind != RingKind::Prime && ring_->kind != RingKind::Witt2)
    fail(Err::Internal, "int_value on non-modular scalar");
  return z_;
}

std::string Scalar::to_string() const {
  switch (ring_->kind) {
    case RingKind::Rationals: return q_.get_str();
    case RingKind::Prime:
    case RingKind::Witt2: return z_.get_str();
    case RingKind::Extension: {
      std::ostringstream os;
      os << "[";
      for (int i = 0; i < ring_->deg; ++i) {
        if (i) os << ",";
        os << ext_coeff(i).to_string();
      }
      os << "]";
      return os.str();
    }
  }
  return "?";
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b, "cmp");
  switch (a.ring_->kind) {
    case RingKind::Rationals: return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    case RingKind::Prime:
    case RingKind::Witt2: return ::cmp(a.z_, b.z_);
    case RingKind::Extension: {
      for (int i = a.ring_->deg - 1; i >= 0; --i) {
        int c = cmp(a.ext_coeff(i), b.ext_coeff(i));
        if (c != 0) return c;
      }
      return 0;
    }
  }
  return 0;
}

RingPtr find_extension_field(const Int& p, int deg) {
  auto fp = Ring::prime_field(p);
  if (deg == 1) return fp;
  // enumerate tails deterministically: f = z^deg + (base-p digits of idx)
  Int total = 1;
  for (int i = 0; i < deg; ++i) total *= p;
  for (Int idx = 1; idx < total; ++idx) {
    VS f;
    Int n = idx;
    for (int i = 0; i < deg; ++i) {
      f.push_back(fp->from_int(mod_floor(n, p)));
      n /= p;
    }
    f.push_back(fp->one());
    try {
      return Ring::extension(fp, f);
    } catch (const error&) {
      continue;
    }
  }
  fail(Err::Internal, "no irreducible polynomial found");
}

}  // namespace adelic
