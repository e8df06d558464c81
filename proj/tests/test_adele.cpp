#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adelic/adele.hpp"

using namespace adelic;

namespace {

CurvePtr elliptic_q() {
  auto Q = Ring::rationals();
  return make_hyperelliptic(Poly::from_ints(Q, {0, -1, 0, 1}));
}

CurvePtr elliptic_f5() {
  return make_hyperelliptic(Poly::from_ints(Ring::prime_field(5), {0, -1, 0, 1}));
}

CurvePtr line_q() { return make_projective_line(Ring::rationals()); }

LaurentSeries rand_series(Rng& rng, const RingPtr& k, int min_exp, int prec) {
  std::vector<Scalar> cs;
  for (int e = min_exp; e < prec; ++e) cs.push_back(k->from_int(rng.range(-3, 3)));
  return LaurentSeries(k, min_exp, cs, prec);
}

FFElt rand_pool_element(Rng& rng, const CurvePtr& C, const std::vector<Poly>& pool, int ymax) {
  FFElt g = FFElt::constant(C, C->k->from_int(rng.range(1, 3)));
  for (const Poly& c : pool) {
    long e = rng.range(-1, 1);
    FFElt base = FFElt::from_rational(C, RationalFunction(c));
    if (e == 1) g = g * base;
    if (e == -1) g = g * base.inverse();
  }
  if (!C->is_p1) {
    long e = rng.range(0, ymax);
    for (long i = 0; i < e; ++i) g = g * FFElt::y(C);
    if (rng.coin()) g = g * FFElt::y(C).inverse();
  }
  return g;
}

std::vector<Poly> pool_for(const CurvePtr& C) {
  const RingPtr& k = C->k;
  std::vector<Poly> pool = {Poly::from_ints(k, {0, 1}), Poly::from_ints(k, {-1, 1})};
  if (C->is_p1) pool.push_back(Poly::from_ints(k, {1, 0, 1}));
  else pool.push_back(Poly::from_ints(k, {2, 1}));
  return pool;
}

// a valid (1,0) cochain: integral slots at every pole of the default, plus one
// perturbed slot so the second difference is nonzero
Cochain rand_10(Rng& rng, const CurvePtr& C, const std::vector<Poly>& pool, int P) {
  Cochain u = Cochain::make(1, 0, C);
  u.gen = rand_pool_element(rng, C, pool, 1);
  u.def = rand_pool_element(rng, C, pool, 1);
  for (const Place& pl : poles_of_differential(u.def))
    u.exc.emplace(pl, rand_series(rng, pl.residue_field, 0, P));
  return u;
}

Cochain rand_01(Rng& rng, const CurvePtr& C, const std::vector<Poly>& pool, int P) {
  Cochain u = Cochain::make(0, 1, C);
  u.def = rand_pool_element(rng, C, pool, 1);
  for (const Place& pl : poles_of_element(u.def))
    u.exc.emplace(pl, rand_series(rng, pl.residue_field, -3, P));
  return u;
}

Cochain rand_00(Rng& rng, const CurvePtr& C, const std::vector<Poly>& pool, int P) {
  Cochain u = Cochain::make(0, 0, C);
  u.gen = rand_pool_element(rng, C, pool, 1);
  u.def = rand_pool_element(rng, C, pool, 1);
  for (const Place& pl : poles_of_element(u.def))
    u.exc.emplace(pl, rand_series(rng, pl.residue_field, 0, P));
  return u;
}

bool same_cochain(const Cochain& a, const Cochain& b, int P) {
  return cochain_is_zero(add(a, negate(b), P), P);
}

bool same_degree1(const Degree1& a, const Degree1& b, int P) {
  return same_cochain(a.a10, b.a10, P) && same_cochain(a.a01, b.a01, P);
}

}  // namespace

TEST_CASE("golden residue pairing on the elliptic curve") {
  auto C = elliptic_q();
  auto Q = C->k;
  const int P = 9;
  Place inf = infinite_places(C).at(0);

  FFElt w1 = FFElt::y(C).inverse();                 // dx/y multiplier
  FFElt w2 = FFElt::x(C) * FFElt::y(C).inverse();   // x dx/y multiplier

  LaurentSeries e1 = expand_differential(w1, inf, P);
  CHECK(e1.coeff(0).rat_value() == Rat(-2));
  CHECK(e1.coeff(1).is_zero());
  CHECK(e1.coeff(2).is_zero());
  CHECK(e1.coeff(3).is_zero());

  LaurentSeries e2 = expand_differential(w2, inf, P);
  CHECK(e2.coeff(-2).rat_value() == Rat(-2));
  CHECK(e2.coeff(-1).is_zero());
  CHECK(e2.coeff(2).rat_value() == Rat(2));
  CHECK(e2.coeff(4).is_zero());
  CHECK(e2.coeff(6).rat_value() == Rat(-6));

  Degree1 beta = cocycle_from_second_kind(w2, P);
  const LaurentSeries& a_inf = beta.a01.exc.at(inf);
  CHECK(a_inf.coeff(-1).rat_value() == Rat(2));
  CHECK(a_inf.coeff(0).is_zero());
  CHECK(a_inf.coeff(3).rat_value() == Rat(2, 3));

  // raw residue of the antiderivative against the holomorphic expansion
  CHECK((a_inf * e1).coeff(-1).rat_value() == Rat(-4));

  Degree1 alpha = cocycle_from_second_kind(w1, P);
  CHECK(alpha.a10.exc.empty());
  CHECK(alpha.a01.exc.empty());

  CHECK(pairing(alpha, beta, P).rat_value() == Rat(4));
  CHECK(pairing(beta, alpha, P).rat_value() == Rat(-4));
  CHECK(pairing(alpha, alpha, P).is_zero());
  CHECK(pairing(beta, beta, P).is_zero());
}

TEST_CASE("cocycles are closed and the pairing is antisymmetric") {
  auto C = elliptic_q();
  const int P = 9;
  FFElt w1 = FFElt::y(C).inverse();
  FFElt w2 = FFElt::x(C) * FFElt::y(C).inverse();
  FFElt w3 = w2 * FFElt::x(C);  // x^2 dx/y, second kind with a deeper pole

  for (const FFElt& w : {w1, w2, w3}) {
    Degree1 c = cocycle_from_second_kind(w, P);
    validate_cochain(c.a10);
    validate_cochain(c.a01);
    CHECK(cochain_is_zero(total_d1(c, P), P));
  }
  Degree1 c2 = cocycle_from_second_kind(w2, P);
  Degree1 c3 = cocycle_from_second_kind(w3, P);
  CHECK((pairing(c2, c3, P) + pairing(c3, c2, P)).is_zero());

  // same picture with coefficients reduced mod 5
  auto C5 = elliptic_f5();
  const int P5 = 10;
  FFElt v1 = FFElt::y(C5).inverse();
  FFElt v2 = FFElt::x(C5) * FFElt::y(C5).inverse();
  Degree1 a5 = cocycle_from_second_kind(v1, P5);
  Degree1 b5 = cocycle_from_second_kind(v2, P5);
  CHECK(cochain_is_zero(total_d1(a5, P5), P5));
  CHECK(cochain_is_zero(total_d1(b5, P5), P5));
  CHECK(pairing(a5, b5, P5).int_value() == 4);
  CHECK(pairing(b5, a5, P5).int_value() == 1);
}

TEST_CASE("point components must be integral and cover the default poles") {
  auto C = elliptic_q();
  const int P = 8;
  Place inf = infinite_places(C).at(0);
  FFElt w1 = FFElt::y(C).inverse();
  FFElt w2 = FFElt::x(C) * FFElt::y(C).inverse();

  // holomorphic default needs no slots
  Cochain ok = Cochain::make(1, 0, C);
  ok.gen = w1;
  ok.def = w1;
  validate_cochain(ok);
  CHECK(cochain_is_zero(d_second(ok, P), P));

  // a pole at infinity with no slot there is rejected
  Cochain bad = Cochain::make(1, 0, C);
  bad.gen = w2;
  bad.def = w2;
  try {
    validate_cochain(bad);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == Err::InvalidSpec);
  }

  // a slot with a pole is rejected in the q = 0 row
  bad.exc.emplace(inf, LaurentSeries::monomial(C->k->one(), -2, P));
  CHECK_THROWS_AS(validate_cochain(bad), error);

  // slot sets must cover the poles of the differential
  CHECK_THROWS_AS(cocycle_with_slots(w2, {}, P), error);
}

TEST_CASE("the total differential squares to zero") {
  const int P = 7;
  for (auto& C : {line_q(), CurvePtr(elliptic_f5())}) {
    auto pool = pool_for(C);
    Rng rng(404 + (C->is_p1 ? 1 : 0));
    for (int trial = 0; trial < 8; ++trial) {
      Cochain u = rand_00(rng, C, pool, P);
      validate_cochain(u);
      Degree1 du = total_d0(u, P);
      CHECK(cochain_is_zero(total_d1(du, P), P));
    }
  }
}

TEST_CASE("Leibniz rule for the cup product") {
  const int P = 7;
  for (auto& C : {line_q(), CurvePtr(elliptic_f5())}) {
    auto pool = pool_for(C);
    Rng rng(777 + (C->is_p1 ? 1 : 0));
    for (int trial = 0; trial < 6; ++trial) {
      Cochain u = rand_00(rng, C, pool, P);
      Degree1 v{rand_10(rng, C, pool, P), rand_01(rng, C, pool, P)};
      validate_cochain(v.a10);
      validate_cochain(v.a01);

      // D(u . v) = Du . v + u . Dv
      Cochain lhs = total_d1(cup(u, v, P), P);
      Cochain rhs = add(cup(total_d0(u, P), v, P), cup(u, total_d1(v, P), P), P);
      CHECK(same_cochain(lhs, rhs, P));

      // D(v . u) = Dv . u - v . Du
      Cochain lhs2 = total_d1(cup(v, u, P), P);
      Cochain rhs2 = add(cup(total_d1(v, P), u, P), negate(cup(v, total_d0(u, P), P)), P);
      CHECK(same_cochain(lhs2, rhs2, P));

      // products of functions stay compatible with both differentials
      Cochain u2 = rand_00(rng, C, pool, P);
      Cochain prod = cup00(u, u2, P);
      Degree1 dprod = total_d0(prod, P);
      Degree1 expect = add(cup(total_d0(u, P), u2, P), cup(u, total_d0(u2, P), P), P);
      CHECK(same_degree1(dprod, expect, P));
    }
  }
}

TEST_CASE("integration kills coboundaries") {
  const int P = 8;
  for (auto& C : {line_q(), CurvePtr(elliptic_f5())}) {
    auto pool = pool_for(C);
    Rng rng(90210 + (C->is_p1 ? 1 : 0));
    for (int trial = 0; trial < 10; ++trial) {
      Degree1 v{rand_10(rng, C, pool, P), rand_01(rng, C, pool, P)};
      CHECK(integrate(total_d1(v, P)).is_zero());
    }
  }
}

TEST_CASE("slot enlargement changes a cocycle by an exact witness") {
  auto C = elliptic_q();
  const int P = 9;
  Place inf = infinite_places(C).at(0);
  FFElt w1 = FFElt::y(C).inverse();
  FFElt w2 = FFElt::x(C) * FFElt::y(C).inverse();

  std::vector<Place> slots = poles_of_differential(w2);
  Place extra = places_over(C, Poly::from_ints(C->k, {0, 1})).at(0);  // branch place over x
  slots.push_back(extra);

  Degree1 big = cocycle_with_slots(w2, slots, P);
  Degree1 small = cocycle_from_second_kind(w2, P);
  CHECK(cochain_is_zero(total_d1(big, P), P));

  // the difference is the total differential of a point-level witness
  Cochain b = Cochain::make(0, 0, C);
  b.exc.emplace(extra, -expand_differential(w2, extra, P).antiderivative());
  validate_cochain(b);
  Degree1 diff = add(big, negate(small), P);
  CHECK(same_degree1(diff, total_d0(b, P), P));

  // and the pairing against the holomorphic class does not move
  Degree1 alpha = cocycle_from_second_kind(w1, P);
  CHECK(pairing(alpha, big, P).rat_value() == Rat(4));
  CHECK(pairing(big, alpha, P).rat_value() == Rat(-4));
}

TEST_CASE("coboundary witnesses for constant chain classes") {
  auto C = elliptic_q();
  const int P = 8;
  Place inf = infinite_places(C).at(0);
  Place extra = places_over(C, Poly::from_ints(C->k, {0, 1})).at(0);

  Cochain beta = Cochain::make(0, 1, C);
  beta.def = FFElt::constant(C, C->k->from_int(3));
  beta.exc.emplace(inf, LaurentSeries::constant(C->k->from_int(5), P));
  beta.exc.emplace(extra, LaurentSeries::constant(C->k->from_int(-2), P));

  Cochain u = coboundary_witness_01(beta, P);
  CHECK(cochain_is_zero(d_prime(u), P));
  CHECK(same_cochain(d_second(u, P), beta, P));

  Cochain open_chain = Cochain::make(0, 1, C);
  open_chain.def = FFElt::x(C);
  try {
    coboundary_witness_01(open_chain, P);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == Err::NotClosed);
  }

  Cochain wiggly = Cochain::make(0, 1, C);
  wiggly.exc.emplace(inf, LaurentSeries::monomial(C->k->one(), 2, P));
  try {
    coboundary_witness_01(wiggly, P);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == Err::NotClosed);
  }

  // closed but non-constant components exist mod p and are reported as such
  auto C5 = elliptic_f5();
  Place inf5 = infinite_places(C5).at(0);
  Cochain frob = Cochain::make(0, 1, C5);
  frob.exc.emplace(inf5, LaurentSeries::monomial(C5->k->one(), 5, 12));
  try {
    coboundary_witness_01(frob, 12);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == Err::UnsupportedInput);
  }
}

TEST_CASE("excluded places give partial sections") {
  auto C = line_q();
  const int P = 8;
  Place zero = places_over(C, Poly::from_ints(C->k, {0, 1})).at(0);
  FFElt invx = FFElt::x(C).inverse();

  Cochain u = Cochain::make(0, 0, C);
  u.gen = invx;
  u.def = invx;
  u.excluded.insert(zero);
  validate_cochain(u);  // the pole sits at the excluded place

  Cochain d2 = d_second(u, P);
  CHECK(d2.excluded.count(zero) == 1);
  CHECK(cochain_is_zero(d2, P));

  // partial sections cannot be integrated
  Cochain w = Cochain::make(1, 1, C);
  w.excluded.insert(zero);
  try {
    integrate(w);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == Err::InvalidSpec);
  }

  // exceptions are not allowed at excluded places in the q = 0 row
  Cochain bad = Cochain::make(0, 0, C);
  bad.excluded.insert(zero);
  bad.exc.emplace(zero, LaurentSeries::zero(zero.residue_field, P));
  CHECK_THROWS_AS(validate_cochain(bad), error);
}
