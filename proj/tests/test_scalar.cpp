#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adelic/scalar.hpp"

using namespace adelic;

TEST_CASE("rational arithmetic is exact") {
  auto Q = Ring::rationals();
  Scalar a = Q->from_rat(make_rat(1, 3));
  Scalar b = Q->from_rat(make_rat(1, 6));
  CHECK((a + b).rat_value() == make_rat(1, 2));
  CHECK((a * b).rat_value() == make_rat(1, 18));
  CHECK((a - a).is_zero());
  CHECK((a / b).rat_value() == Rat(2));
  CHECK_THROWS_AS((void)Q->zero().inverse(), error);
}

TEST_CASE("prime field inverse: oracle by exhaustive search") {
  auto F5 = Ring::prime_field(5);
  // oracle: the unique c in {1..4} with 2*c = 1 mod 5
  Int oracle = 0;
  for (Int c = 1; c < 5; ++c)
    if (mod_floor(Int(2) * c, Int(5)) == 1) oracle = c;
  CHECK(oracle == 3);
  CHECK(F5->from_int(2).inverse().int_value() == oracle);
  for (Int a = 1; a < 5; ++a) CHECK((F5->from_int(a) * F5->from_int(a).inverse()).is_one());
}

TEST_CASE("W2 digit arithmetic: (2,0)*(2,0) = (1,1) over p=3") {
  auto W = Ring::witt2(3);
  Scalar a = W->from_int(2);
  CHECK(a.witt_a0().int_value() == 2);
  CHECK(a.witt_a1().int_value() == 0);
  Scalar sq = a * a;  // 4 = 1 + 3*1 in Z/9
  CHECK(sq.witt_a0().int_value() == 1);
  CHECK(sq.witt_a1().int_value() == 1);
  CHECK(sq.reduce_mod_p().int_value() == 1);
  CHECK_THROWS_AS((void)W->from_int(3).inverse(), error);
  CHECK(W->from_int(3).divisible_by_p());
  CHECK(W->from_int(6).divide_by_p().int_value() == 2);
  CHECK_THROWS_AS((void)W->from_int(4).divide_by_p(), error);
}

TEST_CASE("W2 -> F_p reduction is a ring homomorphism (exhaustive, p<=5)") {
  for (Int p : {2, 3, 5}) {
    auto W = Ring::witt2(p);
    auto F = Ring::prime_field(p);
    Int pp = p * p;
    for (Int a = 0; a < pp; ++a)
      for (Int b = 0; b < pp; ++b) {
        Scalar x = W->from_int(a), y = W->from_int(b);
        CHECK((x + y).reduce_mod_p() == F->from_int(a + b));
        CHECK((x * y).reduce_mod_p() == F->from_int(a * b));
        CHECK(x.witt_a0() + F->from_int(p) * x.witt_a1() == x.reduce_mod_p());
      }
  }
}

TEST_CASE("F9: p-th root of z equals -z (oracle: exhaustive cubes)") {
  auto F3 = Ring::prime_field(3);
  // F9 = F3[z]/(z^2+1)
  auto F9 = Ring::extension(F3, {F3->one(), F3->zero(), F3->one()});
  Scalar z = F9->make_ext({F3->zero(), F3->one()});
  // oracle: enumerate all 9 elements, collect those whose cube is z
  std::vector<Scalar> roots;
  for (Int i = 0; i < 9; ++i) {
    Scalar c = F9->element_from_index(i);
    if (c * c * c == z) roots.push_back(c);
  }
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == -z);
  CHECK(z.pth_root() == -z);
  CHECK(z.pth_root().pow(3) == z);
}

TEST_CASE("p-th root inverts Frobenius on every element (p<=7, deg<=3)") {
  for (Int p : {2, 3, 5, 7}) {
    for (int d : {2, 3}) {
      auto F = find_extension_field(p, d);
      Int q = F->size_if_finite();
      if (q > 400) continue;
      for (Int i = 0; i < q; ++i) {
        Scalar a = F->element_from_index(i);
        CHECK(a.pow(p).pth_root() == a);
        CHECK(a.pth_root().pow(p) == a);
      }
    }
  }
}

TEST_CASE("trace to base: Q(sqrt 2)") {
  auto Q = Ring::rationals();
  auto K = Ring::extension(Q, {Q->from_int(-2), Q->zero(), Q->one()});
  Scalar z = K->make_ext({Q->zero(), Q->one()});
  CHECK((z * z).trace_to_base().rat_value() == Rat(4));  // tr(2) = 2+2
  CHECK(z.trace_to_base().is_zero());                    // tr(z) = z + (-z)
  Scalar a = K->make_ext({Q->from_int(3), Q->from_int(5)});
  CHECK(a.trace_to_base().rat_value() == Rat(6));
  // linearity spot check
  Scalar b = K->make_ext({Q->from_int(1), Q->from_int(-2)});
  CHECK((a + b).trace_to_base() == a.trace_to_base() + b.trace_to_base());
}

TEST_CASE("trace on finite fields sums Frobenius conjugates") {
  auto F = find_extension_field(5, 3);
  for (Int i = 0; i < 125; ++i) {
    Scalar a = F->element_from_index(i);
    Scalar conj = a + a.pow(5) + a.pow(25);
    Scalar tr = a.trace_to_base();
    CHECK(F->embed(tr) == conj);
  }
}

TEST_CASE("extension construction rejects bad input") {
  auto Q = Ring::rationals();
  auto F5 = Ring::prime_field(5);
  // z^2 - 1 factors over F5
  CHECK_THROWS_AS(Ring::extension(F5, {F5->from_int(-1), F5->zero(), F5->one()}), error);
  // z^2 - 4 has a rational root
  CHECK_THROWS_AS(Ring::extension(Q, {Q->from_int(-4), Q->zero(), Q->one()}), error);
  // z^2 (repeated factor)
  CHECK_THROWS_AS(Ring::extension(Q, {Q->zero(), Q->zero(), Q->one()}), error);
  // degree cap
  std::vector<Scalar> deg7(8, Q->zero());
  deg7[7] = Q->one();
  deg7[0] = Q->from_int(2);
  CHECK_THROWS_AS(Ring::extension(Q, deg7), error);
  // non-monic
  CHECK_THROWS_AS(Ring::extension(Q, {Q->from_int(1), Q->zero(), Q->from_int(2)}), error);
  // good ones construct
  CHECK(Ring::extension(Q, {Q->from_int(-2), Q->zero(), Q->one()})->deg == 2);
  CHECK(find_extension_field(7, 6)->size_if_finite() == Int(117649));
}

TEST_CASE("square roots in finite fields (q = 1 and 3 mod 4)") {
  for (Int p : {3, 5, 7, 11, 13, 17}) {
    auto F = Ring::prime_field(p);
    int squares = 0;
    for (Int a = 0; a < p; ++a) {
      Scalar x = F->from_int(a), r = F->zero();
      bool has = F->sqrt_in_field(x, r);
      // oracle: brute force
      bool oracle = false;
      for (Int b = 0; b < p; ++b)
        if (mod_floor(b * b, p) == a) oracle = true;
      CHECK(has == oracle);
      if (has) {
        CHECK(r * r == x);
        ++squares;
      }
    }
    CHECK(Int(squares) == (p + 1) / 2);  // (p-1)/2 nonzero squares + zero
  }
  // extension field, q = 25 = 1 mod 4
  auto F25 = find_extension_field(5, 2);
  int count = 0;
  for (Int i = 0; i < 25; ++i) {
    Scalar x = F25->element_from_index(i);
    Scalar r = F25->zero();
    if (F25->sqrt_in_field(x, r)) {
      CHECK(r * r == x);
      ++count;
    }
  }
  CHECK(count == 13);
}

TEST_CASE("field laws on seeded random samples") {
  Rng rng(42);
  auto Q = Ring::rationals();
  auto F7 = Ring::prime_field(7);
  auto F8 = find_extension_field(2, 3);
  auto K = Ring::extension(Q, {Q->from_int(1), Q->from_int(1), Q->one()});  // z^2+z+1
  std::vector<RingPtr> rings = {Q, F7, F8, K};
  for (const auto& R : rings) {
    for (int trial = 0; trial < 40; ++trial) {
      auto draw = [&]() {
        if (R->kind == RingKind::Rationals) return R->from_rat(make_rat(rng.range(-9, 9), rng.range(1, 9)));
        if (R->kind == RingKind::Extension && R->base->kind == RingKind::Rationals)
          return R->make_ext({R->base->from_int(rng.range(-9, 9)), R->base->from_int(rng.range(-9, 9))});
        return R->element_from_index(rng.range(0, 31));
      };
      Scalar a = draw(), b = draw(), c = draw();
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * b == b * a);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK(a.pow(3) == a * a * a);
      if (!a.is_zero()) CHECK(a.pow(-2) == (a * a).inverse());
    }
  }
}

TEST_CASE("cmp is a deterministic total order") {
  auto F9 = find_extension_field(3, 2);
  for (Int i = 0; i < 9; ++i)
    for (Int j = 0; j < 9; ++j) {
      Scalar a = F9->element_from_index(i), b = F9->element_from_index(j);
      int c = Scalar::cmp(a, b);
      CHECK(c == -Scalar::cmp(b, a));
      CHECK((c == 0) == (a == b));
    }
}

TEST_CASE("ring identity and mismatch guards") {
  auto F5a = Ring::prime_field(5);
  auto F5b = Ring::prime_field(5);
  CHECK(F5a->same(*F5b));
  auto F7 = Ring::prime_field(7);
  CHECK_FALSE(F5a->same(*F7));
  CHECK_THROWS_AS((void)(F5a->one() + F7->one()), error);
  CHECK(find_extension_field(3, 2)->same(*find_extension_field(3, 2)));
}
