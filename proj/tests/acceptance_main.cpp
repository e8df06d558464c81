// Acceptance gate: one line per criterion, nonzero exit on any failure.
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "adelic/charp.hpp"
#include "adelic/cli.hpp"
#include "adelic/derham.hpp"

using namespace adelic;

namespace {

CurvePtr elliptic(const RingPtr& k) {
  return make_hyperelliptic(Poly::from_ints(k, {0, -1, 0, 1}));  // y^2 = x^3 - x
}

CurvePtr genus2_q() {
  return make_hyperelliptic(Poly::from_ints(Ring::rationals(), {0, -1, 0, 0, 0, 1}));
}

CurvePtr line_q() { return make_projective_line(Ring::rationals()); }

std::vector<Poly> pool_for(const CurvePtr& C) {
  const RingPtr& k = C->k;
  std::vector<Poly> pool = {Poly::from_ints(k, {0, 1}), Poly::from_ints(k, {-1, 1})};
  if (C->is_p1) pool.push_back(Poly::from_ints(k, {1, 0, 1}));
  else pool.push_back(Poly::from_ints(k, {2, 1}));
  return pool;
}

// nonzero rational function built from pool factors and (off the line) y
FFElt rand_pool_element(Rng& rng, const CurvePtr& C, const std::vector<Poly>& pool, int ymax) {
  FFElt g = FFElt::constant(C, C->k->from_int(rng.range(1, 2)));
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

LaurentSeries rand_series(Rng& rng, const RingPtr& k, int min_exp, int prec) {
  std::vector<Scalar> cs;
  for (int e = min_exp; e < prec; ++e) cs.push_back(k->from_int(rng.range(-3, 3)));
  return LaurentSeries(k, min_exp, cs, prec);
}

Cochain rand_00(Rng& rng, const CurvePtr& C, const std::vector<Poly>& pool, int P) {
  Cochain u = Cochain::make(0, 0, C);
  u.gen = rand_pool_element(rng, C, pool, 1);
  u.def = rand_pool_element(rng, C, pool, 1);
  for (const Place& pl : poles_of_element(u.def))
    u.exc.emplace(pl, rand_series(rng, pl.residue_field, 0, P));
  return u;
}

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

bool require(bool ok, const char* what) {
  if (!ok) std::cout << "    failed: " << what << "\n";
  return ok;
}

// 1. H^1_DR has dimension 2g and the holomorphic subspace dimension g
bool criterion_dimensions() {
  CurvePtr E = elliptic(Ring::rationals());
  CurvePtr G2 = genus2_q();
  bool ok = require(second_kind_basis(E).size() == 2, "elliptic H1 dimension");
  ok = require(holomorphic_basis(E).size() == 1, "elliptic Hodge dimension") && ok;
  ok = require(second_kind_basis(G2).size() == 4, "genus-2 H1 dimension") && ok;
  ok = require(holomorphic_basis(G2).size() == 2, "genus-2 Hodge dimension") && ok;
  return ok;
}

// 2. residues of 100 random differentials per curve sum to zero exactly
bool criterion_residue_theorem() {
  bool ok = true;
  std::uint64_t seed = 1002;
  for (const CurvePtr& C :
       {line_q(), elliptic(Ring::rationals()), elliptic(Ring::prime_field(5))}) {
    Rng rng(seed++);
    std::vector<Poly> pool = pool_for(C);
    for (int trial = 0; trial < 100; ++trial) {
      FFElt g = rand_pool_element(rng, C, pool, 2);
      Scalar sum = C->k->zero();
      for (const Place& pl : poles_of_differential(g)) sum = sum + residue_at_place(g, pl);
      ok = require(sum.is_zero(), "residue sum") && ok;
    }
  }
  return ok;
}

// 3. the two differentials anticommute and integration kills coboundaries
bool criterion_complex_axioms() {
  const int P = 7;
  bool ok = true;
  for (const CurvePtr& C : {line_q(), elliptic(Ring::prime_field(5))}) {
    std::vector<Poly> pool = pool_for(C);
    Rng rng(1003 + (C->is_p1 ? 1 : 0));
    for (int trial = 0; trial < 50; ++trial) {
      Cochain u = rand_00(rng, C, pool, P);
      validate_cochain(u);
      Cochain anti = add(d_second(d_prime(u), P), d_prime(d_second(u, P)), P);
      ok = require(cochain_is_zero(anti, P), "anticommutator on a (0,0) chain") && ok;
      ok = require(cochain_is_zero(total_d1(total_d0(u, P), P), P), "D squared") && ok;
      Degree1 v{rand_10(rng, C, pool, P), rand_01(rng, C, pool, P)};
      ok = require(integrate(total_d1(v, P)).is_zero(), "integrate of a coboundary") && ok;
    }
  }
  return ok;
}

// 4. first-kind cocycles pair to zero and the pairing is blind to coboundaries
bool criterion_isotropy_and_descent() {
  bool ok = true;
  const int R = 24;
  for (const CurvePtr& C : {elliptic(Ring::rationals()), genus2_q()}) {
    std::vector<Place> slots = infinite_places(C);
    for (const Place& pl : places_over(C, Poly::x(C->k))) slots.push_back(pl);
    std::vector<Degree1> hol;
    for (const FFElt& g : holomorphic_basis(C)) hol.push_back(cocycle_with_slots(g, slots, R));
    for (const Degree1& a : hol)
      for (const Degree1& b : hol)
        ok = require(pairing(a, b, R).is_zero(), "first-kind isotropy") && ok;
  }

  CurvePtr E = elliptic(Ring::rationals());
  std::vector<Poly> pool = pool_for(E);
  Degree1 alpha = cocycle_from_second_kind(FFElt::y(E).inverse(), R);
  Degree1 beta = cocycle_from_second_kind(FFElt::x(E) / FFElt::y(E), R);
  Scalar base = pairing(alpha, beta, R);
  ok = require(!base.is_zero(), "reference pairing nonzero") && ok;
  Rng rng(1004);
  for (int trial = 0; trial < 50; ++trial) {
    Degree1 du = total_d0(rand_00(rng, E, pool, R), R);
    Scalar value = trial % 2 == 0 ? pairing(add(alpha, du, R), beta, R)
                                  : pairing(alpha, add(beta, du, R), R);
    ok = require(Scalar::cmp(value, base) == 0, "descent under a coboundary perturbation") && ok;
  }
  return ok;
}

// 5. every closed (0,1) sample bounds, so the naive Hodge sum underfills H^1
bool criterion_witnesses() {
  CurvePtr E = elliptic(Ring::rationals());
  const int P = 10;
  std::vector<Place> pool;
  for (long a = -2; a <= 2; ++a) {
    Poly center = Poly::x(E->k) - Poly::constant(E->k->from_int(a));
    for (const Place& pl : places_over(E, center)) pool.push_back(pl);
  }
  Rng rng(1005);
  bool ok = true;
  for (int trial = 0; trial < 30; ++trial) {
    Cochain beta = Cochain::make(0, 1, E);
    beta.def = FFElt::constant(E, E->k->from_int(rng.range(-9, 9)));
    long extras = rng.range(0, 2);
    for (long j = 0; j < extras; ++j) {
      const Place& pl = pool[static_cast<size_t>(rng.range(0, static_cast<long>(pool.size()) - 1))];
      beta.exc.insert_or_assign(
          pl, LaurentSeries::constant(pl.residue_field->from_int(rng.range(-9, 9)), P));
    }
    Cochain u = coboundary_witness_01(beta, P);
    Degree1 du = total_d0(u, P);
    bool witnessed =
        cochain_is_zero(du.a10, P) && cochain_is_zero(add(du.a01, negate(beta), P), P);
    ok = require(witnessed, "coboundary witness") && ok;
  }
  ok = require(holomorphic_basis(E).size() + 0 < second_kind_basis(E).size(),
               "naive sum below the full dimension") &&
       ok;
  return ok;
}

// 6. the pinned pairing value and its rescaling to a dual pair
bool criterion_golden_pairing() {
  CurvePtr E = elliptic(Ring::rationals());
  const int P = 10;
  Degree1 alpha = cocycle_from_second_kind(FFElt::y(E).inverse(), P);
  Degree1 beta = cocycle_from_second_kind(FFElt::x(E) / FFElt::y(E), P);
  bool ok = require(cochain_is_zero(total_d1(alpha, P), P), "alpha closed");
  ok = require(cochain_is_zero(total_d1(beta, P), P), "beta closed") && ok;
  Scalar v = pairing(alpha, beta, P);
  ok = require(v.rat_value() == Rat(4), "pairing value 4") && ok;

  Cochain quarter = Cochain::make(0, 0, E);
  quarter.gen = FFElt::constant(E, E->k->from_rat(Rat(1, 4)));
  quarter.def = quarter.gen;
  Degree1 beta_hat = cup(quarter, beta, P);
  ok = require(cochain_is_zero(total_d1(beta_hat, P), P), "rescaled cocycle closed") && ok;
  ok = require(pairing(alpha, beta_hat, P).rat_value() == Rat(1), "dual pairing value 1") && ok;
  return ok;
}

// 7. Cartier: section identity and the logarithmic law, p in {3, 5, 7}
bool criterion_cartier() {
  bool ok = true;
  for (long p : {3L, 5L, 7L}) {
    RingPtr k = Ring::prime_field(p);
    for (const CurvePtr& C : {make_projective_line(k), elliptic(k)}) {
      std::vector<Poly> pool = pool_for(C);
      Rng rng(1007 + static_cast<std::uint64_t>(p));
      for (int trial = 0; trial < 25; ++trial) {
        FFElt g = rand_pool_element(rng, C, pool, 2);
        ok = require(cartier(cartier_inverse(g)) == g, "section identity") && ok;
        FFElt gp = FFElt::one(C);
        for (long i = 0; i + 1 < p; ++i) gp = gp * g;
        ok = require(cartier(gp * g.derivative()) == g.derivative(), "logarithmic law") && ok;
      }
    }
  }
  return ok;
}

// 8. Frobenius-lifting decomposition with two independent seeded families
bool criterion_decomposition() {
  bool ok = true;
  // the projective line in characteristic 3
  {
    CurvePtr C = make_projective_line(Ring::prime_field(3));
    const int P = 8;
    LiftFamily A = random_family(C, 2024), B = random_family(C, 4048);
    QuasiIsoReport q =
        verify_quasi_iso({FFElt::one(C), FFElt::x(C)}, A, B, P);
    for (const QuasiIsoFormReport& fr : q.forms) {
      ok = require(fr.closed_a && fr.closed_b, "splittings closed on the line") && ok;
      ok = require(fr.witness_a && fr.witness_b, "homotopy witnesses on the line") && ok;
      ok = require(fr.agree, "lifting independence on the line") && ok;
    }
  }
  // the elliptic curve in characteristic 5, including the dy generator
  {
    CurvePtr C = elliptic(Ring::prime_field(5));
    const int P = 10;
    LiftFamily A = random_family(C, 2024), B = random_family(C, 4048);
    QuasiIsoReport q =
        verify_quasi_iso({FFElt::one(C), FFElt::x(C)}, A, B, P);
    for (const QuasiIsoFormReport& fr : q.forms) {
      ok = require(fr.closed_a && fr.closed_b, "splittings closed on the curve") && ok;
      ok = require(fr.witness_a && fr.witness_b, "homotopy witnesses on the curve") && ok;
      ok = require(fr.agree, "lifting independence on the curve") && ok;
    }

    Degree1 target = [&] {
      Cochain a10 = Cochain::make(1, 0, C);
      a10.gen = canonical_dy_multiplier(C);
      a10.def = a10.gen;
      return Degree1{a10, Cochain::make(0, 1, C)};
    }();
    std::vector<Degree1> basis = basis_cocycles(C, P);
    Degree1 dy_a = splitting_map_dy(A, P), dy_b = splitting_map_dy(B, P);
    for (const auto& [dy, fam] : {std::pair(&dy_a, &A), std::pair(&dy_b, &B)}) {
      ok = require(cochain_is_zero(total_d1(*dy, P), P), "dy splitting closed") && ok;
      Degree1 gap = add(add(*dy, negate(target), P),
                        negate(total_d0(homotopy_adele_y(*fam, P), P)), P);
      ok = require(cochain_is_zero(gap.a10, P) && cochain_is_zero(gap.a01, P),
                   "dy homotopy witness") &&
           ok;
    }
    Degree1 dgap = add(dy_a, negate(dy_b), P);
    for (const Degree1& cb : basis)
      ok = require(pairing(dgap, cb, P).is_zero(), "dy lifting independence") && ok;
  }
  return ok;
}

// 9. identical spec + seed + precision produce byte-identical reports
bool criterion_determinism() {
  namespace fs = std::filesystem;
  fs::path spec5 = fs::temp_directory_path() / "acc_gold_f5.json";
  fs::path specq = fs::temp_directory_path() / "acc_ell_q.json";
  std::ofstream(spec5) << R"({"characteristic": 5, "model": {"hyperelliptic_f": [0, -1, 0, 1]}})";
  std::ofstream(specq) << R"({"characteristic": 0, "model": {"hyperelliptic_f": ["-1", "0", "0", "1"]}})";

  auto run = [](const std::vector<std::string>& args) {
    std::ostringstream out;
    int rc = run_cli(args, out);
    return std::pair(rc, out.str());
  };
  std::vector<std::string> di = {"di-check", "--spec", spec5.string(),
                                 "--precision", "10", "--seed", "5", "--json"};
  auto [rc1, rep1] = run(di);
  auto [rc2, rep2] = run(di);
  bool ok = require(rc1 == 0 && rc2 == 0, "decomposition suite exit status");
  ok = require(rep1 == rep2, "decomposition reports byte-identical") && ok;

  std::vector<std::string> h1 = {"h1dr", "--spec", specq.string(), "--json"};
  auto [rc3, rep3] = run(h1);
  auto [rc4, rep4] = run(h1);
  ok = require(rc3 == 0 && rc4 == 0, "cohomology exit status") && ok;
  ok = require(rep3 == rep4, "cohomology reports byte-identical") && ok;
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* description;
    std::function<bool()> check;
  };
  const std::vector<Criterion> criteria = {
      {"de Rham dimensions 2g and Hodge dimensions g on the reference curves",
       criterion_dimensions},
      {"residue sums vanish for 100 random differentials on each reference curve",
       criterion_residue_theorem},
      {"the adele differentials anticommute and integration kills coboundaries",
       criterion_complex_axioms},
      {"first-kind cocycles pair to zero and the pairing descends to classes",
       criterion_isotropy_and_descent},
      {"every closed (0,1) sample bounds, so the naive Hodge sum underfills H1",
       criterion_witnesses},
      {"the pinned elliptic pairing equals 4 and rescales to a dual pair",
       criterion_golden_pairing},
      {"the Cartier operation splits its inverse and satisfies the logarithmic law",
       criterion_cartier},
      {"Frobenius-lifting splittings are closed, witnessed, and lift-independent",
       criterion_decomposition},
      {"identical spec, seed, and precision give byte-identical reports",
       criterion_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    bool ok = false;
    std::string note;
    try {
      ok = criteria[i].check();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].description << note
              << "\n";
  }
  if (failures) std::cout << failures << " criteria failed\n";
  else std::cout << "all criteria passed\n";
  return failures == 0 ? 0 : 1;
}
