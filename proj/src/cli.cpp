#include "adelic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "adelic/charp.hpp"
#include "adelic/derham.hpp"
#include "adelic/io.hpp"

namespace adelic {

namespace {

const char* err_name(Err c) {
  switch (c) {
    case Err::DivisionByZero: return "division-by-zero";
    case Err::FieldMismatch: return "field-mismatch";
    case Err::NotInvertible: return "not-invertible";
    case Err::ReducibleModulus: return "reducible-modulus";
    case Err::DegreeCap: return "degree-cap";
    case Err::InsufficientPrecision: return "insufficient-precision";
    case Err::NonzeroResidue: return "nonzero-residue";
    case Err::CharPObstruction: return "char-p-obstruction";
    case Err::NotSecondKind: return "not-second-kind";
    case Err::NotClosed: return "not-closed";
    case Err::HenselFailure: return "hensel-failure";
    case Err::UnsupportedCharacteristic: return "unsupported-characteristic";
    case Err::UnsupportedInput: return "unsupported-input";
    case Err::InvalidSpec: return "invalid-spec";
    case Err::Internal: return "internal";
  }
  return "internal";
}

struct CommonOpts {
  std::string spec;
  int precision = 12;
  std::uint64_t seed = 1;
  std::string out;
  bool json = false;
};

void attach_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--spec", o.spec, "curve spec path (JSON)")->required();
  cmd->add_option("--precision", o.precision, "working precision, at least 4");
  cmd->add_option("--seed", o.seed, "seed recorded in the report");
  cmd->add_option("--out", o.out, "also write the JSON report to this path");
  cmd->add_flag("--json", o.json, "print the JSON report instead of the summary");
}

CurvePtr open_curve(const CommonOpts& o) {
  if (o.precision < 4) fail(Err::InvalidSpec, "precision must be at least 4");
  return load_curve_spec(o.spec);
}

Json base_report(const char* command, const CommonOpts& o, const CurvePtr& C) {
  Json rep;
  rep["command"] = command;
  rep["curve"] = curve_spec_document(C);
  rep["precision"] = o.precision;
  rep["seed"] = o.seed;
  rep["checks"] = Json::array();
  return rep;
}

void push_check(Json& rep, const std::string& name, bool pass) {
  rep["checks"].push_back(Json{{"name", name}, {"status", pass ? "pass" : "fail"}});
}

void finalize(Json& rep) {
  bool ok = true;
  for (const Json& c : rep["checks"]) ok = ok && c["status"] == "pass";
  rep["ok"] = ok;
}

// largest pole order of g dx over all places
int differential_depth(const FFElt& g) {
  int d = 0;
  if (g.is_zero()) return 0;
  for (const Place& pl : poles_of_differential(g)) d = std::max(d, -order_at_differential(g, pl));
  return d;
}

bool degree1_is_zero(const Degree1& u, int precision) {
  return cochain_is_zero(u.a10, precision) && cochain_is_zero(u.a01, precision);
}

Degree1 diagonal_chain(const FFElt& g) {
  Cochain a10 = Cochain::make(1, 0, g.curve());
  a10.gen = g;
  a10.def = g;
  return {a10, Cochain::make(0, 1, g.curve())};
}

// --- subcommands --------------------------------------------------------

Json run_h1dr(const CommonOpts& o) {
  CurvePtr C = open_curve(o);
  Json rep = base_report("h1dr", o, C);
  std::vector<FFElt> skb = second_kind_basis(C);
  std::vector<FFElt> hb = holomorphic_basis(C);
  rep["genus"] = C->genus;
  rep["h1_dimension"] = static_cast<int>(skb.size());
  rep["hodge_dimension"] = static_cast<int>(hb.size());
  Json basis = Json::array();
  for (const FFElt& b : skb) basis.push_back("(" + b.to_string() + ") dx");
  rep["basis"] = std::move(basis);
  push_check(rep, "h1-dimension-is-2g", static_cast<int>(skb.size()) == 2 * C->genus);
  push_check(rep, "hodge-dimension-is-g", static_cast<int>(hb.size()) == C->genus);
  finalize(rep);
  return rep;
}

Json run_pairing(const CommonOpts& o, const std::string& w1, const std::string& w2, bool gram) {
  CurvePtr C = open_curve(o);
  Json rep = base_report("pairing", o, C);
  FFElt g1 = parse_form(C, w1);
  FFElt g2 = parse_form(C, w2);
  for (const auto& [g, w] : {std::pair(g1, w1), std::pair(g2, w2)})
    if (classify_differential(g) == DifferentialKind::NotSecondKind)
      fail(Err::NotSecondKind, "form is not of the second kind: " + w);
  int room = std::max(o.precision, 2 * (differential_depth(g1) + differential_depth(g2)) + 4);
  Degree1 c1 = cocycle_from_second_kind(g1, room);
  Degree1 c2 = cocycle_from_second_kind(g2, room);
  rep["value"] = serialize_scalar(pairing(c1, c2, room));
  push_check(rep, "cocycles-closed", cochain_is_zero(total_d1(c1, room), room) &&
                                         cochain_is_zero(total_d1(c2, room), room));
  if (gram) {
    int depth = 0;
    for (const FFElt& b : second_kind_basis(C)) depth = std::max(depth, differential_depth(b));
    int groom = std::max(o.precision, 4 * depth + 4);
    std::vector<Degree1> basis = basis_cocycles(C, groom);
    Json mat = Json::array();
    for (const Degree1& a : basis) {
      Json row = Json::array();
      for (const Degree1& b : basis) row.push_back(serialize_scalar(pairing(a, b, groom)));
      mat.push_back(std::move(row));
    }
    rep["gram"] = std::move(mat);
  }
  finalize(rep);
  return rep;
}

Json run_residues(const CommonOpts& o, const std::string& w) {
  CurvePtr C = open_curve(o);
  Json rep = base_report("residues", o, C);
  FFElt g = parse_form(C, w);
  Json rows = Json::array();
  Scalar sum = C->k->zero();
  for (const Place& pl : poles_of_differential(g)) {
    Scalar r = residue_at_place(g, pl);
    sum = sum + r;
    rows.push_back(Json{{"place", pl.id},
                        {"order", order_at_differential(g, pl)},
                        {"residue", serialize_scalar(r)}});
  }
  rep["residues"] = std::move(rows);
  rep["sum"] = serialize_scalar(sum);
  push_check(rep, "residue-theorem-sum-zero", sum.is_zero());
  finalize(rep);
  return rep;
}

Json run_cartier(const CommonOpts& o, const std::string& w) {
  CurvePtr C = open_curve(o);
  if (C->k->characteristic() == 0)
    fail(Err::UnsupportedCharacteristic, "the Cartier operation needs positive characteristic");
  Json rep = base_report("cartier", o, C);
  FFElt g = parse_form(C, w);
  FFElt cg = cartier(g);
  FFElt ci = cartier_inverse(g);
  rep["cartier"] = "(" + cg.to_string() + ") dx";
  rep["cartier_inverse"] = "(" + ci.to_string() + ") dx";
  push_check(rep, "cartier-splits-inverse", cartier(ci) == g);
  push_check(rep, "cartier-kills-exact", cartier(g.derivative()).is_zero());
  finalize(rep);
  return rep;
}

Json run_di_check(const CommonOpts& o) {
  CurvePtr C = open_curve(o);
  if (C->k->characteristic() == 0)
    fail(Err::UnsupportedCharacteristic, "the decomposition suite needs positive characteristic");
  Json rep = base_report("di-check", o, C);
  std::uint64_t seed_b = o.seed + 1;
  rep["seed_b"] = seed_b;
  LiftFamily A = random_family(C, o.seed);
  LiftFamily B = random_family(C, seed_b);

  std::vector<FFElt> forms = {FFElt::one(C), FFElt::x(C)};
  std::vector<std::string> names = {"1 dx", "x dx"};
  QuasiIsoReport q = verify_quasi_iso(forms, A, B, o.precision);
  for (size_t i = 0; i < q.forms.size(); ++i) {
    const QuasiIsoFormReport& fr = q.forms[i];
    push_check(rep, "splitting-closed[" + names[i] + ", family-a]", fr.closed_a);
    push_check(rep, "splitting-closed[" + names[i] + ", family-b]", fr.closed_b);
    push_check(rep, "coboundary-witness[" + names[i] + ", family-a]", fr.witness_a);
    push_check(rep, "coboundary-witness[" + names[i] + ", family-b]", fr.witness_b);
    push_check(rep, "pairing-independence[" + names[i] + "]", fr.agree);
  }
  rep["witness_dx_family_a"] = serialize_cochain(homotopy_witness(forms[0], A, o.precision));

  if (!C->is_p1) {
    Degree1 target = diagonal_chain(canonical_dy_multiplier(C));
    Degree1 dy_a = splitting_map_dy(A, o.precision);
    Degree1 dy_b = splitting_map_dy(B, o.precision);
    for (const auto& [dy, fam, tag] :
         {std::tuple(&dy_a, &A, "a"), std::tuple(&dy_b, &B, "b")}) {
      push_check(rep, std::string("splitting-closed[dy, family-") + tag + "]",
                 cochain_is_zero(total_d1(*dy, o.precision), o.precision));
      Degree1 gap = add(add(*dy, negate(target), o.precision),
                        negate(total_d0(homotopy_adele_y(*fam, o.precision), o.precision)),
                        o.precision);
      push_check(rep, std::string("coboundary-witness[dy, family-") + tag + "]",
                 degree1_is_zero(gap, o.precision));
    }
    bool dy_agree = true;
    Degree1 dgap = add(dy_a, negate(dy_b), o.precision);
    for (const Degree1& cb : basis_cocycles(C, o.precision))
      dy_agree = dy_agree && pairing(dgap, cb, o.precision).is_zero();
    push_check(rep, "pairing-independence[dy]", dy_agree);
  }
  finalize(rep);
  return rep;
}

Json run_example1(const CommonOpts& o, long count) {
  CurvePtr C = open_curve(o);
  if (C->k->characteristic() != 0)
    fail(Err::InvalidSpec, "the coboundary sampling runs in characteristic zero");
  if (C->genus == 0) fail(Err::InvalidSpec, "the sampling needs positive genus");
  if (count < 0) fail(Err::InvalidSpec, "sample count must not be negative");
  Json rep = base_report("example1", o, C);

  std::vector<Place> pool;
  for (long a = -2; a <= 2; ++a) {
    Poly center = Poly::x(C->k) - Poly::constant(C->k->from_int(a));
    for (const Place& pl : places_over(C, center)) pool.push_back(pl);
  }
  Rng rng(o.seed);
  long found = 0;
  for (long n = 0; n < count; ++n) {
    Cochain beta = Cochain::make(0, 1, C);
    beta.def = FFElt::constant(C, C->k->from_int(rng.range(-9, 9)));
    long extras = rng.range(0, 2);
    for (long j = 0; j < extras; ++j) {
      const Place& pl = pool[static_cast<size_t>(rng.range(0, static_cast<long>(pool.size()) - 1))];
      beta.exc.insert_or_assign(
          pl, LaurentSeries::constant(pl.residue_field->from_int(rng.range(-9, 9)), o.precision));
    }
    Cochain u = coboundary_witness_01(beta, o.precision);
    Degree1 du = total_d0(u, o.precision);
    if (cochain_is_zero(du.a10, o.precision) &&
        cochain_is_zero(add(du.a01, negate(beta), o.precision), o.precision))
      ++found;
  }
  rep["samples"] = count;
  rep["witnesses_found"] = found;
  rep["hodge_dimension"] = C->genus;
  rep["antiholomorphic_dimension"] = 0;
  rep["h1_dimension"] = 2 * C->genus;
  if (count == 0) rep["warning"] = "no samples requested; the witness check is vacuous";
  push_check(rep, "all-witnesses-found", found == count);
  push_check(rep, "naive-sum-underfills-h1", C->genus + 0 < 2 * C->genus);
  finalize(rep);
  return rep;
}

// --- plumbing -----------------------------------------------------------

int emit(const Json& rep, const CommonOpts& o, std::ostream& out) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) fail(Err::InvalidSpec, "cannot write report to " + o.out);
    f << rep.dump(2) << "\n";
  }
  if (o.json) {
    out << rep.dump(2) << "\n";
  } else {
    out << rep["command"].get<std::string>() << " on " << rep["curve"].dump() << "\n";
    for (const auto& [key, value] : rep.items()) {
      if (key == "command" || key == "curve" || key == "checks" || key == "ok") continue;
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    for (const Json& c : rep["checks"])
      out << (c["status"] == "pass" ? "[pass] " : "[FAIL] ") << c["name"].get<std::string>()
          << "\n";
    out << (rep["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
  }
  return rep["ok"].get<bool>() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"exact adele computations on smooth projective curves"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string w1, w2;
  bool gram = false;
  long count = 30;
  std::function<Json()> action;

  CLI::App* h1dr = app.add_subcommand("h1dr", "de Rham cohomology dimensions and basis");
  attach_common(h1dr, o);
  h1dr->callback([&] { action = [&] { return run_h1dr(o); }; });

  CLI::App* pairing = app.add_subcommand("pairing", "residue pairing of two second-kind forms");
  attach_common(pairing, o);
  pairing->add_option("omega1", w1, "multiplier of the first form g dx")->required();
  pairing->add_option("omega2", w2, "multiplier of the second form g dx")->required();
  pairing->add_flag("--gram", gram, "include the Gram matrix of the basis cocycles");
  pairing->callback([&] { action = [&] { return run_pairing(o, w1, w2, gram); }; });

  CLI::App* residues = app.add_subcommand("residues", "residues of a form at all of its poles");
  attach_common(residues, o);
  residues->add_option("omega", w1, "multiplier of the form g dx")->required();
  residues->callback([&] { action = [&] { return run_residues(o, w1); }; });

  CLI::App* cartier = app.add_subcommand("cartier", "Cartier image and preimage of a form");
  attach_common(cartier, o);
  cartier->add_option("omega", w1, "multiplier of the form g dx")->required();
  cartier->callback([&] { action = [&] { return run_cartier(o, w1); }; });

  CLI::App* dicheck = app.add_subcommand("di-check", "Frobenius-lifting decomposition suite");
  attach_common(dicheck, o);
  dicheck->callback([&] { action = [&] { return run_di_check(o); }; });

  CLI::App* example1 = app.add_subcommand("example1", "coboundary witnesses for closed (0,1) samples");
  attach_common(example1, o);
  example1->add_option("--count", count, "number of seeded samples");
  example1->callback([&] { action = [&] { return run_example1(o, count); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Json rep = action();
    return emit(rep, o, out);
  } catch (const error& e) {
    Json err{{"error", Json{{"code", err_name(e.code)}, {"message", e.what()}}}};
    out << err.dump(2) << "\n";
    return 2;
  }
}

}  // namespace adelic
