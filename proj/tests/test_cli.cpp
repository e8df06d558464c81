#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adelic/cli.hpp"
#include "adelic/io.hpp"
#include "doctest.h"

using namespace adelic;

namespace {

std::string write_spec(const std::string& name, const std::string& text) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream f(p);
  f << text;
  return p.string();
}

int run(const std::vector<std::string>& args, std::string* text = nullptr) {
  std::ostringstream out;
  int rc = run_cli(args, out);
  if (text) *text = out.str();
  return rc;
}

const std::string kP1Q = R"({"characteristic": 0, "model": "P1"})";
const std::string kP1F3 = R"({"characteristic": 3, "model": "P1"})";
const std::string kEllQ = R"({"characteristic": 0, "model": {"hyperelliptic_f": ["-1", "0", "0", "1"]}})";
const std::string kGoldQ = R"({"characteristic": 0, "model": {"hyperelliptic_f": ["0", "-1", "0", "1"]}})";
const std::string kGoldF5 = R"({"characteristic": 5, "model": {"hyperelliptic_f": [0, -1, 0, 1]}})";
const std::string kGenus2Q = R"({"characteristic": 0, "model": {"hyperelliptic_f": ["0", "-1", "0", "0", "0", "1"]}})";

}  // namespace

TEST_CASE("curve specs parse and bad ones are rejected") {
  CurvePtr P1 = parse_curve_spec_text(kP1Q);
  CHECK(P1->is_p1);
  CHECK(P1->genus == 0);
  CHECK(P1->k->characteristic() == 0);

  CurvePtr E = parse_curve_spec_text(kEllQ);
  CHECK(!E->is_p1);
  CHECK(E->genus == 1);
  CHECK(E->f.to_string() == "x^3 - 1");

  CurvePtr G2 = parse_curve_spec_text(kGenus2Q);
  CHECK(G2->genus == 2);

  CurvePtr E5 = parse_curve_spec_text(kGoldF5);
  CHECK(E5->k->characteristic() == Int(5));
  CHECK(E5->f.to_string() == "x^3 + 4*x");

  CHECK_THROWS_WITH_AS(parse_curve_spec_text("{not json"), doctest::Contains("not valid JSON"),
                       error);
  CHECK_THROWS_AS(parse_curve_spec_text(R"({"model": "P1"})"), error);
  CHECK_THROWS_AS(parse_curve_spec_text(R"({"characteristic": 0})"), error);
  CHECK_THROWS_WITH_AS(parse_curve_spec_text(R"({"characteristic": 2, "model": "P1"})"),
                       doctest::Contains("characteristic 2"), error);
  CHECK_THROWS_WITH_AS(parse_curve_spec_text(R"({"characteristic": 0, "model": "P2"})"),
                       doctest::Contains("unknown model"), error);
  CHECK_THROWS_AS(parse_curve_spec_text(R"({"characteristic": 0, "model": {"weierstrass": []}})"),
                  error);
  CHECK_THROWS_WITH_AS(
      parse_curve_spec_text(R"({"characteristic": 0, "model": {"hyperelliptic_f": ["zebra"]}})"),
      doctest::Contains("unreadable coefficient"), error);

  // round trip through the canonical document
  CHECK(parse_curve_spec(curve_spec_document(E))->f == E->f);
  CHECK(curve_spec_document(E5)["model"]["hyperelliptic_f"] == Json::array({0, 4, 0, 1}));
}

TEST_CASE("form expressions parse with the usual precedence") {
  CurvePtr E = parse_curve_spec_text(kEllQ);
  FFElt x = FFElt::x(E), y = FFElt::y(E), one = FFElt::one(E);
  Scalar half = E->k->from_rat(Rat(3, 2));

  CHECK(parse_form(E, "x") == x);
  CHECK(parse_form(E, "y") == y);
  CHECK(parse_form(E, "1/y") == one / y);
  CHECK(parse_form(E, "x*x + 3/2") == x * x + FFElt::constant(E, half));
  CHECK(parse_form(E, "(x + y) * x") == (x + y) * x);
  CHECK(parse_form(E, "-x - -y") == y - x);
  CHECK(parse_form(E, " 12 * x / y ") == FFElt::constant(E, E->k->from_int(12)) * x / y);

  CHECK_THROWS_WITH_AS(parse_form(E, "x +"), doctest::Contains("ends unexpectedly"), error);
  CHECK_THROWS_WITH_AS(parse_form(E, "(x"), doctest::Contains("missing ')'"), error);
  CHECK_THROWS_WITH_AS(parse_form(E, "x + @"), doctest::Contains("unexpected character"), error);
  CHECK_THROWS_WITH_AS(parse_form(E, "x^2"), doctest::Contains("trailing input"), error);
  CHECK_THROWS_WITH_AS(parse_form(E, "x y"), doctest::Contains("trailing input"), error);
  CHECK_THROWS_AS(parse_form(E, "1/0"), error);

  CurvePtr P1 = parse_curve_spec_text(kP1Q);
  CHECK_THROWS_AS(parse_form(P1, "y"), error);
}

TEST_CASE("h1dr reports the expected dimensions") {
  std::string ell = write_spec("cli_ell_q.json", kEllQ);
  std::string g2 = write_spec("cli_g2_q.json", kGenus2Q);
  std::string p1 = write_spec("cli_p1_q.json", kP1Q);

  std::string text;
  CHECK(run({"h1dr", "--spec", ell, "--json"}, &text) == 0);
  Json rep = Json::parse(text);
  CHECK(rep["genus"] == 1);
  CHECK(rep["h1_dimension"] == 2);
  CHECK(rep["hodge_dimension"] == 1);
  CHECK(rep["ok"] == true);

  CHECK(run({"h1dr", "--spec", g2, "--json"}, &text) == 0);
  rep = Json::parse(text);
  CHECK(rep["h1_dimension"] == 4);
  CHECK(rep["hodge_dimension"] == 2);

  CHECK(run({"h1dr", "--spec", p1, "--json"}, &text) == 0);
  rep = Json::parse(text);
  CHECK(rep["h1_dimension"] == 0);
  CHECK(rep["basis"].empty());
}

TEST_CASE("pairing computes the golden value and rejects third-kind forms") {
  std::string gold = write_spec("cli_gold_q.json", kGoldQ);
  std::string p1 = write_spec("cli_p1_q2.json", kP1Q);

  std::string text;
  CHECK(run({"pairing", "--spec", gold, "1/y", "x/y", "--json"}, &text) == 0);
  Json rep = Json::parse(text);
  CHECK(rep["value"] == "4");

  CHECK(run({"pairing", "--spec", gold, "1/y", "x/y", "--gram", "--json"}, &text) == 0);
  rep = Json::parse(text);
  CHECK(rep["gram"] == Json::array({Json::array({"0", "4"}), Json::array({"-4", "0"})}));

  CHECK(run({"pairing", "--spec", p1, "1/x", "x"}, &text) == 2);
  Json err = Json::parse(text);
  CHECK(err["error"]["code"] == "not-second-kind");
}

TEST_CASE("residues lists poles and their residues sum to zero") {
  std::string p1 = write_spec("cli_p1_q3.json", kP1Q);
  std::string text;
  CHECK(run({"residues", "--spec", p1, "1/x", "--json"}, &text) == 0);
  Json rep = Json::parse(text);
  CHECK(rep["sum"] == "0");
  CHECK(rep["residues"].size() == 2);
  for (const Json& row : rep["residues"]) CHECK(row["order"] == -1);
  CHECK(rep["checks"].at(0)["status"] == "pass");
}

TEST_CASE("cartier splits its section and needs positive characteristic") {
  std::string f5 = write_spec("cli_gold_f5.json", kGoldF5);
  std::string q = write_spec("cli_gold_q2.json", kGoldQ);
  std::string text;
  CHECK(run({"cartier", "--spec", f5, "x + 1/y", "--json"}, &text) == 0);
  Json rep = Json::parse(text);
  CHECK(rep["ok"] == true);

  CHECK(run({"cartier", "--spec", q, "x"}, &text) == 2);
  CHECK(Json::parse(text)["error"]["code"] == "unsupported-characteristic");
}

TEST_CASE("di-check passes on both reference curves and rejects characteristic 2") {
  std::string p1f3 = write_spec("cli_p1_f3.json", kP1F3);
  std::string f5 = write_spec("cli_gold_f5b.json", kGoldF5);
  std::string f2 = write_spec("cli_p1_f2.json", R"({"characteristic": 2, "model": "P1"})");
  std::string q = write_spec("cli_p1_q4.json", kP1Q);

  std::string text;
  CHECK(run({"di-check", "--spec", p1f3, "--precision", "8", "--json"}, &text) == 0);
  Json rep = Json::parse(text);
  CHECK(rep["ok"] == true);
  CHECK(rep["checks"].size() == 10);

  CHECK(run({"di-check", "--spec", f5, "--precision", "10", "--json"}, &text) == 0);
  rep = Json::parse(text);
  CHECK(rep["ok"] == true);
  CHECK(rep["checks"].size() == 15);  // dx forms plus the dy leg

  CHECK(run({"di-check", "--spec", f2}, &text) == 2);
  CHECK(Json::parse(text)["error"]["code"] == "unsupported-characteristic");
  CHECK(run({"di-check", "--spec", q}, &text) == 2);
  CHECK(Json::parse(text)["error"]["code"] == "unsupported-characteristic");
}

TEST_CASE("example1 finds witnesses, warns on zero samples, rejects the line") {
  std::string ell = write_spec("cli_ell_q2.json", kEllQ);
  std::string p1 = write_spec("cli_p1_q5.json", kP1Q);

  std::string text;
  CHECK(run({"example1", "--spec", ell, "--count", "12", "--json"}, &text) == 0);
  Json rep = Json::parse(text);
  CHECK(rep["witnesses_found"] == 12);
  CHECK(rep["hodge_dimension"].get<int>() + rep["antiholomorphic_dimension"].get<int>() <
        rep["h1_dimension"].get<int>());

  CHECK(run({"example1", "--spec", ell, "--count", "0", "--json"}, &text) == 0);
  rep = Json::parse(text);
  CHECK(rep["warning"] == "no samples requested; the witness check is vacuous");

  CHECK(run({"example1", "--spec", p1}, &text) == 2);
  CHECK(Json::parse(text)["error"]["code"] == "invalid-spec");
}

TEST_CASE("reports are byte-identical across runs with the same spec, seed, precision") {
  std::string f5 = write_spec("cli_gold_f5c.json", kGoldF5);
  std::string ell = write_spec("cli_ell_q3.json", kEllQ);

  std::string a, b;
  CHECK(run({"di-check", "--spec", f5, "--precision", "10", "--seed", "9", "--json"}, &a) == 0);
  CHECK(run({"di-check", "--spec", f5, "--precision", "10", "--seed", "9", "--json"}, &b) == 0);
  CHECK(a == b);

  // a different seed changes the sampled families but not the verdict
  CHECK(run({"di-check", "--spec", f5, "--precision", "10", "--seed", "10", "--json"}, &b) == 0);
  CHECK(a != b);

  CHECK(run({"h1dr", "--spec", ell, "--json"}, &a) == 0);
  CHECK(run({"h1dr", "--spec", ell, "--json"}, &b) == 0);
  CHECK(a == b);
}

TEST_CASE("flag errors and unreadable specs exit with status 2") {
  std::string text;
  CHECK(run({"bogus"}, &text) == 2);
  CHECK(run({"h1dr"}, &text) == 2);  // --spec is required
  CHECK(run({"h1dr", "--spec", "/nonexistent/curve.json"}, &text) == 2);
  std::string p1 = write_spec("cli_p1_q6.json", kP1Q);
  CHECK(run({"h1dr", "--spec", p1, "--precision", "2"}, &text) == 2);
  CHECK(Json::parse(text)["error"]["message"] == "precision must be at least 4");
}
