#include "adelic/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace adelic {

namespace {

Scalar coefficient_from_json(const RingPtr& k, const Json& v) {
  if (v.is_number_integer()) return k->from_int(Int(v.get<long>()));
  if (v.is_string()) {
    try {
      Rat q(v.get<std::string>());
      q.canonicalize();
      return k->from_rat(q);
    } catch (const std::exception&) {
      fail(Err::InvalidSpec, "unreadable coefficient \"" + v.get<std::string>() + "\"");
    }
  }
  fail(Err::InvalidSpec, "coefficients must be integers or decimal strings");
}

}  // namespace

CurvePtr parse_curve_spec(const Json& doc) {
  if (!doc.is_object()) fail(Err::InvalidSpec, "curve spec must be a JSON object");
  if (!doc.contains("characteristic") || !doc.contains("model"))
    fail(Err::InvalidSpec, "curve spec needs \"characteristic\" and \"model\"");
  const Json& ch = doc["characteristic"];
  if (!ch.is_number_integer() || ch.get<long>() < 0)
    fail(Err::InvalidSpec, "\"characteristic\" must be 0 or a prime");
  long p = ch.get<long>();
  if (p == 2) fail(Err::UnsupportedCharacteristic, "characteristic 2 is not supported");
  RingPtr k = p == 0 ? Ring::rationals() : Ring::prime_field(Int(p));

  const Json& model = doc["model"];
  if (model.is_string()) {
    if (model.get<std::string>() != "P1")
      fail(Err::InvalidSpec, "unknown model \"" + model.get<std::string>() + "\"");
    return make_projective_line(k);
  }
  if (!model.is_object() || !model.contains("hyperelliptic_f"))
    fail(Err::InvalidSpec, "model must be \"P1\" or {\"hyperelliptic_f\": [...]}");
  const Json& cs = model["hyperelliptic_f"];
  if (!cs.is_array() || cs.empty()) fail(Err::InvalidSpec, "\"hyperelliptic_f\" must be a coefficient array");
  std::vector<Scalar> coeffs;
  for (const Json& v : cs) coeffs.push_back(coefficient_from_json(k, v));
  return make_hyperelliptic(Poly(k, std::move(coeffs)));
}

CurvePtr parse_curve_spec_text(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(Err::InvalidSpec, "curve spec is not valid JSON");
  return parse_curve_spec(doc);
}

CurvePtr load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::InvalidSpec, "cannot open curve spec " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_spec_text(buf.str());
}

Json curve_spec_document(const CurvePtr& C) {
  Json doc;
  doc["characteristic"] = C->k->characteristic().get_si();
  if (C->is_p1) {
    doc["model"] = "P1";
  } else {
    Json cs = Json::array();
    for (int i = 0; i <= C->f.deg(); ++i) {
      if (C->k->kind == RingKind::Rationals)
        cs.push_back(C->f.coeff(i).to_string());
      else
        cs.push_back(C->f.coeff(i).int_value().get_si());
    }
    doc["model"] = Json{{"hyperelliptic_f", cs}};
  }
  return doc;
}

// --- form mini-grammar -------------------------------------------------

namespace {

struct FormParser {
  const CurvePtr& C;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  FFElt expr() {
    FFElt v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  FFElt term() {
    FFElt v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = v / unary();
      else
        return v;
    }
  }

  FFElt unary() {
    if (eat('-')) return -unary();
    return atom();
  }

  FFElt atom() {
    skip();
    if (i >= s.size()) fail(Err::InvalidSpec, "form expression ends unexpectedly");
    char c = s[i];
    if (c == '(') {
      ++i;
      FFElt v = expr();
      if (!eat(')')) fail(Err::InvalidSpec, "missing ')' in form expression");
      return v;
    }
    if (c == 'x') {
      ++i;
      return FFElt::x(C);
    }
    if (c == 'y') {
      ++i;
      return FFElt::y(C);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Int n(s.substr(i, j - i));
      i = j;
      return FFElt::constant(C, C->k->from_int(n));
    }
    fail(Err::InvalidSpec, std::string("unexpected character '") + c + "' in form expression");
  }
};

}  // namespace

FFElt parse_form(const CurvePtr& C, const std::string& text) {
  FormParser p{C, text};
  FFElt v = p.expr();
  p.skip();
  if (p.i != text.size()) fail(Err::InvalidSpec, "trailing input in form expression");
  return v;
}

// --- serialization ------------------------------------------------------

Json serialize_scalar(const Scalar& s) { return s.to_string(); }

Json serialize_poly(const Poly& a) {
  Json out = Json::array();
  for (int i = 0; i <= a.deg(); ++i) out.push_back(serialize_scalar(a.coeff(i)));
  return out;
}

Json serialize_rational_function(const RationalFunction& r) {
  return Json{{"num", serialize_poly(r.num())}, {"den", serialize_poly(r.den())}};
}

Json serialize_ffelt(const FFElt& g) {
  return Json{{"a", serialize_rational_function(g.a())}, {"b", serialize_rational_function(g.b())}};
}

Json serialize_series(const LaurentSeries& s) {
  Json cs = Json::array();
  for (int e = s.min_exp(); e < s.prec(); ++e) cs.push_back(serialize_scalar(s.coeff(e)));
  return Json{{"min_exponent", s.min_exp()}, {"precision", s.prec()}, {"coefficients", cs}};
}

Json serialize_cochain(const Cochain& u) {
  Json doc;
  doc["p"] = u.p;
  doc["q"] = u.q;
  doc["generic"] = serialize_ffelt(u.gen);
  doc["default"] = serialize_ffelt(u.def);
  Json exc = Json::array();
  for (const auto& [pl, s] : u.exc) {
    Json e = Json{{"place", pl.id}};
    e.update(serialize_series(s));
    exc.push_back(std::move(e));
  }
  doc["exceptions"] = std::move(exc);
  Json ex = Json::array();
  for (const Place& pl : u.excluded) ex.push_back(pl.id);
  doc["excluded"] = std::move(ex);
  return doc;
}

Json serialize_degree1(const Degree1& u) {
  return Json{{"a10", serialize_cochain(u.a10)}, {"a01", serialize_cochain(u.a01)}};
}

}  // namespace adelic
