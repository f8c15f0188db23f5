#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stein/classification.hpp"
#include "stein/context.hpp"
#include "stein/plmap.hpp"
#include "stein/prefix_exchange.hpp"
#include "stein/words.hpp"

namespace stein {

using Json = nlohmann::ordered_json;

/// A named operation over document elements, e.g. {"op": "compose", "args": ["f", "g"]}.
struct Task {
  std::string op;
  std::vector<std::string> args;
};

struct SpecDocument {
  SteinSpec spec;
  ContextPtr context;  // null when the document has no ell
  std::map<std::string, PLMap> elements;
  std::vector<Task> tasks;

  const Field& field() const { return spec.gamma.field(); }

  const PLMap& element(const std::string& name) const {
    auto it = elements.find(name);
    if (it == elements.end()) fail(Errc::InvalidArgument, "unknown element '" + name + "'");
    return it->second;
  }
};

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& msg) {
  fail(Errc::ParseError, "at " + (where.empty() ? std::string("/") : where) + ": " + msg);
}

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, "missing key '" + key + "'");
  return *it;
}

inline const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array");
  return j;
}

inline std::string scalar_text(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  parse_fail(where, "expected an integer or a \"p/q\" string");
}

inline Rational parse_rational_at(const Json& j, const std::string& where) {
  std::string s = scalar_text(j, where);
  try {
    return parse_rational(s);
  } catch (const Error&) {
    parse_fail(where, "'" + s + "' is not a rational number");
  }
}

inline Integer parse_integer_at(const Json& j, const std::string& where) {
  std::string s = scalar_text(j, where);
  try {
    return parse_integer(s);
  } catch (const Error&) {
    parse_fail(where, "'" + s + "' is not an integer");
  }
}

inline std::string join(const std::string& where, const std::string& key) { return where + "/" + key; }
inline std::string join(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

}  // namespace detail

// ---------------------------------------------------------------------------
// field elements and cut points

/// Rationals as "p/q" strings or integers; other elements as arrays of coordinates over the power basis.
inline FieldElement parse_element_json(const Json& j, const Field& f, const std::string& where = "") {
  if (!j.is_array()) return f.from_rational(detail::parse_rational_at(j, where));
  if (j.size() != static_cast<std::size_t>(f.degree()))
    detail::parse_fail(where, "expected " + std::to_string(f.degree()) + " coordinates");
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(detail::parse_rational_at(j[i], detail::join(where, i)));
  return f.element(std::move(c));
}

inline Json to_json(const FieldElement& x) {
  if (x.field().is_rational()) return to_string(*x.as_rational());
  Json a = Json::array();
  for (const auto& c : x.coords()) a.push_back(to_string(c));
  return a;
}

/// Command-line form: "p/q" or comma-separated coordinates "a,b".
inline FieldElement parse_element_text(std::string_view s, const Field& f) {
  std::vector<Rational> c;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    c.push_back(parse_rational(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (c.size() == 1) return f.from_rational(c[0]);
  if (c.size() != static_cast<std::size_t>(f.degree()))
    fail(Errc::ParseError, "expected " + std::to_string(f.degree()) + " coordinates in '" + std::string(s) + "'");
  return f.element(std::move(c));
}

/// "VALUE+" or "VALUE-", with VALUE as in parse_element_text, optionally in parentheses.
inline CutPoint parse_cut_point(std::string_view s, const Field& f) {
  if (s.empty() || (s.back() != '+' && s.back() != '-')) fail(Errc::ParseError, "cut point must end in '+' or '-'");
  Side side = s.back() == '+' ? Side::Plus : Side::Minus;
  s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  return CutPoint{parse_element_text(s, f), side};
}

inline Json to_json(const CutPoint& x) {
  return Json{{"value", to_json(x.value)}, {"side", x.side == Side::Plus ? "+" : "-"}};
}

// ---------------------------------------------------------------------------
// elements

inline Json to_json(const PrefixExchange& px) {
  Json pairs = Json::array();
  for (const auto& [u, v] : px.pairs) pairs.push_back(Json::array({to_string(u), to_string(v)}));
  return Json{{"base", px.base}, {"pairs", pairs}};
}

inline Json to_json(const PLMap& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces())
    pieces.push_back(Json{{"start", to_json(p.start)}, {"slope", to_json(p.slope)}, {"offset", to_json(p.offset)}});
  return Json{{"pieces", pieces}};
}

/// {"pieces": [{"start", "slope", "offset"}, ...]} or {"pairs": [["u", "v"], ...]}.
inline PLMap parse_plmap_json(const Json& j, const ContextPtr& ctx, const std::string& where = "") {
  if (!j.is_object()) detail::parse_fail(where, "expected an object");
  if (j.contains("pairs")) {
    const std::string w = detail::join(where, "pairs");
    const Json& arr = detail::array_at(j["pairs"], w);
    PrefixExchange px{higman_thompson_base(*ctx), {}};
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const Json& pr = arr[i];
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
        detail::parse_fail(detail::join(w, i), "expected a pair of digit strings");
      try {
        px.pairs.emplace_back(parse_word(pr[0].get<std::string>()), parse_word(pr[1].get<std::string>()));
      } catch (const Error& e) {
        detail::parse_fail(detail::join(w, i), e.message());
      }
    }
    return from_pairs(ctx, px);
  }
  const std::string w = detail::join(where, "pieces");
  const Json& arr = detail::array_at(detail::member(j, "pieces", where), w);
  const Field& f = ctx->field();
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string wi = detail::join(w, i);
    const char* start = arr[i].is_object() && arr[i].contains("t") ? "t" : "start";
    pieces.push_back(Piece{parse_element_json(detail::member(arr[i], start, wi), f, detail::join(wi, start)),
                           parse_element_json(detail::member(arr[i], "slope", wi), f, detail::join(wi, "slope")),
                           parse_element_json(detail::member(arr[i], "offset", wi), f, detail::join(wi, "offset"))});
  }
  return PLMap::make(ctx, std::move(pieces));
}

inline Json to_json(const FixedPointReport& r) {
  Json cuts = Json::array(), intervals = Json::array(), others = Json::array();
  for (const auto& c : r.cuts)
    cuts.push_back(Json{{"point", to_json(c.point)}, {"slope", to_json(c.slope)}, {"attracting", c.attracting}});
  for (const auto& [a, b] : r.fixed_intervals) intervals.push_back(Json::array({to_json(a), to_json(b)}));
  for (const auto& x : r.non_gamma_points) others.push_back(to_json(x));
  return Json{{"cuts", cuts}, {"fixed_intervals", intervals}, {"non_gamma_points", others}};
}

// ---------------------------------------------------------------------------
// invariants and verdicts

inline Json to_json(const AbelianInvariants& inv) {
  Json factors = Json::array();
  for (const auto& d : inv.invariant_factors) factors.push_back(d.str());
  return Json{{"invariant_factors", factors}, {"free_rank", inv.free_rank}, {"group", inv.to_string()}};
}

inline Json to_json(const Verdict& v) {
  Json j{{"outcome", std::string(to_string(v.outcome))}};
  if (v.outcome == Outcome::Isomorphic)
    j["witness"] = Json{{"scale", v.scale ? to_json(*v.scale) : Json(nullptr)}, {"certificate", v.witness}};
  else
    j["witness"] = nullptr;
  if (v.outcome == Outcome::NotIsomorphic)
    j["obstruction"] = Json{{"kind", std::string(to_string(v.obstruction.kind))},
                            {"detail", v.obstruction.detail},
                            {"prime", v.obstruction.prime ? Json(*v.obstruction.prime) : Json(nullptr)}};
  else
    j["obstruction"] = nullptr;
  j["reason"] = v.outcome == Outcome::Unknown ? Json(v.reason) : Json(nullptr);
  j["explanation"] = v.summary();
  return j;
}

// ---------------------------------------------------------------------------
// documents

namespace detail {

inline Field parse_field(const Json& j) {
  if (!j.contains("field")) return Field::rationals();
  const Json& fj = j["field"];
  std::vector<Integer> coeffs;
  const Json& mp = array_at(member(fj, "minpoly", "/field"), "/field/minpoly");
  for (std::size_t i = 0; i < mp.size(); ++i) coeffs.push_back(parse_integer_at(mp[i], join("/field/minpoly", i)));
  const Json& root = array_at(member(fj, "root", "/field"), "/field/root");
  if (root.size() != 2) parse_fail("/field/root", "expected [lo, hi]");
  Interval iv{parse_rational_at(root[0], "/field/root/0"), parse_rational_at(root[1], "/field/root/1")};
  std::string symbol = "λ";
  if (fj.contains("symbol")) {
    if (!fj["symbol"].is_string()) parse_fail("/field/symbol", "expected a string");
    symbol = fj["symbol"].get<std::string>();
  }
  return Field::make(MinimalPolynomial(coeffs), iv, symbol);
}

inline std::vector<FieldElement> parse_element_list(const Json& arr, const Field& f, const std::string& where) {
  array_at(arr, where);
  std::vector<FieldElement> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_element_json(arr[i], f, join(where, i)));
  return out;
}

}  // namespace detail

/// Parses and validates a document; ParseError for malformed input, the
/// violated invariant's code otherwise.
inline SpecDocument parse_spec_json(const Json& j) {
  if (!j.is_object()) detail::parse_fail("", "expected an object");
  Field f = detail::parse_field(j);

  const Json& gj = detail::member(j, "gamma", "");
  auto basis = detail::parse_element_list(detail::member(gj, "basis", "/gamma"), f, "/gamma/basis");
  std::vector<Prime> primes;
  if (gj.contains("inverted_primes")) {
    const Json& pj = detail::array_at(gj["inverted_primes"], "/gamma/inverted_primes");
    for (std::size_t i = 0; i < pj.size(); ++i) {
      Integer p = detail::parse_integer_at(pj[i], detail::join("/gamma/inverted_primes", i));
      if (p < 2 || p > std::numeric_limits<Prime>::max()) detail::parse_fail("/gamma/inverted_primes", "prime out of range");
      primes.push_back(p.convert_to<Prime>());
    }
  }
  GammaModule gamma(f, basis, primes);

  const Json& lj = detail::member(j, "lambda", "");
  auto gens = detail::parse_element_list(detail::member(lj, "generators", "/lambda"), f, "/lambda/generators");
  SlopeGroup lambda(gens);

  std::optional<FieldElement> ell;
  if (j.contains("ell")) ell = parse_element_json(j["ell"], f, "/ell");

  SpecDocument doc{SteinSpec(gamma, lambda, ell), nullptr, {}, {}};
  if (ell) doc.context = Context::make(gamma, lambda, *ell);

  if (j.contains("elements")) {
    const Json& ej = j["elements"];
    if (!ej.is_object()) detail::parse_fail("/elements", "expected an object");
    if (!ej.empty() && !doc.context) detail::parse_fail("/elements", "elements need 'ell'");
    for (auto it = ej.begin(); it != ej.end(); ++it)
      doc.elements.emplace(it.key(), parse_plmap_json(it.value(), doc.context, "/elements/" + it.key()));
  }
  if (j.contains("tasks")) {
    const Json& tj = detail::array_at(j["tasks"], "/tasks");
    for (std::size_t i = 0; i < tj.size(); ++i) {
      const std::string w = detail::join("/tasks", i);
      const Json& op = detail::member(tj[i], "op", w);
      if (!op.is_string()) detail::parse_fail(detail::join(w, "op"), "expected a string");
      Task t{op.get<std::string>(), {}};
      if (tj[i].contains("args")) {
        const Json& aj = detail::array_at(tj[i]["args"], detail::join(w, "args"));
        for (std::size_t k = 0; k < aj.size(); ++k) {
          if (!aj[k].is_string()) detail::parse_fail(detail::join(detail::join(w, "args"), k), "expected an element name");
          std::string name = aj[k].get<std::string>();
          if (!doc.elements.count(name))
            detail::parse_fail(detail::join(detail::join(w, "args"), k), "unknown element '" + name + "'");
          t.args.push_back(std::move(name));
        }
      }
      doc.tasks.push_back(std::move(t));
    }
  }
  return doc;
}

inline SpecDocument parse_spec(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    fail(Errc::ParseError, "at byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  return parse_spec_json(j);
}

inline Json to_json(const SpecDocument& doc) {
  Json j = Json::object();
  const Field& f = doc.field();
  if (!f.is_rational()) {
    Json mp = Json::array();
    for (const auto& c : f.minpoly().coeffs()) mp.push_back(c.str());
    const Interval& iv = f.declared_interval();
    j["field"] = Json{{"minpoly", mp}, {"root", Json::array({to_string(iv.lo), to_string(iv.hi)})}, {"symbol", f.symbol()}};
  }
  Json basis = Json::array(), gens = Json::array(), primes = Json::array();
  for (const auto& b : doc.spec.gamma.basis()) basis.push_back(to_json(b));
  for (auto p : doc.spec.gamma.inverted_primes()) primes.push_back(p);
  for (const auto& g : doc.spec.lambda.generators()) gens.push_back(to_json(g));
  j["gamma"] = Json{{"basis", basis}, {"inverted_primes", primes}};
  j["lambda"] = Json{{"generators", gens}};
  if (doc.spec.ell) j["ell"] = to_json(*doc.spec.ell);
  if (!doc.elements.empty()) {
    Json ej = Json::object();
    for (const auto& [name, f_] : doc.elements) ej[name] = to_json(f_);
    j["elements"] = ej;
  }
  if (!doc.tasks.empty()) {
    Json tj = Json::array();
    for (const auto& t : doc.tasks) tj.push_back(Json{{"op", t.op}, {"args", t.args}});
    j["tasks"] = tj;
  }
  return j;
}

}  // namespace stein
