#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stein/stein.hpp"

namespace stein::cli {

enum ExitCode : int { Success = 0, UnknownVerdict = 1, InvalidInput = 2, UsageError = 64 };

struct Options {
  bool json = false;
  long search_bound = 16;
  std::uint64_t seed = 0;
  std::size_t length = 8;
};

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SpecDocument load(const std::string& path) {
  try {
    return parse_spec(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message());
  }
}

inline const ContextPtr& require_context(const SpecDocument& doc) {
  if (!doc.context) fail(Errc::InvalidArgument, "the document has no 'ell'");
  return doc.context;
}

inline void emit(std::ostream& out, const Options& o, const Json& j, const std::string& text) {
  if (o.json)
    out << j.dump(2) << "\n";
  else
    out << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

inline int emit_verdict(std::ostream& out, const Options& o, const Verdict& v) {
  emit(out, o, to_json(v), v.summary());
  return v.outcome == Outcome::Unknown ? UnknownVerdict : Success;
}

inline std::string fixed_points_text(const FixedPointReport& r) {
  std::string s;
  for (const auto& c : r.cuts)
    s += c.point.to_string() + " slope " + c.slope.to_string() + (c.attracting ? " attracting" : " repelling") + "\n";
  for (const auto& [a, b] : r.fixed_intervals) s += "[" + a.to_string() + ", " + b.to_string() + ") fixed\n";
  for (const auto& x : r.non_gamma_points) s += x.to_string() + " fixed, not in Gamma\n";
  return s.empty() ? "no fixed points" : s;
}

/// Applies an element operation; returns the JSON and text forms.
inline std::pair<Json, std::string> element_op(const std::string& op, const SpecDocument& doc,
                                               const std::vector<std::string>& names, const Options& o) {
  auto arity = [&](std::size_t n) {
    if (names.size() != n)
      fail(Errc::InvalidArgument, op + " takes " + std::to_string(n) + " element name" + (n == 1 ? "" : "s"));
  };
  if (op == "compose") {
    if (names.empty()) fail(Errc::InvalidArgument, "compose takes at least one element name");
    PLMap f = doc.element(names[0]);
    for (std::size_t i = 1; i < names.size(); ++i) f = compose(f, doc.element(names[i]));
    return {to_json(f), f.to_string()};
  }
  if (op == "invert") {
    arity(1);
    PLMap f = invert(doc.element(names[0]));
    return {to_json(f), f.to_string()};
  }
  if (op == "fixed-points") {
    arity(1);
    FixedPointReport r = fixed_point_report(doc.element(names[0]));
    return {to_json(r), fixed_points_text(r)};
  }
  if (op == "to-pairs") {
    arity(1);
    PrefixExchange px = to_pairs(doc.element(names[0]));
    return {to_json(px), px.to_string()};
  }
  if (op == "embed-v2") {
    arity(1);
    PLMap f = embed_v2_element(doc.element(names[0]));
    return {to_json(f), f.to_string()};
  }
  if (op == "random") {
    arity(0);
    PLMap f = random_word(require_context(doc), o.length, o.seed);
    return {to_json(f), f.to_string()};
  }
  fail(Errc::InvalidArgument, "unknown element operation '" + op + "'");
}

/// Runs the command line; output goes to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Stein groups: exact elements, invariants and isomorphism verdicts", "stein"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit machine-readable JSON");
  app.add_option("--search-bound", o.search_bound, "Bound for scale, unit and exponent searches")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for random elements")->capture_default_str();

  std::string a, b, op, point, word;
  std::vector<std::string> names;

  auto* classify = app.add_subcommand("classify", "Isomorphism verdict for V(Γ1,Λ1,ℓ1) and V(Γ2,Λ2,ℓ2)");
  classify->add_option("a", a)->required();
  classify->add_option("b", b)->required();
  auto* groupoid = app.add_subcommand("classify-groupoid", "Isomorphism verdict for the Stein groupoids (ℓ ignored)");
  groupoid->add_option("a", a)->required();
  groupoid->add_option("b", b)->required();
  auto* obstruct = app.add_subcommand("obstruct", "Slope-rank, order-embedding and Higman-Thompson obstructions");
  obstruct->add_option("a", a)->required();
  obstruct->add_option("b", b)->required();
  auto* coinv = app.add_subcommand("coinvariants", "H0(Λ, Γ) as invariant factors");
  coinv->add_option("doc", a)->required();
  auto* element = app.add_subcommand("element", "Operations on named elements");
  element->add_option("op", op, "compose | invert | fixed-points | to-pairs | embed-v2 | random")
      ->required()
      ->check(CLI::IsMember({"compose", "invert", "fixed-points", "to-pairs", "embed-v2", "random"}));
  element->add_option("doc", a)->required();
  element->add_option("names", names);
  element->add_option("--length", o.length, "Word length for 'random'")->capture_default_str();
  auto* expand = app.add_subcommand("expand", "n-adic expansion of a cut point, or the β-value of a word");
  expand->add_option("doc", a, "Document with context (Z[1/n], <n>, 1)");
  expand->add_option("point", point, "Cut point such as 1/3+ or 1/2-");
  expand->add_option("--beta", word, "Golden-mean word such as 0(01) or 101");
  auto* embed = app.add_subcommand("embed-v2", "Image of an element of V_{2,1} in V(Z+Zβ, <β>, 1)");
  embed->add_option("doc", a)->required();
  embed->add_option("name", op)->required();
  auto* run_tasks = app.add_subcommand("run", "Execute the document's task list");
  run_tasks->add_option("doc", a)->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Success;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'stein --help' for usage\n";
    return UsageError;
  }

  try {
    if (classify->parsed() || groupoid->parsed() || obstruct->parsed()) {
      SpecDocument da = load(a), db = load(b);
      SteinSpec sa = da.spec, sb = db.spec;
      if (groupoid->parsed()) {
        sa = sa.without_ell();
        sb = sb.without_ell();
      }
      Verdict v = obstruct->parsed() ? rank_one_report(sa, sb, o.search_bound) : classify_pair(sa, sb, o.search_bound);
      return emit_verdict(out, o, v);
    }
    if (coinv->parsed()) {
      SpecDocument d = load(a);
      AbelianInvariants inv = coinvariants(d.spec.gamma, d.spec.lambda);
      emit(out, o, to_json(inv), inv.to_string());
      return Success;
    }
    if (element->parsed()) {
      SpecDocument d = load(a);
      auto [j, text] = element_op(op, d, names, o);
      emit(out, o, j, text);
      return Success;
    }
    if (embed->parsed()) {
      SpecDocument d = load(a);
      auto [j, text] = element_op("embed-v2", d, {op}, o);
      emit(out, o, j, text);
      return Success;
    }
    if (expand->parsed()) {
      if (!word.empty()) {
        if (!a.empty()) fail(Errc::InvalidArgument, "--beta takes no document");
        EventuallyPeriodicWord w = EventuallyPeriodicWord::parse(word);
        FieldElement value = beta_word_value(w);
        Json j{{"word", w.to_string()}, {"value", to_json(value)}, {"tau_inverse", substitute_tau_inverse(w).to_string()}};
        emit(out, o, j, value.to_string());
        return Success;
      }
      if (a.empty() || point.empty()) fail(Errc::InvalidArgument, "expand needs a document and a cut point, or --beta");
      SpecDocument d = load(a);
      long n = higman_thompson_base(*require_context(d));
      CutPoint x = parse_cut_point(point, d.field());
      EventuallyPeriodicWord w = n_adic_expand(x, n);
      emit(out, o, Json{{"point", to_json(x)}, {"base", n}, {"word", w.to_string()}}, w.to_string());
      return Success;
    }
    if (run_tasks->parsed()) {
      SpecDocument d = load(a);
      Json results = Json::array();
      std::string text;
      for (const auto& t : d.tasks) {
        auto [j, s] = element_op(t.op, d, t.args, o);
        results.push_back(Json{{"op", t.op}, {"args", t.args}, {"result", j}});
        text += t.op;
        for (const auto& n : t.args) text += " " + n;
        text += ":\n" + s + (s.back() == '\n' ? "" : "\n");
      }
      emit(out, o, results, text.empty() ? "no tasks" : text);
      return Success;
    }
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError)
      err << "error: ParseError " << e.message() << "\n";
    else
      err << "error: ValidationError(" << to_string(e.code()) << "): " << e.message() << "\n";
    return InvalidInput;
  }
  return UsageError;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace stein::cli
