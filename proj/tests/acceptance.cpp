#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "stein/stein.hpp"

using namespace stein;

namespace {

struct Check {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

GammaModule z_localized(long n) { return GammaModule(Field::rationals(), {FieldElement(1)}, prime_factors(Integer(n))); }

SteinSpec rational_spec(std::vector<Rational> slopes, long inverted, long ell = 1) {
  return SteinSpec(z_localized(inverted), SlopeGroup::rational(slopes), FieldElement(ell));
}

Field sqrt2_minus_1() { return Field::make(MinimalPolynomial({-1, 2, 1}), {Rational(2, 5), Rational(1, 2)}); }

std::string factors(const AbelianInvariants& h) { return h.to_string(); }

CutPoint random_cut(std::mt19937_64& rng, long n) {
  std::uniform_int_distribution<unsigned> level(0, 10);
  Integer den = pow_int(Integer(n), level(rng));
  std::uniform_int_distribution<long> num(0, den.convert_to<long>());
  while (true) {
    CutPoint x{FieldElement(Rational(num(rng), den)), (rng() & 1U) ? Side::Plus : Side::Minus};
    if (in_domain(x, FieldElement(1))) return x;
  }
}

// Tolerances: exact equality everywhere; runtime limits 1 s (criterion 1) and 30 s (criterion 5).

Check criterion1() {
  Check c;
  auto t0 = Clock::now();
  for (auto [p, q] : std::vector<std::pair<long, long>>{{3, 2}, {5, 2}, {5, 3}, {7, 4}, {7, 2}}) {
    SteinSpec s = rational_spec({Rational(p, q)}, p * q);
    AbelianInvariants h = coinvariants(s.gamma, s.lambda);
    std::vector<Integer> want;
    if (p - q > 1) want.push_back(p - q);
    c.require(h.free_rank == 0 && h.invariant_factors == want,
              "(" + std::to_string(p) + "," + std::to_string(q) + ") gave " + factors(h));
  }
  double t = seconds_since(t0);
  c.require(t < 1.0, "runtime " + std::to_string(t) + " s");
  if (c.ok) c.note = "Z/(p-q) for 5 pairs in " + std::to_string(t) + " s";
  return c;
}

Check criterion2() {
  Check c;
  for (long n = 2; n <= 12; ++n) {
    SteinSpec s = rational_spec({Rational(n)}, n);
    AbelianInvariants h = coinvariants(s.gamma, s.lambda);
    std::vector<Integer> want;
    if (n > 2) want.push_back(n - 1);
    c.require(h.free_rank == 0 && h.invariant_factors == want, "n=" + std::to_string(n) + " gave " + factors(h));
  }
  int pairs = 0;
  for (long n = 2; n <= 5; ++n)
    for (long r = 1; r <= 6; ++r)
      for (long m = 2; m <= 5; ++m)
        for (long s = 1; s <= 6; ++s) {
          bool iso = n == m && std::gcd(n - 1, r) == std::gcd(m - 1, s);
          Verdict v = rank_one_report(rational_spec({Rational(n)}, n, r), rational_spec({Rational(m)}, m, s));
          c.require(v.outcome == (iso ? Outcome::Isomorphic : Outcome::NotIsomorphic),
                    "V_{" + std::to_string(n) + "," + std::to_string(r) + "} vs V_{" + std::to_string(m) + "," +
                        std::to_string(s) + "}: " + v.summary());
          ++pairs;
        }
  if (c.ok) c.note = "H0 for n=2..12 and " + std::to_string(pairs) + " Higman-Thompson pairs match the gcd formula";
  return c;
}

Check criterion3() {
  Check c;
  Field f = sqrt2_minus_1();
  Field g = golden_field();
  SlopeGroup lf({f.generator()}), lg({g.generator()});
  AbelianInvariants hf = coinvariants(GammaModule(f, {f.one(), f.generator()}, {}), lf);
  AbelianInvariants hg = coinvariants(GammaModule(g, {g.one(), g.generator()}, {}), lg);
  c.require(hf.to_string() == "Z/2", "sqrt2-1 gave " + factors(hf));
  c.require(hg.is_trivial(), "beta gave " + factors(hg));
  auto o1 = oracle::minor_gcd_invariants(IntMatrix{{1, -1}, {-1, 3}});
  auto o2 = oracle::minor_gcd_invariants(IntMatrix{{1, -1}, {-1, 0}});
  auto torsion = [](const std::vector<Integer>& d) {
    std::vector<Integer> t;
    for (const auto& x : d)
      if (x != 1) t.push_back(x);
    return t;
  };
  c.require(torsion(o1) == hf.invariant_factors, "minor-gcd oracle disagrees for sqrt2-1");
  c.require(torsion(o2) == hg.invariant_factors, "minor-gcd oracle disagrees for beta");
  SteinSpec a(GammaModule(g, {g.one(), g.generator()}, {}), lg, g.one());
  SteinSpec b(GammaModule(g, {g.one(), g.generator()}, {}), lg, g.generator());
  Verdict v = classify_pair(a, b);
  c.require(v.outcome == Outcome::Isomorphic, "golden ell=1 vs ell=beta: " + v.summary());
  if (c.ok) c.note = "Z/2 and 0, oracle agrees; golden ell=1 vs beta: " + v.summary();
  return c;
}

Check criterion4() {
  Check c;
  SteinSpec s23 = rational_spec({2, 3}, 6), s25 = rational_spec({2, 5}, 10), s29 = rational_spec({2, 9}, 6);
  for (auto fn : {classify_pair, rank_one_report}) {
    Verdict v = fn(s23, s25, 16);
    c.require(v.outcome == Outcome::NotIsomorphic && v.obstruction.kind == ObstructionKind::NoOrderEmbedding,
              "<2,3> vs <2,5>: " + v.summary());
    Verdict u = fn(s23, s29, 16);
    c.require(u.outcome == Outcome::Unknown, "<2,3> vs <2,9>: " + u.summary());
  }
  if (c.ok) c.note = "<2,3> vs <2,5> obstructed (prime 3); <2,3> vs <2,9> Unknown";
  return c;
}

Check criterion5() {
  Check c;
  auto t0 = Clock::now();
  auto ctx = higman_thompson_context(2);
  auto lib = generator_library(ctx);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200 && c.ok; ++i) {
    PLMap f = random_word(ctx, lib, 4, rng()), h = random_word(ctx, lib, 4, rng());
    PLMap ef = embed_v2_element(f), eh = embed_v2_element(h);
    c.require(embed_v2_element(compose(f, h)) == compose(ef, eh), "homomorphism fails at pair " + std::to_string(i));
    bool valid = true;
    try {
      PLMap::make(golden_context(), ef.pieces());
    } catch (const Error&) {
      valid = false;
    }
    c.require(valid, "image fails validation at pair " + std::to_string(i));
  }
  for (int i = 0; i < 1000 && c.ok; ++i) {
    CutPoint x = random_cut(rng, 2), y = random_cut(rng, 2);
    c.require((x < y) == (embed_cut_point(x) < embed_cut_point(y)), "order fails at " + x.to_string() + ", " + y.to_string());
  }
  Field g = golden_field();
  c.require(beta_word_value(EventuallyPeriodicWord::parse("(01)")) == g.generator().inverse(), "value of (01)");
  c.require(beta_word_value(EventuallyPeriodicWord::parse("(10)")) == g.one(), "value of (10)");
  double t = seconds_since(t0);
  c.require(t < 30.0, "runtime " + std::to_string(t) + " s");
  if (c.ok) c.note = "200 homomorphism pairs, 1000 order pairs, anchors in " + std::to_string(t) + " s";
  return c;
}

Check criterion6() {
  Check c;
  std::mt19937_64 seeds(6);
  int triples = 0;
  for (const auto& ctx : {higman_thompson_context(2), golden_context(), stein_integer_context({2, 3})}) {
    auto lib = generator_library(ctx);
    PLMap id = PLMap::identity(ctx);
    for (int i = 0; i < 1000 && c.ok; ++i, ++triples) {
      PLMap f = random_word(ctx, lib, 2, seeds()), g = random_word(ctx, lib, 2, seeds()), h = random_word(ctx, lib, 2, seeds());
      c.require(compose(compose(f, g), h) == compose(f, compose(g, h)), "associativity in " + ctx->to_string());
      c.require(compose(f, id) == f && compose(id, f) == f, "identity in " + ctx->to_string());
      c.require(compose(f, invert(f)).is_identity() && compose(invert(f), f).is_identity(), "inverse in " + ctx->to_string());
    }
  }
  auto v2 = higman_thompson_context(2);
  auto lib = generator_library(v2);
  for (int i = 0; i < 300 && c.ok; ++i) {
    PLMap f = random_word(v2, lib, 5, seeds());
    c.require(from_pairs(v2, to_pairs(f)) == f, "prefix exchange round trip " + std::to_string(i));
  }
  for (int i = 0; i < 500 && c.ok; ++i) {
    CutPoint x = random_cut(seeds, 2);
    EventuallyPeriodicWord w = n_adic_expand(x, 2);
    c.require(n_adic_cut(w, 2) == x, "coding round trip at " + x.to_string());
    c.require(substitute_tau_inverse(substitute_tau(w)) == w, "tau round trip at " + x.to_string());
  }
  if (c.ok) c.note = std::to_string(triples) + " triples, 300 prefix exchanges, 500 cut points";
  return c;
}

Check criterion7() {
  Check c;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500 && c.ok; ++i) {
    IntMatrix a = oracle::random_matrix(rng, 6, 20);
    HermiteResult h = hermite_normal_form(a);
    SmithResult s = smith_normal_form(a);
    c.require(h.U * a == h.H && abs(oracle::det(h.U)) == 1, "HNF reconstruction for " + a.to_string());
    c.require(s.U * a * s.V == s.D && abs(oracle::det(s.U)) == 1 && abs(oracle::det(s.V)) == 1,
              "SNF reconstruction for " + a.to_string());
    std::vector<Integer> d;
    for (std::size_t k = 0; k < std::min(a.rows(), a.cols()); ++k)
      if (s.D(k, k) != 0) d.push_back(s.D(k, k));
    c.require(d == oracle::minor_gcd_invariants(a), "minor-gcd disagreement for " + a.to_string());
  }
  if (c.ok) c.note = "500 matrices up to 6x6";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"rational-slope coinvariants", criterion1}, {"Higman-Thompson consistency", criterion2},
      {"quadratic examples", criterion3},          {"order-embedding obstruction", criterion4},
      {"embedding suite", criterion5},             {"group axioms and round trips", criterion6},
      {"linear-algebra oracles", criterion7}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("exception: ") + e.what();
    }
    failures += !c.ok;
    std::printf("%s criterion %zu: %s (%s)\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), c.note.c_str());
  }
  return failures == 0 ? 0 : 1;
}
