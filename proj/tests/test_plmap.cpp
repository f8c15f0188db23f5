#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stein/stein.hpp"

using namespace stein;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

FieldElement q(long a, long b = 1) { return FieldElement(Rational(a, b)); }

/// [0,1/4) slope 2, [1/4,1/2) translate by 1/4, [1/2,1) slope 1/2.
PLMap three_piece() {
  return PLMap::make(higman_thompson_context(2),
                     {{q(0), q(2), q(0)}, {q(1, 4), q(1), q(1, 4)}, {q(1, 2), q(1, 2), q(1, 2)}});
}

std::vector<ContextPtr> contexts() { return {higman_thompson_context(2), golden_context(), stein_integer_context({2, 3})}; }

/// Points of Γ in [0, ℓ) at which maps are compared pointwise.
std::vector<FieldElement> probe_points(const ContextPtr& ctx, std::mt19937_64& rng, int count) {
  std::vector<FieldElement> out;
  auto lib = generator_library(ctx);
  for (const auto& g : lib)
    for (const auto& p : g.pieces()) out.push_back(p.start);
  std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
  std::vector<FieldElement> sample;
  for (int i = 0; i < count; ++i) sample.push_back(out[pick(rng)]);
  return sample;
}

}  // namespace

TEST(MakePLMap, Examples) {
  auto ctx = higman_thompson_context(2);
  EXPECT_TRUE(PLMap::make(ctx, {{q(0), q(1), q(0)}}).is_identity());
  PLMap f = three_piece();
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f(q(1, 8)), q(1, 4));
  EXPECT_EQ(f(q(3, 8)), q(5, 8));
  EXPECT_EQ(f(q(3, 4)), q(7, 8));
  EXPECT_EQ(code_of([&] { PLMap::make(ctx, {{q(0), q(2), q(0)}, {q(1, 2), q(2), q(-1)}}); }), Errc::NotBijective);
}

TEST(MakePLMap, Errors) {
  auto ctx = higman_thompson_context(2);
  EXPECT_EQ(code_of([&] { PLMap::make(ctx, {{q(0), q(3), q(0)}, {q(1, 2), q(1), q(0)}}); }), Errc::SlopeNotInLambda);
  EXPECT_EQ(code_of([&] { PLMap::make(ctx, {{q(0), q(1), q(0)}, {q(1, 3), q(1), q(0)}}); }), Errc::BreakpointNotInGamma);
  EXPECT_EQ(code_of([&] { PLMap::make(ctx, {{q(1, 2), q(1), q(0)}, {q(0), q(1), q(0)}}); }), Errc::UnorderedBreakpoints);
}

TEST(MakePLMap, MergesAdjacentEqualPieces) {
  auto ctx = higman_thompson_context(2);
  PLMap f = PLMap::make(ctx, {{q(0), q(1), q(0)}, {q(1, 2), q(1), q(0)}});
  EXPECT_TRUE(f.is_identity());
  EXPECT_EQ(f.size(), 1u);
}

TEST(Compose, Examples) {
  PLMap f = three_piece();
  PLMap id = PLMap::identity(f.context());
  EXPECT_EQ(compose(f, id), f);
  EXPECT_EQ(compose(f, invert(f)), id);
  EXPECT_EQ(code_of([&] { compose(f, PLMap::identity(golden_context())); }), Errc::ContextMismatch);
}

TEST(Invert, Examples) {
  PLMap g = invert(three_piece());
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.pieces()[0].slope, q(1, 2));
  EXPECT_EQ(g.pieces()[1].slope, q(1));
  EXPECT_EQ(g.pieces()[2].slope, q(2));
  EXPECT_EQ(g.pieces()[1].start, q(1, 2));
  EXPECT_EQ(g.pieces()[2].start, q(3, 4));
  auto ctx = higman_thompson_context(2);
  EXPECT_TRUE(invert(PLMap::identity(ctx)).is_identity());
}

TEST(ActOnCut, Examples) {
  PLMap f = three_piece();
  EXPECT_EQ(act_on_cut(f, minus(q(1, 4))), minus(q(1, 2)));
  EXPECT_EQ(act_on_cut(f, plus(q(1, 4))), plus(q(1, 2)));
  EXPECT_EQ(act_on_cut(f, plus(q(0))), plus(q(0)));
  EXPECT_EQ(code_of([&] { act_on_cut(f, minus(q(0))); }), Errc::OutOfDomain);
  EXPECT_EQ(code_of([&] { act_on_cut(f, plus(q(1))); }), Errc::OutOfDomain);
}

TEST(FixedPoints, Examples) {
  auto id = fixed_point_report(PLMap::identity(higman_thompson_context(2)));
  EXPECT_EQ(id.fixed_intervals.size(), 1u);
  for (const auto& c : id.cuts) EXPECT_FALSE(c.attracting);

  auto r = fixed_point_report(three_piece());
  ASSERT_EQ(r.cuts.size(), 2u);
  EXPECT_EQ(r.cuts[0].point, plus(q(0)));
  EXPECT_EQ(r.cuts[0].slope, q(2));
  EXPECT_FALSE(r.cuts[0].attracting);
  EXPECT_EQ(r.cuts[1].point, minus(q(1)));
  EXPECT_EQ(r.cuts[1].slope, q(1, 2));
  EXPECT_TRUE(r.cuts[1].attracting);

  auto inv = fixed_point_report(invert(three_piece()));
  EXPECT_EQ(inv.cuts[0].point, plus(q(0)));
  EXPECT_EQ(inv.cuts[0].slope, q(1, 2));
  EXPECT_TRUE(inv.cuts[0].attracting);
}

TEST(FixedPoints, NonGammaPointsAreSeparate) {
  // on (Z+Zβ, <β>, 1) the piece t -> β^-1 t + c has fixed point c / (1 - β^-1) = cβ^2
  auto ctx = golden_context();
  auto lib = generator_library(ctx);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PLMap f = random_word(ctx, lib, 4, seed);
    auto r = fixed_point_report(f);
    for (const auto& c : r.cuts) {
      EXPECT_EQ(act_on_cut(f, c.point), c.point);
      EXPECT_EQ(c.attracting, c.slope < FieldElement(1));
    }
    for (const auto& x : r.non_gamma_points) EXPECT_FALSE(ctx->gamma().contains(x));
  }
}

TEST(GeneratorLibrary, Examples) {
  auto ctx = higman_thompson_context(2);
  PLMap swap = interval_swap(ctx, q(0), q(1, 2));
  EXPECT_EQ(swap.size(), 2u);
  EXPECT_EQ(swap(q(0)), q(1, 2));
  EXPECT_EQ(rescale_pair(ctx, q(0), q(1, 4), q(2)), three_piece());
  for (const auto& c : contexts())
    for (const auto& g : generator_library(c)) EXPECT_NO_THROW(PLMap::make(c, g.pieces()));
  // lengths (8/9)^k for k <= 3 all exceed 1/2
  auto slow = Context::make(GammaModule(Field::rationals(), {FieldElement(1)}, {2, 3}),
                            SlopeGroup::rational({Rational(9, 8)}), FieldElement(1));
  EXPECT_EQ(code_of([&] { generator_library(slow); }), Errc::EmptyLibrary);
}

TEST(RandomWord, Examples) {
  for (const auto& ctx : contexts()) {
    EXPECT_TRUE(random_word(ctx, 0, 1).is_identity());
    EXPECT_EQ(random_word(ctx, 5, 42), random_word(ctx, 5, 42));
    PLMap w = random_word(ctx, 6, 7);
    EXPECT_TRUE(compose(w, invert(w)).is_identity());
  }
}

TEST(GroupAxioms, RandomTriplesInThreeContexts) {
  std::mt19937_64 seeds(41);
  for (const auto& ctx : contexts()) {
    auto lib = generator_library(ctx);
    PLMap id = PLMap::identity(ctx);
    for (int i = 0; i < 1000; ++i) {
      PLMap f = random_word(ctx, lib, 2, seeds()), g = random_word(ctx, lib, 2, seeds()),
            h = random_word(ctx, lib, 2, seeds());
      ASSERT_EQ(compose(compose(f, g), h), compose(f, compose(g, h))) << ctx->to_string();
      ASSERT_EQ(compose(f, id), f);
      ASSERT_EQ(compose(id, f), f);
      ASSERT_TRUE(compose(f, invert(f)).is_identity());
      ASSERT_TRUE(compose(invert(f), f).is_identity());
    }
  }
}

TEST(Compose, AgreesWithPointwiseEvaluation) {
  std::mt19937_64 rng(42);
  for (const auto& ctx : contexts()) {
    auto lib = generator_library(ctx);
    auto points = probe_points(ctx, rng, 20);
    for (int i = 0; i < 100; ++i) {
      PLMap f = random_word(ctx, lib, 3, rng()), g = random_word(ctx, lib, 3, rng());
      PLMap fg = compose(f, g);
      for (const auto& t : points) ASSERT_EQ(fg(t), f(g(t)));
    }
  }
}

TEST(Invert, InvolutionAndTelescope) {
  std::mt19937_64 rng(43);
  for (const auto& ctx : contexts()) {
    auto lib = generator_library(ctx);
    for (int i = 0; i < 500; ++i) {
      PLMap f = random_word(ctx, lib, 4, rng());
      ASSERT_EQ(invert(invert(f)), f);
      FieldElement total = ctx->field().zero();
      for (std::size_t k = 0; k < f.size(); ++k) total += f.pieces()[k].slope * (f.end_of(k) - f.pieces()[k].start);
      ASSERT_EQ(total, ctx->ell());
      for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        const auto& a = f.pieces()[k];
        const auto& b = f.pieces()[k + 1];
        ASSERT_FALSE(a.slope == b.slope && a.offset == b.offset);
      }
    }
  }
}

TEST(ActOnCut, InverseUndoesAndOrderPreservedWithinPieces) {
  std::mt19937_64 rng(44);
  for (const auto& ctx : contexts()) {
    auto lib = generator_library(ctx);
    auto points = probe_points(ctx, rng, 30);
    for (int i = 0; i < 50; ++i) {
      PLMap f = random_word(ctx, lib, 3, rng());
      PLMap g = invert(f);
      for (const auto& t : points) {
        for (CutPoint x : {plus(t), minus(t)}) {
          if (!in_domain(x, ctx->ell())) continue;
          ASSERT_EQ(act_on_cut(g, act_on_cut(f, x)), x);
        }
      }
      for (std::size_t k = 0; k < f.size(); ++k) {
        CutPoint lo = plus(f.pieces()[k].start), hi = minus(f.end_of(k));
        ASSERT_LT(act_on_cut(f, lo), act_on_cut(f, hi));
      }
    }
  }
}

TEST(PrefixExchange, Examples) {
  auto ctx = higman_thompson_context(2);
  auto id = to_pairs(PLMap::identity(ctx));
  ASSERT_EQ(id.pairs.size(), 1u);
  EXPECT_TRUE(id.pairs[0].first.empty() && id.pairs[0].second.empty());
  EXPECT_EQ(to_pairs(three_piece()).to_string(), "{(00->0), (01->10), (1->11)}");
  PLMap swap = from_pairs(ctx, {2, {{parse_word("0"), parse_word("1")}, {parse_word("1"), parse_word("0")}}});
  EXPECT_EQ(swap, interval_swap(ctx, q(0), q(1, 2)));
  EXPECT_EQ(code_of([&] { from_pairs(ctx, {2, {{parse_word("0"), parse_word("1")}, {parse_word("01"), parse_word("0")}}}); }),
            Errc::NotAntichain);
  EXPECT_EQ(code_of([&] { from_pairs(ctx, {2, {{parse_word("0"), parse_word("1")}}}); }), Errc::NotComplete);
  EXPECT_EQ(code_of([] { to_pairs(PLMap::identity(golden_context())); }), Errc::WrongContext);
}

TEST(PrefixExchange, RoundTripOnRandomElements) {
  std::mt19937_64 rng(45);
  for (long n : {2L, 3L}) {
    auto ctx = higman_thompson_context(n);
    auto lib = generator_library(ctx);
    for (int i = 0; i < (n == 2 ? 300 : 100); ++i) {
      PLMap f = random_word(ctx, lib, 5, rng());
      PrefixExchange px = to_pairs(f);
      ASSERT_EQ(from_pairs(ctx, px), f);
      // each pair maps its cylinder affinely onto the other one
      for (const auto& [u, v] : px.pairs) {
        Rational a(word_integer(u, n), pow_int(Integer(n), static_cast<unsigned>(u.size())));
        Rational b(word_integer(v, n), pow_int(Integer(n), static_cast<unsigned>(v.size())));
        ASSERT_EQ(f(FieldElement(a)), FieldElement(b));
      }
    }
  }
}

TEST(PLMap, TextForm) {
  EXPECT_EQ(three_piece().to_string(), "[0, 1/4) -> 2*t\n[1/4, 1/2) -> t + 1/4\n[1/2, 1) -> 1/2*t + 1/2\n");
  EXPECT_EQ(PLMap::identity(higman_thompson_context(2)).to_string(), "[0, 1) -> t\n");
}
