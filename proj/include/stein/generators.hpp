#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stein/plmap.hpp"

namespace stein {

namespace detail {

inline void push_identity(std::vector<Piece>& out, const FieldElement& a, const FieldElement& b, const Field& f) {
  if (a < b) out.push_back(Piece{a, f.one(), f.zero()});
}

}  // namespace detail

/// Swaps [a, a+d) and [a+d, a+2d) by translation; identity elsewhere.
inline PLMap interval_swap(const ContextPtr& ctx, const FieldElement& a, const FieldElement& d) {
  const Field& f = ctx->field();
  std::vector<Piece> p;
  detail::push_identity(p, f.zero(), a, f);
  p.push_back(Piece{a, f.one(), d});
  p.push_back(Piece{a + d, f.one(), -d});
  detail::push_identity(p, a + d + d, ctx->ell(), f);
  return PLMap::make(ctx, std::move(p));
}

/// For mu > 1: stretches [a, a+d) by mu, translates [a+d, a+mu d) and shrinks
/// [a+mu d, a+2 mu d) by 1/mu, so that [a, a+2 mu d) is mapped onto itself.
inline PLMap rescale_pair(const ContextPtr& ctx, const FieldElement& a, const FieldElement& d, const FieldElement& mu) {
  const Field& f = ctx->field();
  FieldElement inv = mu.inverse();
  FieldElement md = mu * d;
  std::vector<Piece> p;
  detail::push_identity(p, f.zero(), a, f);
  p.push_back(Piece{a, mu, a - mu * a});
  p.push_back(Piece{a + d, f.one(), md - d});
  p.push_back(Piece{a + md, inv, a + md + md - d - inv * (a + md)});
  detail::push_identity(p, a + md + md, ctx->ell(), f);
  return PLMap::make(ctx, std::move(p));
}

/// Finite deterministic family of interval swaps and rescale pairs built from
/// lengths d = ℓ μ^-k (k = 1..3, μ > 1 a slope generator or its inverse) and
/// offsets a in {0, d, d+d', ℓ-d}.
inline std::vector<PLMap> generator_library(const ContextPtr& ctx) {
  const Field& f = ctx->field();
  const FieldElement& ell = ctx->ell();
  std::vector<FieldElement> mus;
  for (const auto& g : ctx->lambda().generators()) mus.push_back(g > FieldElement(1) ? g : g.inverse());

  auto add_unique = [](std::vector<FieldElement>& v, const FieldElement& x) {
    for (const auto& y : v)
      if (y == x) return;
    v.push_back(x);
  };
  std::vector<FieldElement> lengths;
  for (const auto& mu : mus)
    for (long k = 1; k <= 3; ++k) add_unique(lengths, ell * mu.pow(-k));
  std::vector<FieldElement> offsets{f.zero()};
  for (const auto& d : lengths) add_unique(offsets, d);
  for (std::size_t i = 0; i < lengths.size(); ++i)
    for (std::size_t j = i; j < lengths.size(); ++j) add_unique(offsets, lengths[i] + lengths[j]);
  for (const auto& d : lengths) add_unique(offsets, ell - d);

  std::vector<PLMap> out;
  for (const auto& a : offsets) {
    if (a.sign() < 0) continue;
    for (const auto& d : lengths) {
      if (a + d + d <= ell) out.push_back(interval_swap(ctx, a, d));
      for (const auto& mu : mus)
        if (a + (mu + mu) * d <= ell) out.push_back(rescale_pair(ctx, a, d, mu));
    }
  }
  if (out.empty()) fail(Errc::EmptyLibrary, "ell is too small for any library element");
  return out;
}

/// Product of `length` library elements or their inverses, drawn with a seeded mt19937_64.
inline PLMap random_word(const ContextPtr& ctx, const std::vector<PLMap>& library, std::size_t length,
                         std::uint64_t seed) {
  if (library.empty()) fail(Errc::EmptyLibrary, "empty generator library");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, library.size() - 1);
  PLMap w = PLMap::identity(ctx);
  for (std::size_t i = 0; i < length; ++i) {
    const PLMap& g = library[pick(rng)];
    w = compose(w, (rng() & 1U) ? invert(g) : g);
  }
  return w;
}

inline PLMap random_word(const ContextPtr& ctx, std::size_t length, std::uint64_t seed) {
  return random_word(ctx, generator_library(ctx), length, seed);
}

}  // namespace stein
