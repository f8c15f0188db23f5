#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "stein/plmap.hpp"
#include "stein/words.hpp"

namespace stein {

/// A Higman-Thompson element as a bijection between two complete prefix-free
/// sets of n-ary words: the cylinder of `first` is mapped affinely onto the
/// cylinder of `second`.
struct PrefixExchange {
  long base = 2;
  std::vector<std::pair<Word, Word>> pairs;

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i)
      s += (i ? ", " : "") + ("(" + stein::to_string(pairs[i].first) + "->" + stein::to_string(pairs[i].second) + ")");
    return s + "}";
  }
};

/// n for the context (Z[1/n], ⟨n⟩, 1); WrongContext otherwise.
inline long higman_thompson_base(const Context& ctx) {
  const SlopeGroup& L = ctx.lambda();
  const GammaModule& G = ctx.gamma();
  if (!ctx.field().is_rational() || !L.is_rational() || L.rank() != 1 || G.rank() != 1)
    fail(Errc::WrongContext, "prefix exchanges need the context (Z[1/n], <n>, 1)");
  Rational n = *L.generators()[0].as_rational();
  if (denominator(n) != 1 || numerator(n) < 2 || numerator(n) > 36)
    fail(Errc::WrongContext, "slope group is not generated by an integer 2 <= n <= 36");
  long base = numerator(n).convert_to<long>();
  auto primes = prime_factors(Integer(base));
  if (G.inverted_primes() != primes || !G.contains(FieldElement(1)) ||
      !in_localization(*G.basis()[0].as_rational(), primes) || ctx.ell() != FieldElement(1))
    fail(Errc::WrongContext, "prefix exchanges need Gamma = Z[1/n] and ell = 1");
  return base;
}

namespace detail {

/// Word of the standard cylinder [x, x + n^-level).
inline Word cylinder_word(const Rational& x, unsigned level, long n) {
  Integer a = numerator(x * pow_int(Integer(n), level));
  Word w(level);
  for (unsigned i = 0; i < level; ++i) {
    w[level - 1 - i] = static_cast<std::uint8_t>(static_cast<long>(a % n));
    a /= n;
  }
  return w;
}

inline bool is_cylinder_start(const Rational& x, long level, long n) {
  if (level < 0) return false;
  return denominator(x * pow_int(Integer(n), static_cast<unsigned>(level))) == 1;
}

}  // namespace detail

/// Prefix-exchange form of an element of V_{n,1}: each piece is cut into
/// maximal standard cylinders, split further until every image is a cylinder.
inline PrefixExchange to_pairs(const PLMap& f) {
  const long n = higman_thompson_base(*f.context());
  PrefixExchange out{n, {}};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Piece& p = f.pieces()[i];
    Rational a = *p.start.as_rational(), b = *f.end_of(i).as_rational();
    Rational slope = *p.slope.as_rational(), offset = *p.offset.as_rational();
    // slope = n^k
    long k = 0;
    for (Rational s = slope; s != 1; s = s > 1 ? s / n : s * n) k += slope > 1 ? 1 : -1;

    std::vector<std::pair<Rational, unsigned>> stack;
    Rational x = a;
    while (x < b) {
      unsigned level = 0;
      while (!detail::is_cylinder_start(x, level, n)) ++level;
      while (x + pow_rational(Rational(n), -static_cast<long>(level)) > b) ++level;
      stack.emplace_back(x, level);
      x += pow_rational(Rational(n), -static_cast<long>(level));
    }
    std::reverse(stack.begin(), stack.end());
    while (!stack.empty()) {
      auto [c, level] = stack.back();
      stack.pop_back();
      Rational y = slope * c + offset;
      long image_level = static_cast<long>(level) - k;
      if (detail::is_cylinder_start(y, image_level, n)) {
        out.pairs.emplace_back(detail::cylinder_word(c, level, n),
                               detail::cylinder_word(y, static_cast<unsigned>(image_level), n));
        continue;
      }
      Rational step = pow_rational(Rational(n), -static_cast<long>(level) - 1);
      for (long j = n - 1; j >= 0; --j) stack.emplace_back(c + step * j, level + 1);
    }
  }
  return out;
}

namespace detail {

inline void check_complete_antichain(const std::vector<Word>& words, long n, const char* which) {
  Rational measure = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (auto d : words[i])
      if (d >= n) fail(Errc::InvalidArgument, std::string(which) + " word has a digit >= base");
    for (std::size_t j = 0; j < words.size(); ++j)
      if (i != j && is_prefix(words[i], words[j]))
        fail(Errc::NotAntichain, std::string(which) + " words " + to_string(words[i]) + " and " + to_string(words[j]) +
                                     " are not prefix-free");
    measure += pow_rational(Rational(n), -static_cast<long>(words[i].size()));
  }
  if (measure != 1) fail(Errc::NotComplete, std::string(which) + " words do not cover the full shift");
}

}  // namespace detail

/// The element of V_{n,1} mapping each cylinder C(u_i) affinely onto C(v_i).
inline PLMap from_pairs(const ContextPtr& ctx, const PrefixExchange& px) {
  const long n = higman_thompson_base(*ctx);
  if (px.base != n) fail(Errc::WrongContext, "prefix exchange base does not match the context");
  std::vector<Word> us, vs;
  for (const auto& [u, v] : px.pairs) {
    us.push_back(u);
    vs.push_back(v);
  }
  detail::check_complete_antichain(us, n, "domain");
  detail::check_complete_antichain(vs, n, "range");
  std::vector<Piece> pieces;
  for (const auto& [u, v] : px.pairs) {
    Rational a(word_integer(u, n), pow_int(Integer(n), static_cast<unsigned>(u.size())));
    Rational c(word_integer(v, n), pow_int(Integer(n), static_cast<unsigned>(v.size())));
    Rational slope = pow_rational(Rational(n), static_cast<long>(u.size()) - static_cast<long>(v.size()));
    pieces.push_back(Piece{a, slope, c - slope * a});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.start < y.start; });
  return PLMap::make(ctx, std::move(pieces));
}

}  // namespace stein
