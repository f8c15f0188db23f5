#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stein/plmap.hpp"

namespace stein {

/// Finite word over the digits {0, ..., n-1}.
using Word = std::vector<std::uint8_t>;

inline char digit_char(std::uint8_t d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

inline std::string to_string(const Word& w) {
  std::string s;
  for (auto d : w) s += digit_char(d);
  return s;
}

/// Digits 0-9 then a-z.
inline Word parse_word(std::string_view s) {
  Word w;
  for (char c : s) {
    if (c >= '0' && c <= '9') w.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c >= 'a' && c <= 'z') w.push_back(static_cast<std::uint8_t>(c - 'a' + 10));
    else fail(Errc::ParseError, std::string("bad digit '") + c + "' in word");
  }
  return w;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

/// The infinite word  preperiod · period · period · ...,  stored in minimal form
/// (primitive period, shortest preperiod).
class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord() : period_{0} {}
  EventuallyPeriodicWord(Word preperiod, Word period) : pre_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) fail(Errc::InvalidArgument, "period must be nonempty");
    normalize();
  }

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return period_; }

  std::uint8_t at(std::size_t i) const {
    return i < pre_.size() ? pre_[i] : period_[(i - pre_.size()) % period_.size()];
  }

  /// First n letters.
  Word prefix(std::size_t n) const {
    Word w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(at(i));
    return w;
  }

  /// True if the tail is the constant word d d d ...
  bool tail_is(std::uint8_t d) const { return period_.size() == 1 && period_[0] == d; }

  friend bool operator==(const EventuallyPeriodicWord&, const EventuallyPeriodicWord&) = default;

  /// Lexicographic order of the infinite sequences.
  friend std::strong_ordering operator<=>(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b) {
    std::size_t n = std::max(a.pre_.size(), b.pre_.size()) + std::lcm(a.period_.size(), b.period_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a.at(i) != b.at(i)) return a.at(i) <=> b.at(i);
    return std::strong_ordering::equal;
  }

  /// "preperiod(period)".
  std::string to_string() const { return stein::to_string(pre_) + "(" + stein::to_string(period_) + ")"; }

  static EventuallyPeriodicWord parse(std::string_view s) {
    auto open = s.find('(');
    if (open == std::string_view::npos || s.back() != ')')
      fail(Errc::ParseError, "eventually periodic word must look like 'pre(period)'");
    return {parse_word(s.substr(0, open)), parse_word(s.substr(open + 1, s.size() - open - 2))};
  }

 private:
  void normalize() {
    const std::size_t p = period_.size();
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool ok = true;
      for (std::size_t i = d; i < p && ok; ++i) ok = period_[i] == period_[i - d];
      if (ok) {
        period_.resize(d);
        break;
      }
    }
    while (!pre_.empty() && pre_.back() == period_.back()) {
      pre_.pop_back();
      std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
  }

  Word pre_;
  Word period_;
};

// ---------------------------------------------------------------------------
// n-adic coding of [0_+, 1_-] in the context (Z[1/n], ⟨n⟩, 1)

/// Value of the n-ary word as an integer: digits read most significant first.
inline Integer word_integer(const Word& w, long n) {
  Integer v = 0;
  for (auto d : w) v = v * n + d;
  return v;
}

/// Exact value  sum_i x_i / n^i  of an eventually periodic n-ary sequence.
inline Rational n_adic_value(const EventuallyPeriodicWord& x, long n) {
  const Word& pre = x.preperiod();
  const Word& per = x.period();
  Integer np = pow_int(Integer(n), static_cast<unsigned>(pre.size()));
  Integer nq = pow_int(Integer(n), static_cast<unsigned>(per.size()));
  return Rational(word_integer(pre, n), np) + Rational(word_integer(per, n), np * (nq - 1));
}

/// φ(x): the n-ary expansion of a cut point of [0_+, 1_-]. t_+ gets the tail 0 0 0 ...,
/// t_- the tail (n-1)(n-1)... .
inline EventuallyPeriodicWord n_adic_expand(const CutPoint& x, long n) {
  if (n < 2) fail(Errc::WrongContext, "base must be at least 2");
  auto t = x.value.as_rational();
  if (!t) fail(Errc::WrongContext, "cut point is not rational");
  if (!in_domain(x, FieldElement(1))) fail(Errc::OutOfDomain, x.to_string() + " is outside [0+, 1-]");
  if (strip_primes(denominator(*t), prime_factors(Integer(n))) != 1)
    fail(Errc::OutOfDomain, to_string(*t) + " is not in Z[1/" + std::to_string(n) + "]");
  // t = a / n^k
  unsigned k = 0;
  Integer scale = 1;
  while (denominator(*t * scale) != 1) {
    scale *= n;
    ++k;
  }
  Integer a = numerator(*t * scale);
  Word digits(k);
  if (x.side == Side::Minus) --a;  // a > 0: 0_- is excluded
  for (unsigned i = 0; i < k; ++i) {
    digits[k - 1 - i] = static_cast<std::uint8_t>(static_cast<long>(a % n));
    a /= n;
  }
  return {digits, Word{static_cast<std::uint8_t>(x.side == Side::Plus ? 0 : n - 1)}};
}

/// Inverse of n_adic_expand: the word must end in 0^∞ (plus side) or (n-1)^∞ (minus side).
inline CutPoint n_adic_cut(const EventuallyPeriodicWord& x, long n) {
  Side side;
  if (x.tail_is(0)) side = Side::Plus;
  else if (x.tail_is(static_cast<std::uint8_t>(n - 1))) side = Side::Minus;
  else fail(Errc::OutOfDomain, x.to_string() + " does not code a cut point");
  return {FieldElement(n_adic_value(x, n)), side};
}

// ---------------------------------------------------------------------------
// golden-mean shift and β-expansions, β = (1+√5)/2

inline void require_no_11(const Word& w, const std::string& what) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 1) fail(Errc::ForbiddenFactor, what + " has a letter other than 0 and 1");
    if (i && w[i] == 1 && w[i - 1] == 1) fail(Errc::ForbiddenFactor, what + " contains 11");
  }
}

/// b(w) = sum_i w_i / β^i in Q(β).
inline FieldElement beta_word_value(const Word& w) {
  require_no_11(w, "word");
  const Field f = golden_field();
  FieldElement inv = f.generator().inverse(), p = f.one(), v = f.zero();
  for (auto d : w) {
    p *= inv;
    if (d) v += p;
  }
  return v;
}

/// sum_i x_i / β^i for an eventually periodic sequence of the golden-mean shift.
inline FieldElement beta_word_value(const EventuallyPeriodicWord& x) {
  require_no_11(concat(concat(x.preperiod(), x.period()), x.period()), "sequence");
  const Field f = golden_field();
  FieldElement beta = f.generator();
  FieldElement tail = beta_word_value(x.period()) / (f.one() - beta.pow(-static_cast<long>(x.period().size())));
  return beta_word_value(x.preperiod()) + beta.pow(-static_cast<long>(x.preperiod().size())) * tail;
}

/// Length of the interval coded by a cylinder: k, or k+1 when the word ends in 1.
inline long beta_cylinder_exponent(const Word& w) {
  return static_cast<long>(w.size()) + (!w.empty() && w.back() == 1 ? 1 : 0);
}

/// ψ(C(w)) = [b(w)_+, (b(w) + β^{-k})_-], with k+1 in place of k when w ends in 1.
inline std::pair<CutPoint, CutPoint> beta_cylinder_interval(const Word& w) {
  if (w.empty()) fail(Errc::EmptyWord, "cylinder of the empty word");
  FieldElement b = beta_word_value(w);
  FieldElement len = golden_field().generator().pow(-beta_cylinder_exponent(w));
  return {plus(b), minus(b + len)};
}

/// τ: 0 ↦ 0, 1 ↦ 10.
inline Word substitute_tau(const Word& w) {
  Word out;
  for (auto d : w) {
    if (d > 1) fail(Errc::InvalidArgument, "tau acts on binary words");
    out.push_back(d);
    if (d == 1) out.push_back(0);
  }
  return out;
}

/// τ^{-1}: decodes blocks 0 and 10; the word must end on a block boundary.
inline Word substitute_tau_inverse(const Word& w) {
  require_no_11(w, "word");
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) {
      out.push_back(0);
    } else {
      if (i + 1 == w.size()) fail(Errc::UnparsableWord, to_string(w) + " ends inside the block 10");
      out.push_back(1);
      ++i;
    }
  }
  return out;
}

inline EventuallyPeriodicWord substitute_tau(const EventuallyPeriodicWord& x) {
  return {substitute_tau(x.preperiod()), substitute_tau(x.period())};
}

/// τ^{-1} on infinite sequences. Every sequence without 11 parses into blocks 0, 10.
inline EventuallyPeriodicWord substitute_tau_inverse(const EventuallyPeriodicWord& x) {
  require_no_11(concat(concat(x.preperiod(), x.period()), x.period()), "sequence");
  // Decode letter by letter; at each period boundary remember whether a block is open.
  Word out;
  bool open = false;
  auto feed = [&](std::uint8_t d) {
    if (open) {
      open = false;  // d == 0 closes "10"
    } else if (d == 0) {
      out.push_back(0);
    } else {
      out.push_back(1);
      open = true;
    }
  };
  for (auto d : x.preperiod()) feed(d);
  std::vector<std::pair<bool, std::size_t>> seen;  // (open, output length) at period starts
  while (true) {
    for (const auto& [o, len] : seen)
      if (o == open) return {Word(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(len)),
                             Word(out.begin() + static_cast<std::ptrdiff_t>(len), out.end())};
    seen.emplace_back(open, out.size());
    for (auto d : x.period()) feed(d);
  }
}

}  // namespace stein
