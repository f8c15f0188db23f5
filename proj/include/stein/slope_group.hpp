#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stein/normal_form.hpp"
#include "stein/number_field.hpp"

namespace stein {

/// A finitely generated multiplicative subgroup Λ of (0, ∞).
///
/// Two representable kinds: subgroups of Q_{>0}, stored as an exponent lattice
/// over a prime list in Hermite normal form, and infinite cyclic groups ⟨λ⟩
/// generated by one irrational algebraic λ, stored with the canonical
/// generator λ > 1.
class SlopeGroup {
 public:
  enum class Kind { RationalPrimes, CyclicAlgebraic };

  SlopeGroup() : lattice_(0, 0) {}

  /// Λ generated by the given positive elements (none equal to 1).
  explicit SlopeGroup(const std::vector<FieldElement>& generators) {
    std::vector<Rational> rationals;
    std::optional<FieldElement> irrational;
    for (const auto& g : generators) {
      if (g.sign() <= 0) fail(Errc::InvalidArgument, "slope generators must be positive");
      if (g == FieldElement(1)) fail(Errc::InvalidArgument, "1 is not a valid slope generator");
      if (auto q = g.as_rational()) {
        rationals.push_back(*q);
      } else {
        if (irrational) fail(Errc::UnsupportedSlopeGroup, "at most one irrational slope generator is supported");
        irrational = g;
      }
    }
    if (irrational) {
      if (!rationals.empty())
        fail(Errc::UnsupportedSlopeGroup, "mixing rational and irrational slope generators is unsupported");
      kind_ = Kind::CyclicAlgebraic;
      generator_ = *irrational < FieldElement(1) ? irrational->inverse() : *irrational;
      return;
    }
    init_rational(rationals);
  }

  static SlopeGroup rational(const std::vector<Rational>& generators) {
    std::vector<FieldElement> g(generators.begin(), generators.end());
    return SlopeGroup(g);
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::RationalPrimes; }

  /// Primes supporting the exponent lattice (rational kind).
  const std::vector<Prime>& primes() const { return primes_; }
  /// HNF basis of the exponent lattice, one row per generator (rational kind).
  const IntMatrix& lattice() const { return lattice_; }
  /// Canonical generator λ > 1 (cyclic kind).
  const FieldElement& cyclic_generator() const { return generator_; }

  std::size_t rank() const { return kind_ == Kind::CyclicAlgebraic ? 1 : lattice_.rows(); }

  /// Canonical generators: the HNF rows as rationals, or {λ}.
  std::vector<FieldElement> generators() const {
    if (kind_ == Kind::CyclicAlgebraic) return {generator_};
    std::vector<FieldElement> out;
    for (std::size_t i = 0; i < lattice_.rows(); ++i) out.emplace_back(value_of_row(i));
    return out;
  }

  /// Exponent vector of a positive rational over primes(); nullopt if another prime occurs.
  std::optional<std::vector<Integer>> exponents(const Rational& q) const {
    if (q <= 0) return std::nullopt;
    return exponents_over(q, primes_);
  }

  static std::optional<std::vector<Integer>> exponents_over(const Rational& q, const std::vector<Prime>& primes) {
    Integer num = numerator(q), den = denominator(q);
    std::vector<Integer> v;
    for (Prime p : primes) v.emplace_back(take_valuation(num, p) - take_valuation(den, p));
    if (num != 1 || den != 1) return std::nullopt;
    return v;
  }

  /// μ ∈ Λ. For the cyclic kind the exponent search stops at |k| > bound (nullopt).
  std::optional<bool> contains(const FieldElement& mu, long bound = 16) const {
    if (mu.sign() <= 0) return false;
    if (kind_ == Kind::RationalPrimes) {
      auto q = mu.as_rational();
      if (!q) return false;
      auto v = exponents(*q);
      if (!v) return false;
      return in_lattice(*v);
    }
    if (mu.field().degree() > 1 && !mu.field().same_as(generator_.field()))
      fail(Errc::UnsupportedComparison, "slope and slope group live in different number fields");
    // generator_ > 1, so powers are monotone: bracket mu between consecutive powers.
    FieldElement p = FieldElement(1);
    long k = 0;
    if (mu >= p) {
      while (true) {
        FieldElement next = p * generator_;
        if (next > mu) break;
        p = next;
        if (++k > bound) return std::nullopt;
      }
    } else {
      while (p > mu) {
        p = p / generator_;
        if (++k > bound) return std::nullopt;
      }
    }
    return p == mu;
  }

  /// Λ1 = Λ2. Throws UnsupportedComparison for cyclic groups over different fields.
  bool equals(const SlopeGroup& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::CyclicAlgebraic) {
      if (!generator_.field().same_as(o.generator_.field()))
        fail(Errc::UnsupportedComparison, "cyclic slope groups over different number fields");
      return generator_ == o.generator_;
    }
    auto all = merge_primes(primes_, o.primes_);
    return hermite_normal_form(embed(all)).H == hermite_normal_form(o.embed(all)).H;
  }

  /// Exponent lattice rows re-expressed over a superset of primes().
  IntMatrix embed(const std::vector<Prime>& all) const {
    IntMatrix m(lattice_.rows(), all.size());
    for (std::size_t j = 0; j < primes_.size(); ++j) {
      std::size_t k = static_cast<std::size_t>(std::find(all.begin(), all.end(), primes_[j]) - all.begin());
      for (std::size_t i = 0; i < lattice_.rows(); ++i) m(i, k) = lattice_(i, j);
    }
    return m;
  }

  std::string to_string() const {
    std::string s = "<";
    auto g = generators();
    for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + g[i].to_string();
    return s + ">";
  }

 private:
  void init_rational(const std::vector<Rational>& gens) {
    kind_ = Kind::RationalPrimes;
    for (const auto& q : gens) primes_ = merge_primes(primes_, merge_primes(prime_factors(numerator(q)), prime_factors(denominator(q))));
    IntMatrix raw(gens.size(), primes_.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto v = *exponents_over(gens[i], primes_);
      for (std::size_t j = 0; j < primes_.size(); ++j) raw(i, j) = v[j];
    }
    HermiteResult h = hermite_normal_form(raw);
    lattice_ = IntMatrix(h.rank, primes_.size());
    for (std::size_t i = 0; i < h.rank; ++i)
      for (std::size_t j = 0; j < primes_.size(); ++j) lattice_(i, j) = h.H(i, j);
    // drop primes that no longer occur (e.g. generators 2 and 1/2)
    std::vector<std::size_t> used;
    for (std::size_t j = 0; j < primes_.size(); ++j)
      for (std::size_t i = 0; i < lattice_.rows(); ++i)
        if (lattice_(i, j) != 0) {
          used.push_back(j);
          break;
        }
    if (used.size() != primes_.size()) {
      std::vector<Prime> p;
      IntMatrix l(lattice_.rows(), used.size());
      for (std::size_t k = 0; k < used.size(); ++k) {
        p.push_back(primes_[used[k]]);
        for (std::size_t i = 0; i < lattice_.rows(); ++i) l(i, k) = lattice_(i, used[k]);
      }
      primes_ = std::move(p);
      lattice_ = std::move(l);
    }
  }

  Rational value_of_row(std::size_t i) const {
    Rational v = 1;
    for (std::size_t j = 0; j < primes_.size(); ++j) v *= pow_rational(Rational(primes_[j]), static_cast<long>(lattice_(i, j)));
    return v;
  }

  bool in_lattice(const std::vector<Integer>& v) const {
    HermiteResult h{lattice_, IntMatrix::identity(lattice_.rows()), lattice_.rows(), {}};
    for (std::size_t i = 0; i < lattice_.rows(); ++i)
      for (std::size_t j = 0; j < lattice_.cols(); ++j)
        if (lattice_(i, j) != 0) {
          h.pivot_cols.push_back(j);
          break;
        }
    std::vector<Rational> t(v.begin(), v.end());
    auto x = solve_in_row_space(h, t);
    if (!x) return false;
    for (const auto& c : *x)
      if (denominator(c) != 1) return false;
    return true;
  }

  Kind kind_ = Kind::RationalPrimes;
  std::vector<Prime> primes_;
  IntMatrix lattice_;
  FieldElement generator_;
};

}  // namespace stein
