#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "stein/normal_form.hpp"
#include "stein/number_field.hpp"
#include "stein/slope_group.hpp"

namespace stein {

inline bool is_prime(Prime p) {
  if (p < 2) return false;
  for (Prime d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Γ: a Z[1/m]-lattice  Z[1/m] b_1 + ... + Z[1/m] b_r  inside a number field,
/// where m is the product of `inverted_primes` (empty: a plain Z-lattice).
class GammaModule {
 public:
  GammaModule() = default;

  GammaModule(Field field, std::vector<FieldElement> basis, std::vector<Prime> inverted_primes)
      : field_(std::move(field)), primes_(std::move(inverted_primes)) {
    for (Prime p : primes_)
      if (!is_prime(p)) fail(Errc::InvalidArgument, std::to_string(p) + " is not a prime");
    primes_ = merge_primes(primes_, {});
    if (basis.empty()) fail(Errc::InvalidArgument, "Gamma needs at least one basis element");
    for (auto& b : basis) basis_.push_back(b.in(field_));

    const std::size_t r = basis_.size(), d = static_cast<std::size_t>(field_.degree());
    scale_ = 1;
    for (const auto& b : basis_)
      for (const auto& c : b.coords()) scale_ = lcm(scale_, denominator(c));
    IntMatrix B(r, d);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) B(i, j) = numerator(basis_[i].coords()[j] * scale_);
    hnf_ = hermite_normal_form(B);
    if (hnf_.rank != r) fail(Errc::LinearlyDependent, "Gamma basis is not linearly independent over Q");
    if (r < 2 && primes_.empty()) fail(Errc::NonDense, "a rank-one Z-lattice is not dense in R");
  }

  const Field& field() const { return field_; }
  const std::vector<FieldElement>& basis() const { return basis_; }
  const std::vector<Prime>& inverted_primes() const { return primes_; }
  std::size_t rank() const { return basis_.size(); }

  /// Z[1/m]-coefficients of t in the basis, or nullopt when t is not in Γ.
  std::optional<std::vector<Rational>> coordinates(const FieldElement& t) const {
    FieldElement u = t.in(field_);
    std::vector<Rational> target;
    for (const auto& c : u.coords()) target.push_back(c * scale_);
    auto x = solve_in_row_space(hnf_, target);
    if (!x) return std::nullopt;
    std::vector<Rational> c(rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t k = 0; k < rank(); ++k) c[i] += (*x)[k] * Rational(hnf_.U(k, i));
    for (const auto& ci : c)
      if (!in_localization(ci, primes_)) return std::nullopt;
    return c;
  }

  bool contains(const FieldElement& t) const { return coordinates(t).has_value(); }

  FieldElement combine(const std::vector<Rational>& coeffs) const {
    FieldElement t = field_.zero();
    for (std::size_t i = 0; i < rank(); ++i) t += FieldElement(coeffs[i]) * basis_[i];
    return t;
  }

  /// Matrix M over Z[1/m] with mu * b_j = sum_i M(i, j) b_i.
  RationalMatrix multiplication_matrix(const FieldElement& mu) const {
    RationalMatrix M(rank(), rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      auto c = coordinates(mu * basis_[j]);
      if (!c) fail(Errc::NotInvariant, "multiplication by " + mu.to_string() + " does not preserve Gamma");
      for (std::size_t i = 0; i < rank(); ++i) M(i, j) = (*c)[i];
    }
    return M;
  }

  /// Throws NotInvariant unless Γ is a Z[Λ]-module.
  void check_invariant(const SlopeGroup& lambda) const {
    for (const auto& g : lambda.generators()) {
      multiplication_matrix(g);
      multiplication_matrix(g.inverse());
    }
  }

  GammaModule scaled(const FieldElement& s) const {
    std::vector<FieldElement> b;
    for (const auto& x : basis_) b.push_back(s * x);
    return GammaModule(field_, std::move(b), primes_);
  }

  /// Equality as subsets of R.
  bool same_module(const GammaModule& o) const {
    if (!field_.same_as(o.field_) || rank() != o.rank() || primes_ != o.primes_) return false;
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const auto& b) { return contains(b); }) &&
           std::all_of(basis_.begin(), basis_.end(), [&](const auto& b) { return o.contains(b); });
  }

  /// Determinant of the basis coordinates (full-rank modules only).
  Rational covolume() const {
    RationalMatrix B(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) B(i, j) = basis_[i].coords()[j];
    return determinant(B);
  }

  std::string to_string() const {
    std::string s;
    std::string ring = "Z";
    if (!primes_.empty()) {
      ring = "Z[1/";
      Integer m = 1;
      for (Prime p : primes_) m *= p;
      ring += m.str() + "]";
    }
    for (std::size_t i = 0; i < rank(); ++i) {
      s += i ? " + " : "";
      s += basis_[i] == FieldElement(1) ? ring : ring + "*(" + basis_[i].to_string() + ")";
    }
    return s;
  }

 private:
  Field field_ = Field::rationals();
  std::vector<Prime> primes_;
  std::vector<FieldElement> basis_;
  Integer scale_ = 1;
  HermiteResult hnf_;
};

/// Norm of s over Q: determinant of multiplication by s in the power basis.
inline Rational field_norm(const FieldElement& s) {
  const Field& f = s.field();
  const std::size_t d = static_cast<std::size_t>(f.degree());
  RationalMatrix M(d, d);
  FieldElement p = f.one();
  for (std::size_t k = 0; k < d; ++k) {
    FieldElement col = s * p;
    for (std::size_t i = 0; i < d; ++i) M(i, k) = col.coords()[i];
    p = p * f.generator();
  }
  if (d == 1) return s.coords()[0];
  return determinant(M);
}

struct ScaleResult {
  enum class Status { Found, CertifiedDistinct, Unknown };
  Status status = Status::Unknown;
  std::optional<FieldElement> scale;  // Found: s > 0 with s * G2 = G1
  std::string detail;
};

namespace detail {

/// Coefficient vectors in [-bound, bound]^r, smallest L1 norm first, then leading coordinates first,
/// positive before negative.
inline std::vector<std::vector<long>> small_vectors(std::size_t r, long bound, std::size_t cap = 20000) {
  while (bound > 1) {
    double count = 1;
    for (std::size_t i = 0; i < r; ++i) count *= static_cast<double>(2 * bound + 1);
    if (count <= static_cast<double>(cap)) break;
    --bound;
  }
  std::vector<std::vector<long>> out;
  std::vector<long> v(r, -bound);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < r && v[i] == bound) v[i++] = -bound;
    if (i == r) break;
    ++v[i];
  }
  auto key = [](const std::vector<long>& a) {
    long n = 0;
    for (long x : a) n += x < 0 ? -x : x;
    std::vector<long> k{n};
    for (auto it = a.rbegin(); it != a.rend(); ++it) k.push_back(*it < 0 ? 2 * (-*it) : 2 * *it - 1);
    return k;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

inline bool unit_of_localization(const Rational& q, const std::vector<Prime>& primes) {
  if (q == 0) return false;
  return strip_primes(abs(numerator(q)), primes) == 1 && strip_primes(denominator(q), primes) == 1;
}

}  // namespace detail

/// Searches for s > 0 with G1 = s * G2.
///
/// CertifiedDistinct when a scaling invariant differs: rank, inverted primes,
/// or (when the caller supplies it) the coinvariant groups. Otherwise
/// candidates s = h / g are tried, g the first basis element of G2 and h
/// running over G1-elements with basis coefficients bounded by search_bound.
inline ScaleResult scale_equivalence(const GammaModule& G1, const GammaModule& G2, long search_bound,
                                     std::optional<bool> coinvariants_match = std::nullopt) {
  using S = ScaleResult::Status;
  if (search_bound < 1) fail(Errc::InvalidArgument, "search bound must be >= 1");
  if (G1.rank() != G2.rank())
    return {S::CertifiedDistinct, std::nullopt,
            "ranks differ (" + std::to_string(G1.rank()) + " vs " + std::to_string(G2.rank()) + ")"};
  if (G1.inverted_primes() != G2.inverted_primes())
    return {S::CertifiedDistinct, std::nullopt, "inverted primes differ"};
  if (coinvariants_match == false) return {S::CertifiedDistinct, std::nullopt, "coinvariants differ"};
  if (!G1.field().same_as(G2.field()))
    return {S::Unknown, std::nullopt, "modules live in different number fields"};

  const bool full_rank = G1.rank() == static_cast<std::size_t>(G1.field().degree());
  Rational ratio = full_rank ? G1.covolume() / G2.covolume() : Rational(0);
  const FieldElement& g = G2.basis().front();

  for (const auto& v : detail::small_vectors(G1.rank(), search_bound)) {
    std::vector<Rational> c(v.begin(), v.end());
    FieldElement h = G1.combine(c);
    if (h.is_zero()) continue;
    FieldElement s = h / g;
    if (s.sign() <= 0) continue;
    if (full_rank && !detail::unit_of_localization(ratio / field_norm(s), G1.inverted_primes())) continue;
    bool ok = std::all_of(G2.basis().begin(), G2.basis().end(), [&](const auto& b) { return G1.contains(s * b); }) &&
              std::all_of(G1.basis().begin(), G1.basis().end(), [&](const auto& b) { return G2.contains(b / s); });
    if (ok) return {S::Found, s, "s = " + s.to_string()};
  }
  return {S::Unknown, std::nullopt, "no scale found within the search bound"};
}

}  // namespace stein
