#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stein/gamma.hpp"
#include "stein/normal_form.hpp"
#include "stein/slope_group.hpp"

namespace stein {

/// (Γ, Λ, ℓ) with ℓ optional (groupoid-level comparisons drop it).
struct SteinSpec {
  GammaModule gamma;
  SlopeGroup lambda;
  std::optional<FieldElement> ell;

  SteinSpec(GammaModule g, SlopeGroup l, std::optional<FieldElement> e = std::nullopt)
      : gamma(std::move(g)), lambda(std::move(l)), ell(std::move(e)) {
    gamma.check_invariant(lambda);
    if (ell) {
      ell = ell->in(gamma.field());
      if (ell->sign() <= 0) fail(Errc::InvalidArgument, "ell must be positive");
      if (!gamma.contains(*ell)) fail(Errc::NotInGamma, "ell is not in Gamma");
    }
  }

  SteinSpec without_ell() const {
    SteinSpec s = *this;
    s.ell.reset();
    return s;
  }
};

// ---------------------------------------------------------------------------
// coinvariants H_0(Λ, Γ) = Γ / ⟨t - μ t⟩

/// H_0(Λ, Γ) as a Z[1/m]-module: SNF of the stacked relation matrices I - M_μ,
/// localized at the inverted primes of Γ.
inline AbelianInvariants coinvariants(const GammaModule& G, const SlopeGroup& L) {
  const std::size_t r = G.rank();
  std::vector<RationalMatrix> blocks;
  try {
    for (const auto& mu : L.generators()) blocks.push_back(RationalMatrix::identity(r) - G.multiplication_matrix(mu));
  } catch (const Error& e) {
    if (e.code() != Errc::NotInvariant) throw;
    fail(Errc::UnsupportedGamma, "Gamma is not a module over Z[Lambda]");
  }
  IntMatrix R(r, r * blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    Integer den = 1;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) den = lcm(den, denominator(blocks[b](i, j)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) R(i, b * r + j) = numerator(blocks[b](i, j) * den);
  }
  return localize_factors(cokernel(R), G.inverted_primes());
}

/// Image of an element of Γ in H_0: residues modulo the invariant factors, then free coordinates.
struct ResidueVector {
  std::vector<Integer> torsion;
  std::vector<Rational> free;

  bool is_zero() const {
    for (const auto& x : torsion)
      if (x != 0) return false;
    for (const auto& x : free)
      if (x != 0) return false;
    return true;
  }
  friend bool operator==(const ResidueVector&, const ResidueVector&) = default;

  std::string to_string() const {
    std::string s = "(";
    bool first = true;
    for (const auto& x : torsion) {
      s += (first ? "" : ", ") + x.str();
      first = false;
    }
    for (const auto& x : free) {
      s += (first ? "" : ", ") + stein::to_string(x);
      first = false;
    }
    return s + ")";
  }
};

inline ResidueVector class_of(const FieldElement& t, const AbelianInvariants& inv, const GammaModule& G) {
  auto c = G.coordinates(t);
  if (!c) fail(Errc::NotInGamma, t.to_string() + " is not in Gamma");
  ResidueVector out;
  const std::size_t k = inv.invariant_factors.size();
  for (std::size_t i = 0; i < inv.reduction_map.rows(); ++i) {
    Rational y = 0;
    for (std::size_t j = 0; j < G.rank(); ++j) y += Rational(inv.reduction_map(i, j)) * (*c)[j];
    if (i < k) {
      const Integer& d = inv.invariant_factors[i];
      out.torsion.push_back(mod_floor(numerator(y) * mod_inverse(denominator(y), d), d));
    } else {
      out.free.push_back(y);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// verdicts

enum class Outcome { Isomorphic, NotIsomorphic, Unknown };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Isomorphic: return "Isomorphic";
    case Outcome::NotIsomorphic: return "NotIsomorphic";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

enum class ObstructionKind {
  None,
  SlopeGroupsDiffer,
  CoinvariantsDiffer,
  GammaRankDiffers,
  InvertedPrimesDiffer,
  SlopeRankDiffers,
  NoOrderEmbedding,
  HigmanThompson,
};

inline std::string_view to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::None: return "None";
    case ObstructionKind::SlopeGroupsDiffer: return "SlopeGroupsDiffer";
    case ObstructionKind::CoinvariantsDiffer: return "CoinvariantsDiffer";
    case ObstructionKind::GammaRankDiffers: return "GammaRankDiffers";
    case ObstructionKind::InvertedPrimesDiffer: return "InvertedPrimesDiffer";
    case ObstructionKind::SlopeRankDiffers: return "SlopeRankDiffers";
    case ObstructionKind::NoOrderEmbedding: return "NoOrderEmbedding";
    case ObstructionKind::HigmanThompson: return "HigmanThompson";
  }
  return "None";
}

struct Obstruction {
  ObstructionKind kind = ObstructionKind::None;
  std::string detail;
  std::optional<Prime> prime;  // NoOrderEmbedding: a prime outside the target's support
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<FieldElement> scale;  // Isomorphic: s with Γ1 = s Γ2
  std::string witness;                // Isomorphic: H_0 certificate or closed-form reason
  Obstruction obstruction;            // NotIsomorphic
  std::string reason;                 // Unknown

  /// One line: "Isomorphic (s=1)", "NotIsomorphic: ...", "Unknown: ...".
  std::string summary() const {
    switch (outcome) {
      case Outcome::Isomorphic:
        return scale ? "Isomorphic (s=" + scale->to_string() + ")" : "Isomorphic (" + witness + ")";
      case Outcome::NotIsomorphic: return "NotIsomorphic: " + obstruction.detail;
      case Outcome::Unknown: return "Unknown: " + reason;
    }
    return {};
  }
};

inline Verdict not_isomorphic(ObstructionKind k, std::string detail, std::optional<Prime> p = std::nullopt) {
  Verdict v;
  v.outcome = Outcome::NotIsomorphic;
  v.obstruction = {k, std::move(detail), p};
  return v;
}

inline Verdict unknown(std::string reason) {
  Verdict v;
  v.outcome = Outcome::Unknown;
  v.reason = std::move(reason);
  return v;
}

// ---------------------------------------------------------------------------
// order embeddings of slope groups

struct OrderEmbedding {
  enum class Status { Yes, No, Unknown };
  Status status = Status::Unknown;
  std::optional<Rational> c;  // Yes, rank >= 2: λ ↦ λ^c
  std::string detail;
  std::optional<Prime> prime;  // No: a prime of Λ1 missing from Λ2
};

/// Decides whether an order-preserving injective homomorphism Λ1 → Λ2 exists.
/// For rank(Λ1) >= 2 such a map is λ ↦ λ^c with c > 0, so it exists iff every
/// exponent vector of Λ1 lies in the rational span of Λ2's lattice; the
/// smallest such c is returned.
inline OrderEmbedding order_embedding_exists(const SlopeGroup& L1, const SlopeGroup& L2, long bound = 16) {
  using S = OrderEmbedding::Status;
  (void)bound;
  if (L1.rank() == 0) return {S::Yes, std::nullopt, "trivial group", std::nullopt};
  if (L1.rank() == 1) {
    if (L2.rank() == 0) return {S::No, std::nullopt, "target slope group is trivial", std::nullopt};
    return {S::Yes, std::nullopt, L1.generators()[0].to_string() + " -> " + L2.generators()[0].to_string(), std::nullopt};
  }
  if (!L2.is_rational() || L2.rank() < L1.rank())
    return {S::No, std::nullopt, "rank of the target slope group is too small", std::nullopt};
  if (!L1.is_rational()) return {S::Unknown, std::nullopt, "unsupported slope group kind", std::nullopt};

  auto all = merge_primes(L1.primes(), L2.primes());
  IntMatrix A = L1.embed(all), B = L2.embed(all);
  HermiteResult hb = hermite_normal_form(B);
  Integer num_lcm = 1, den_gcd = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    std::vector<Rational> v;
    for (std::size_t j = 0; j < all.size(); ++j) v.emplace_back(A(i, j));
    auto x = solve_in_row_space(hb, v);
    if (!x) {
      std::optional<Prime> p;
      for (std::size_t j = 0; j < all.size() && !p; ++j)
        if (A(i, j) != 0 && std::find(L2.primes().begin(), L2.primes().end(), all[j]) == L2.primes().end()) p = all[j];
      std::string d = "no order-preserving embedding Λ1→Λ2";
      d += p ? " (prime " + std::to_string(*p) + ")" : " (generator outside the rational span)";
      return {S::No, std::nullopt, d, p};
    }
    for (const auto& xi : *x) {
      if (xi == 0) continue;
      num_lcm = lcm(num_lcm, denominator(xi));
      den_gcd = gcd(den_gcd, numerator(xi));
    }
  }
  Rational c(num_lcm, den_gcd == 0 ? Integer(1) : den_gcd);
  return {S::Yes, c, "λ ↦ λ^" + to_string(c), std::nullopt};
}

// ---------------------------------------------------------------------------
// rank-one obstructions and the Higman-Thompson closed form

/// (n, r) when the spec is (Z[1/n], ⟨n⟩, ℓ); r = n^k ℓ is the smallest integer multiple.
inline std::optional<std::pair<long, Integer>> higman_thompson_parameters(const SteinSpec& s) {
  if (!s.ell || !s.gamma.field().is_rational() || !s.lambda.is_rational() || s.lambda.rank() != 1 ||
      s.gamma.rank() != 1)
    return std::nullopt;
  Rational n = *s.lambda.generators()[0].as_rational();
  if (denominator(n) != 1 || numerator(n) < 2) return std::nullopt;
  auto primes = prime_factors(numerator(n));
  if (s.gamma.inverted_primes() != primes || !s.gamma.contains(FieldElement(1)) ||
      !in_localization(*s.gamma.basis()[0].as_rational(), primes))
    return std::nullopt;
  Rational r = *s.ell->as_rational();
  while (denominator(r) != 1) r *= n;
  return std::make_pair(numerator(n).convert_to<long>(), numerator(r));
}

/// Obstruction battery for inputs outside the rank >= 2 classification: slope
/// rank, order embeddings in both directions, and the Higman-Thompson closed form.
inline Verdict rank_one_report(const SteinSpec& A, const SteinSpec& B, long bound = 16) {
  if (A.lambda.rank() != B.lambda.rank())
    return not_isomorphic(ObstructionKind::SlopeRankDiffers, "slope groups have ranks " + std::to_string(A.lambda.rank()) +
                                                                 " and " + std::to_string(B.lambda.rank()));
  auto e12 = order_embedding_exists(A.lambda, B.lambda, bound);
  if (e12.status == OrderEmbedding::Status::No) return not_isomorphic(ObstructionKind::NoOrderEmbedding, e12.detail, e12.prime);
  auto e21 = order_embedding_exists(B.lambda, A.lambda, bound);
  if (e21.status == OrderEmbedding::Status::No) {
    std::string d = e21.detail;
    if (auto at = d.find("Λ1→Λ2"); at != std::string::npos) d.replace(at, std::string("Λ1→Λ2").size(), "Λ2→Λ1");
    return not_isomorphic(ObstructionKind::NoOrderEmbedding, d, e21.prime);
  }
  auto ha = higman_thompson_parameters(A), hb = higman_thompson_parameters(B);
  if (ha && hb) {
    auto [n, r] = *ha;
    auto [m, s] = *hb;
    Integer g1 = gcd(Integer(n - 1), r), g2 = gcd(Integer(m - 1), s);
    std::string params = "V_{" + std::to_string(n) + "," + r.str() + "} vs V_{" + std::to_string(m) + "," + s.str() + "}";
    if (n == m && g1 == g2) {
      Verdict v;
      v.outcome = Outcome::Isomorphic;
      v.witness = "Higman-Thompson: " + params + ", n = m and gcd(n-1,r) = gcd(m-1,s) = " + g1.str();
      return v;
    }
    return not_isomorphic(ObstructionKind::HigmanThompson,
                          "Higman-Thompson invariants differ: " + params + " (n, gcd(n-1,r)) = (" + std::to_string(n) +
                              ", " + g1.str() + ") vs (" + std::to_string(m) + ", " + g2.str() + ")");
  }
  return unknown("no obstruction found and rank-one data does not decide isomorphism");
}

// ---------------------------------------------------------------------------
// rank >= 2 classification

namespace detail {

/// Positive u != 1, u outside Λ, with u Γ = Γ; bounded coefficient search.
inline std::vector<FieldElement> stabilizer_units(const GammaModule& G, const SlopeGroup& L, long bound,
                                                  std::size_t max_units = 4) {
  std::vector<FieldElement> out;
  const FieldElement& g = G.basis().front();
  const FieldElement one(1);
  for (const auto& v : small_vectors(G.rank(), bound, 4000)) {
    std::vector<Rational> c(v.begin(), v.end());
    FieldElement u = G.combine(c) / g;
    if (u.sign() <= 0 || u == one) continue;
    if (u < one) continue;  // inverses are covered by negative powers
    bool stabilizes = std::all_of(G.basis().begin(), G.basis().end(), [&](const auto& b) {
      return G.contains(u * b) && G.contains(b / u);
    });
    if (!stabilizes) continue;
    if (L.contains(u, bound) == true) continue;
    bool dup = false;
    for (const auto& w : out) dup = dup || w == u;
    if (!dup) out.push_back(u);
    if (out.size() >= max_units) break;
  }
  return out;
}

}  // namespace detail

/// Isomorphism verdict for Stein groups (ℓ present on both sides) or Stein
/// groupoids (otherwise). Rank-one inputs are delegated to rank_one_report.
inline Verdict classify_pair(const SteinSpec& A, const SteinSpec& B, long search_bound = 16) {
  if (A.gamma.rank() < 2 || B.gamma.rank() < 2) return rank_one_report(A, B, search_bound);

  bool same_slopes = false;
  try {
    same_slopes = A.lambda.equals(B.lambda);
  } catch (const Error& e) {
    if (e.code() != Errc::UnsupportedComparison) throw;
    return unknown("slope groups cannot be compared: " + e.message());
  }
  if (!same_slopes)
    return not_isomorphic(ObstructionKind::SlopeGroupsDiffer,
                          "slope groups differ (" + A.lambda.to_string() + " vs " + B.lambda.to_string() + ")");

  AbelianInvariants h1 = coinvariants(A.gamma, A.lambda), h2 = coinvariants(B.gamma, B.lambda);
  if (!same_group(h1, h2))
    return not_isomorphic(ObstructionKind::CoinvariantsDiffer,
                          "coinvariants differ (" + h1.to_string() + " vs " + h2.to_string() + ")");

  ScaleResult sc = scale_equivalence(A.gamma, B.gamma, search_bound, true);
  if (sc.status == ScaleResult::Status::CertifiedDistinct) {
    auto kind = A.gamma.rank() != B.gamma.rank() ? ObstructionKind::GammaRankDiffers : ObstructionKind::InvertedPrimesDiffer;
    return not_isomorphic(kind, "no s > 0 with Γ1 = sΓ2: " + sc.detail);
  }
  if (sc.status == ScaleResult::Status::Unknown) return unknown(sc.detail);
  const FieldElement s = *sc.scale;

  Verdict v;
  v.outcome = Outcome::Isomorphic;
  if (!A.ell || !B.ell) {
    v.scale = s;
    v.witness = "Γ1 = sΓ2 and Λ1 = Λ2; H0 = " + h1.to_string();
    return v;
  }
  auto ell_condition = [&](const FieldElement& t) { return class_of(*A.ell - t * *B.ell, h1, A.gamma).is_zero(); };
  auto accept = [&](const FieldElement& t) {
    v.scale = t;
    v.witness = "H0 = " + h1.to_string() + "; class of ℓ1 - sℓ2 = " + class_of(*A.ell - t * *B.ell, h1, A.gamma).to_string();
    return v;
  };
  if (ell_condition(s)) return accept(s);
  for (const auto& u : detail::stabilizer_units(A.gamma, A.lambda, search_bound))
    for (long k = 1; k <= search_bound; ++k)
      for (long e : {k, -k}) {
        FieldElement t = s * u.pow(e);
        if (ell_condition(t)) return accept(t);
      }
  return unknown("Γ1 = sΓ2 for s = " + s.to_string() + ", but no tested scale makes ℓ1 - sℓ2 vanish in H0 = " +
                 h1.to_string());
}

}  // namespace stein
