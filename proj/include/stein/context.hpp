#pragma once

#include <memory>
#include <string>

#include "stein/gamma.hpp"
#include "stein/slope_group.hpp"

namespace stein {

class Context;
using ContextPtr = std::shared_ptr<const Context>;

/// The data (Γ, Λ, ℓ) defining V(Γ, Λ, ℓ), validated: Γ is a Z[Λ]-module and 0 < ℓ ∈ Γ.
class Context {
 public:
  static ContextPtr make(GammaModule gamma, SlopeGroup lambda, const FieldElement& ell) {
    if (!lambda.is_rational() && !lambda.cyclic_generator().field().same_as(gamma.field()))
      fail(Errc::FieldMismatch, "slope generator and Gamma live in different number fields");
    gamma.check_invariant(lambda);
    FieldElement l = ell.in(gamma.field());
    if (l.sign() <= 0) fail(Errc::InvalidArgument, "ell must be positive");
    if (!gamma.contains(l)) fail(Errc::NotInGamma, "ell = " + l.to_string() + " is not in Gamma");
    return ContextPtr(new Context(std::move(gamma), std::move(lambda), std::move(l)));
  }

  const GammaModule& gamma() const { return gamma_; }
  const SlopeGroup& lambda() const { return lambda_; }
  const FieldElement& ell() const { return ell_; }
  const Field& field() const { return gamma_.field(); }

  bool same_as(const Context& o) const {
    if (this == &o) return true;
    return ell_ == o.ell_ && gamma_.same_module(o.gamma_) && lambda_.kind() == o.lambda_.kind() &&
           lambda_.equals(o.lambda_);
  }

  std::string to_string() const {
    return "V(" + gamma_.to_string() + ", " + lambda_.to_string() + ", " + ell_.to_string() + ")";
  }

 private:
  Context(GammaModule g, SlopeGroup l, FieldElement e)
      : gamma_(std::move(g)), lambda_(std::move(l)), ell_(std::move(e)) {}

  GammaModule gamma_;
  SlopeGroup lambda_;
  FieldElement ell_;
};

/// (Z[1/n], ⟨n⟩, r): the Higman-Thompson group V_{n,r}.
inline ContextPtr higman_thompson_context(long n, long r = 1) {
  auto primes = prime_factors(Integer(n));
  return Context::make(GammaModule(Field::rationals(), {FieldElement(1)}, primes),
                       SlopeGroup::rational({Rational(n)}), FieldElement(r));
}

/// (Z + Zβ, ⟨β⟩, 1), β the golden ratio.
inline ContextPtr golden_context() {
  static const ContextPtr ctx = [] {
    Field f = golden_field();
    return Context::make(GammaModule(f, {f.one(), f.generator()}, {}), SlopeGroup({f.generator()}), f.one());
  }();
  return ctx;
}

/// (Z[1/(n_1...n_k)], ⟨n_1, ..., n_k⟩, ell) for integers n_i >= 2.
inline ContextPtr stein_integer_context(const std::vector<long>& ns, long ell = 1) {
  std::vector<Prime> primes;
  std::vector<Rational> gens;
  for (long n : ns) {
    primes = merge_primes(primes, prime_factors(Integer(n)));
    gens.emplace_back(n);
  }
  return Context::make(GammaModule(Field::rationals(), {FieldElement(1)}, primes), SlopeGroup::rational(gens),
                       FieldElement(ell));
}

}  // namespace stein
