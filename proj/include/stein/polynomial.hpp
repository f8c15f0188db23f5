#pragma once

#include <utility>
#include <vector>

#include "stein/rational.hpp"

namespace stein {

/// Dense univariate polynomial over Q, coefficients from the constant term up.
/// The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const Rational& a, std::size_t k) {
    std::vector<Rational> c(k + 1);
    c[k] = a;
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& lead() const { return c_.back(); }

  Rational eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// Enclosure of the image of an interval (Horner with interval arithmetic).
  Interval eval(const Interval& x) const {
    Interval r{0, 0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      r = r * x;
      r.lo += *it;
      r.hi += *it;
    }
    return r;
  }

  Poly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<Rational> c(a.c_);
    for (auto& x : c) x = -x;
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Rational& s, const Poly& a) {
    std::vector<Rational> c(a.c_);
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Euclidean division; b must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
    std::vector<Rational> r = a.c_;
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      Rational f = r[static_cast<std::size_t>(k) + b.c_.size() - 1] / b.lead();
      q[static_cast<std::size_t>(k)] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  Poly monic() const { return is_zero() ? *this : (Rational(1) / lead()) * *this; }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Returns (g, s) with s*a == g (mod m), g = gcd(a, m) monic.
  static std::pair<Poly, Poly> half_gcdext(const Poly& a, const Poly& m) {
    Poly r0 = m, r1 = divmod(a, m).second;
    Poly s0, s1(std::vector<Rational>{1});
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      Poly s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r0.is_zero()) return {r0, s0};
    Rational inv = Rational(1) / r0.lead();
    return {inv * r0, inv * s0};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Sturm chain p, p', -rem(p, p'), ... for counting real roots of a squarefree p.
class SturmChain {
 public:
  SturmChain() = default;
  explicit SturmChain(const Poly& p) {
    chain_.push_back(p);
    if (p.degree() < 1) return;
    chain_.push_back(p.derivative());
    while (true) {
      Poly r = Poly::divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  int sign_changes(const Rational& x) const {
    int changes = 0, last = 0;
    for (const auto& q : chain_) {
      int s = sign(q.eval(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  /// Number of distinct real roots in the open interval (lo, hi), lo < hi.
  int count_open(const Rational& lo, const Rational& hi) const {
    int n = sign_changes(lo) - sign_changes(hi);
    if (chain_.front().eval(hi) == 0) --n;
    return n;
  }

 private:
  std::vector<Poly> chain_;
};

}  // namespace stein
