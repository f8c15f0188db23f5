#pragma once

#include <compare>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stein/polynomial.hpp"
#include "stein/rational.hpp"

namespace stein {

/// Primitive integer polynomial a_0 + a_1 x + ... + a_d x^d with a_d > 0.
class MinimalPolynomial {
 public:
  /// Divides out the content and normalizes the sign of the leading coefficient.
  explicit MinimalPolynomial(std::vector<Integer> coeffs) : a_(std::move(coeffs)) {
    if (a_.size() < 2) fail(Errc::InvalidArgument, "minimal polynomial must have degree >= 1");
    if (a_.back() == 0) fail(Errc::ZeroLeadingCoefficient, "leading coefficient is zero");
    Integer g = 0;
    for (const auto& c : a_) g = gcd(g, c);
    if (a_.back() < 0) g = -g;
    for (auto& c : a_) c /= g;
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<Integer>& coeffs() const { return a_; }

  Poly as_poly() const {
    std::vector<Rational> c(a_.begin(), a_.end());
    return Poly(std::move(c));
  }

  friend bool operator==(const MinimalPolynomial&, const MinimalPolynomial&) = default;

 private:
  std::vector<Integer> a_;
};

namespace detail {

struct FieldData {
  FieldData(MinimalPolynomial mp, Interval iso, std::string sym)
      : minpoly(std::move(mp)), poly(minpoly.as_poly()), sturm(poly), symbol(std::move(sym)),
        declared(iso), isolation(std::move(iso)) {}

  MinimalPolynomial minpoly;
  Poly poly;
  SturmChain sturm;
  std::string symbol;
  Interval declared;

  mutable std::mutex mutex;
  mutable Interval isolation;  // shrinks monotonically; always isolates the chosen root

  int degree() const { return minpoly.degree(); }

  Interval current() const {
    std::lock_guard lock(mutex);
    return isolation;
  }

  void refine(int steps) const {
    std::lock_guard lock(mutex);
    for (int i = 0; i < steps && isolation.lo != isolation.hi; ++i) {
      Rational mid = (isolation.lo + isolation.hi) / 2;
      int sm = sign(poly.eval(mid));
      if (sm == 0) {
        isolation = {mid, mid};
      } else if (sm == sign(poly.eval(isolation.lo))) {
        isolation.lo = mid;
      } else {
        isolation.hi = mid;
      }
    }
  }
};

}  // namespace detail

class FieldElement;

/// A real algebraic number field Q(λ) with a distinguished real embedding.
/// Degree one is plain Q; all degree-one fields are treated as the same field.
class Field {
 public:
  /// Builds Q(λ) where λ is the unique root of `minpoly` in the open interval (lo, hi).
  static Field make(const MinimalPolynomial& minpoly, const Interval& root, std::string symbol = "λ") {
    if (!(root.lo < root.hi)) fail(Errc::InvalidArgument, "root interval must satisfy lo < hi");
    Poly p = minpoly.as_poly();
    if (Poly::gcd(p, p.derivative()).degree() > 0)
      fail(Errc::NotSquarefree, "minimal polynomial has a repeated factor");
    SturmChain sturm(p);
    int n = sturm.count_open(root.lo, root.hi);
    if (n == 0) fail(Errc::NoRootInInterval, "no root of the polynomial in (" + to_string(root.lo) + ", " + to_string(root.hi) + ")");
    if (n > 1) fail(Errc::MultipleRootsInInterval, std::to_string(n) + " roots in the isolation interval");

    Interval iso = root;
    while (iso.lo != iso.hi && (p.eval(iso.lo) == 0 || p.eval(iso.hi) == 0)) {
      Rational mid = (iso.lo + iso.hi) / 2;
      if (p.eval(mid) == 0) {
        iso = {mid, mid};
      } else if (sturm.count_open(iso.lo, mid) == 1) {
        iso.hi = mid;
      } else {
        iso.lo = mid;
      }
    }
    auto data = std::make_shared<detail::FieldData>(minpoly, iso, std::move(symbol));
    data->declared = root;
    if (minpoly.degree() >= 2) data->refine(48);
    return Field(std::move(data));
  }

  /// The field Q.
  static Field rationals() {
    static const Field q = [] {
      MinimalPolynomial x(std::vector<Integer>{0, 1});
      return Field(std::make_shared<detail::FieldData>(x, Interval{0, 0}, "λ"));
    }();
    return q;
  }

  int degree() const { return data_->degree(); }
  bool is_rational() const { return degree() == 1; }
  const MinimalPolynomial& minpoly() const { return data_->minpoly; }
  const std::string& symbol() const { return data_->symbol; }

  /// Current isolating interval of the chosen root (narrows as signs are decided).
  Interval root_interval() const { return data_->current(); }
  /// The isolating interval given to make().
  const Interval& declared_interval() const { return data_->declared; }

  bool same_as(const Field& o) const {
    if (data_ == o.data_) return true;
    if (is_rational() && o.is_rational()) return true;
    if (!(minpoly() == o.minpoly())) return false;
    Interval a = root_interval(), b = o.root_interval();
    Rational lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) return false;
    if (lo == hi) return data_->poly.eval(lo) == 0;
    return data_->sturm.count_open(lo, hi) >= 1 || data_->poly.eval(lo) == 0 || data_->poly.eval(hi) == 0;
  }

  friend bool operator==(const Field& a, const Field& b) { return a.same_as(b); }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_rational(const Rational& q) const;
  /// The distinguished root λ.
  FieldElement generator() const;
  /// c_0 + c_1 λ + ... ; longer vectors are reduced modulo the minimal polynomial.
  FieldElement element(std::vector<Rational> coords) const;

  /// Sign of the polynomial expression `coords` at the chosen root; exact.
  int sign_at_root(const std::vector<Rational>& coords) const {
    Poly a{std::vector<Rational>(coords)};
    if (a.is_zero()) return 0;
    if (a.degree() == 0) return sign(a.coeff(0));
    for (int iter = 0;; ++iter) {
      Interval iso = data_->current();
      if (iso.lo == iso.hi) return sign(a.eval(iso.lo));
      Interval v = a.eval(iso);
      if (v.lo > 0) return 1;
      if (v.hi < 0) return -1;
      // Only possible when the minimal polynomial is reducible and shares a factor with `a`.
      // The roots of g are roots of the minimal polynomial, and iso isolates exactly one.
      if (iter == 40) {
        Poly g = Poly::gcd(a, data_->poly);
        if (g.degree() >= 1 && SturmChain(g).count_open(iso.lo, iso.hi) > 0) return 0;
      }
      data_->refine(16);
    }
  }

  /// Rational interval of width < eps containing the value of `coords` at the root.
  Interval enclose(const std::vector<Rational>& coords, const Rational& eps) const {
    if (eps <= 0) fail(Errc::InvalidArgument, "approximation width must be positive");
    Poly a{std::vector<Rational>(coords)};
    while (true) {
      Interval iso = data_->current();
      Interval v = a.eval(iso);
      if (v.width() < eps) return v;
      data_->refine(8);
    }
  }

  /// Reduction of an arbitrary polynomial in λ to canonical coordinates.
  std::vector<Rational> reduce(const Poly& a) const {
    std::vector<Rational> out(static_cast<std::size_t>(degree()));
    if (is_rational()) {
      out[0] = a.eval(rational_root());
      return out;
    }
    Poly r = Poly::divmod(a, data_->poly).second;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = r.coeff(k);
    return out;
  }

  /// Inverse of the polynomial expression `a` modulo the minimal polynomial.
  std::vector<Rational> inverse(const Poly& a) const {
    if (a.is_zero()) fail(Errc::DivisionByZero, "division by zero");
    auto [g, s] = Poly::half_gcdext(a, data_->poly);
    if (g.degree() != 0) fail(Errc::DivisionByZero, "zero divisor in a reducible quotient ring");
    return reduce(s);
  }

  Rational rational_root() const {
    const auto& c = minpoly().coeffs();
    return Rational(-c[0], c[1]);
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}

  std::shared_ptr<const detail::FieldData> data_;
};

/// Exact element c_0 + c_1 λ + ... + c_{d-1} λ^{d-1} of a Field.
class FieldElement {
 public:
  FieldElement() : field_(Field::rationals()), c_(1) {}
  FieldElement(const Rational& q) : field_(Field::rationals()), c_{q} {}  // NOLINT: implicit from Q
  FieldElement(long q) : FieldElement(Rational(q)) {}                     // NOLINT

  FieldElement(Field f, std::vector<Rational> canonical) : field_(std::move(f)), c_(std::move(canonical)) {}

  const Field& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  std::optional<Rational> as_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (c_[k] != 0) return std::nullopt;
    return c_[0];
  }

  int sign() const { return field_.sign_at_root(c_); }

  Interval approx(const Rational& eps) const {
    if (auto q = as_rational()) return {*q, *q};
    return field_.enclose(c_, eps);
  }

  /// Rewrites a rational element into `target` (any element lives in its own field too).
  FieldElement in(const Field& target) const {
    if (field_.same_as(target)) return *this;
    if (auto q = as_rational(); q && field_.is_rational()) return target.from_rational(*q);
    fail(Errc::FieldMismatch, "element belongs to a different number field");
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    auto [x, y] = unify(a, b);
    for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] += y.c_[k];
    return x;
  }
  friend FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    auto [x, y] = unify(a, b);
    for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] -= y.c_[k];
    return x;
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    auto [x, y] = unify(a, b);
    if (x.c_.size() == 1) return FieldElement(x.field_, {x.c_[0] * y.c_[0]});
    return FieldElement(x.field_, x.field_.reduce(Poly(x.c_) * Poly(y.c_)));
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

  FieldElement inverse() const {
    if (is_zero()) fail(Errc::DivisionByZero, "division by zero");
    if (c_.size() == 1) return FieldElement(field_, {Rational(1) / c_[0]});
    return FieldElement(field_, field_.inverse(Poly(c_)));
  }

  FieldElement pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    FieldElement r = field_.one(), b = *this;
    auto u = static_cast<unsigned long>(k);
    while (u) {
      if (u & 1UL) r *= b;
      b *= b;
      u >>= 1UL;
    }
    return r;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    auto [x, y] = unify(a, b);
    return x.c_ == y.c_;
  }

  /// Order of the real values; exact.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
    int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const {
    if (c_.size() == 1) return stein::to_string(c_[0]);
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& x = c_[k];
      if (x == 0) continue;
      std::string mag = stein::to_string(abs(x));
      if (!out.empty()) out += x < 0 ? "-" : "+";
      else if (x < 0) out += "-";
      if (k == 0) {
        out += mag;
        continue;
      }
      if (abs(x) != 1) out += mag + "*";
      out += field_.symbol();
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static std::pair<FieldElement, FieldElement> unify(const FieldElement& a, const FieldElement& b) {
    if (a.c_.size() == b.c_.size()) {
      if (a.c_.size() > 1 && !a.field_.same_as(b.field_))
        fail(Errc::FieldMismatch, "operands belong to different number fields");
      return {a, b};
    }
    if (a.c_.size() == 1) return {a.in(b.field_), b};
    return {a, b.in(a.field_)};
  }

  Field field_;
  std::vector<Rational> c_;
};

inline FieldElement Field::zero() const { return FieldElement(*this, std::vector<Rational>(static_cast<std::size_t>(degree()))); }

inline FieldElement Field::one() const { return from_rational(1); }

inline FieldElement Field::from_rational(const Rational& q) const {
  std::vector<Rational> c(static_cast<std::size_t>(degree()));
  c[0] = q;
  return FieldElement(*this, std::move(c));
}

inline FieldElement Field::generator() const {
  if (is_rational()) return from_rational(rational_root());
  std::vector<Rational> c(static_cast<std::size_t>(degree()));
  c[1] = 1;
  return FieldElement(*this, std::move(c));
}

inline FieldElement Field::element(std::vector<Rational> coords) const {
  if (coords.empty()) return zero();
  if (coords.size() == static_cast<std::size_t>(degree())) return FieldElement(*this, std::move(coords));
  return FieldElement(*this, reduce(Poly(std::move(coords))));
}

/// Q(β), β = (1+√5)/2.
inline Field golden_field() {
  static const Field f = Field::make(MinimalPolynomial({-1, -1, 1}), {Rational(3, 2), Rational(5, 3)}, "β");
  return f;
}

}  // namespace stein
