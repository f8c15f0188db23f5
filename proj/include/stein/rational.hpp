#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stein/error.hpp"

namespace stein {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;
using Prime = std::int64_t;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }

inline int sign(const Integer& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }
inline int sign(const Rational& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

/// Floor division for signed integers (b != 0).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer pow_int(Integer base, unsigned e) {
  Integer r = 1;
  while (e) {
    if (e & 1U) r *= base;
    base *= base;
    e >>= 1U;
  }
  return r;
}

inline Rational pow_rational(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) fail(Errc::DivisionByZero, "zero to a negative power");
    return pow_rational(Rational(1) / base, -e);
  }
  Rational r = 1, b = base;
  auto u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1UL) r *= b;
    b *= b;
    u >>= 1UL;
  }
  return r;
}

/// Inverse of a modulo m (gcd(a, m) == 1, m > 1).
inline Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) fail(Errc::DivisionByZero, "no modular inverse");
  return mod_floor(old_s, m);
}

/// Distinct prime factors by trial division. Inputs here are small (slopes, denominators).
inline std::vector<Prime> prime_factors(Integer n) {
  std::vector<Prime> out;
  n = abs(n);
  if (n < 2) return out;
  for (Prime p = 2; Integer(p) * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    if (n > Integer(std::numeric_limits<Prime>::max()))
      fail(Errc::InvalidArgument, "prime factor too large");
    out.push_back(static_cast<Prime>(n));
  }
  return out;
}

/// Exponent of p in n (n != 0); divides it out of n.
inline long take_valuation(Integer& n, Prime p) {
  long v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// n with every factor from `primes` removed.
inline Integer strip_primes(Integer n, const std::vector<Prime>& primes) {
  for (Prime p : primes) take_valuation(n, p);
  return n;
}

/// True iff q lies in Z[1/m] where m is the product of `primes`.
inline bool in_localization(const Rational& q, const std::vector<Prime>& primes) {
  return strip_primes(denominator(q), primes) == 1;
}

inline std::vector<Prime> merge_primes(std::vector<Prime> a, const std::vector<Prime>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// "p" or "p/q".
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Integer parse_integer(std::string_view s) {
  std::string t(s);
  auto bad = [&] { fail(Errc::ParseError, "not an integer: '" + t + "'"); };
  if (t.empty()) bad();
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) bad();
  for (std::size_t k = i; k < t.size(); ++k)
    if (t[k] < '0' || t[k] > '9') bad();
  Integer v(t.substr(i));
  return t[0] == '-' ? Integer(-v) : v;
}

/// Accepts "p", "p/q" (q != 0) with optional sign and surrounding blanks.
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) fail(Errc::ParseError, "zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  auto [mn, mx] = std::minmax_element(std::begin(c), std::end(c));
  return {*mn, *mx};
}

inline Interval scale(const Interval& a, const Rational& c) {
  return c >= 0 ? Interval{a.lo * c, a.hi * c} : Interval{a.hi * c, a.lo * c};
}

}  // namespace stein
