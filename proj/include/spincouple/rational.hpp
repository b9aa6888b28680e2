// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spincouple/halfint.hpp"

namespace spincouple {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! with a growing thread-safe cache. References stay valid for the
/// lifetime of the program.
inline const Int& factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  static std::deque<Int> cache{Int(1), Int(1)};
  static std::mutex mu;
  std::scoped_lock lock(mu);
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<int>(cache.size()));
  return cache[static_cast<std::size_t>(n)];
}

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
inline Int double_factorial(int n) {
  if (n < -1) throw std::invalid_argument("double factorial of integer below -1");
  Int r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

inline Rational rational_pow(const Rational& base, int e) {
  if (e == 0) return 1;
  Rational b = e > 0 ? base : Rational(1) / base;
  Rational r = 1;
  for (int k = std::abs(e); k > 0; --k) r *= b;
  return r;
}

/// j(j+1), exact for half-integer j.
inline Rational casimir(HalfInt j) {
  const int t = j.twice();
  return Rational(t * (t + 2), 4);
}

/// Correctly rounded to about 90 bits before the final double rounding, so
/// the relative error stays below 2^-50 across the supported magnitude range.
inline double to_double(const Rational& r) {
  using boost::multiprecision::msb;
  Int num = numerator(r);
  Int den = denominator(r);
  if (num == 0) return 0.0;
  bool neg = num < 0;
  if (neg) num = -num;
  const long shift = 96 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
  Int n2 = num;
  Int d2 = den;
  if (shift >= 0)
    n2 <<= shift;
  else
    d2 <<= -shift;
  const Int q = n2 / d2;
  double d = q.convert_to<double>();
  d = std::ldexp(d, static_cast<int>(-shift));
  return neg ? -d : d;
}

inline double to_double(const Int& n) { return to_double(Rational(n)); }

/// Renders "p" or "p/q" with q > 1.
inline std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline std::optional<Rational> rational_parse(std::string_view s) {
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  try {
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      auto ns = s.substr(0, slash);
      auto ds = s.substr(slash + 1);
      if (!valid_int(ns) || !valid_int(ds)) return std::nullopt;
      const Int num{std::string(ns)};
      const Int den{std::string(ds)};
      if (den == 0) return std::nullopt;
      return Rational(num, den);
    }
    if (!valid_int(s)) return std::nullopt;
    return Rational(Int(std::string(s)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace spincouple
