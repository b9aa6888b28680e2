// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "spincouple/errors.hpp"

namespace spincouple {

/// Angular momentum value that may be integer or half-odd-integer.
/// Stored as twice the value so that all arithmetic stays exact.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int n) : twice_(2 * n) {}

  /// Builds the value t/2 from its doubled representation.
  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  /// Integer value; valid only when is_integer().
  constexpr int to_int() const { return twice_ / 2; }
  constexpr double to_double() const { return twice_ / 2.0; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return from_twice(a.twice_ - b.twice_);
  }
  /// Scaling by an integer; products of two half-integers are not closed.
  friend constexpr HalfInt operator*(int k, HalfInt a) {
    return from_twice(k * a.twice_);
  }

  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  /// Renders as "2", "-3/2", ...
  std::string str() const {
    if (is_integer()) return std::to_string(to_int());
    return std::to_string(twice_) + "/2";
  }

  /// Accepts "3", "-2", "p/2", "p/1", or a decimal ending in .0 or .5.
  static std::optional<HalfInt> parse(std::string_view s);

private:
  int twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

constexpr HalfInt abs(HalfInt a) {
  return a.twice() < 0 ? HalfInt::from_twice(-a.twice()) : a;
}

/// (-1)^a for integer a; half-odd exponents are a caller error.
inline int parity(HalfInt a) {
  if (!a.is_integer())
    throw InvalidQuantumNumbersError("parity exponent must be an integer, got " + a.str());
  return a.to_int() % 2 == 0 ? 1 : -1;
}

/// (-1)^(2a), well defined for every half-integer a.
constexpr int parity_twice(HalfInt a) { return a.twice() % 2 == 0 ? 1 : -1; }

/// 2j+1, the multiplet dimension.
constexpr int dim_of(HalfInt j) { return j.twice() + 1; }

inline std::optional<HalfInt> HalfInt::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto parse_int = [](std::string_view t) -> std::optional<int> {
    if (t.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
      neg = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) return std::nullopt;
    long v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return std::nullopt;
      v = v * 10 + (t[i] - '0');
      if (v > 1000000) return std::nullopt;
    }
    return neg ? int(-v) : int(v);
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (!num || !den) return std::nullopt;
    if (*den == 1) return HalfInt(*num);
    if (*den == 2) return HalfInt::from_twice(*num);
    return std::nullopt;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = parse_int(s.substr(0, dot));
    auto frac = s.substr(dot + 1);
    if (!whole || frac.empty()) return std::nullopt;
    bool neg = s[0] == '-';
    if (frac == "0") return HalfInt(*whole);
    if (frac == "5") {
      int t = 2 * *whole + (neg ? -1 : 1);
      return HalfInt::from_twice(t);
    }
    return std::nullopt;
  }
  auto n = parse_int(s);
  if (!n) return std::nullopt;
  return HalfInt(*n);
}

}  // namespace spincouple
