// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <map>
#include <string>

#include "spincouple/errors.hpp"
#include "spincouple/rational.hpp"

namespace spincouple {

/// An element of the ring of finite sums  sum_d c_d sqrt(d)  with rational
/// coefficients c_d and square-free positive integer radicands d.  The
/// representation is canonical: radicands are square-free, coefficients are
/// nonzero and gcd-reduced, and the zero element is the empty sum, so
/// operator== is exact value equality.  Instances are immutable in practice
/// (all operations return new values) and safe to share across threads.
class QSqrt {
public:
  QSqrt() = default;
  QSqrt(const Rational& r) {
    if (r != 0) terms_.emplace(Int(1), r);
  }
  QSqrt(long long n) : QSqrt(Rational(n)) {}
  QSqrt(int n) : QSqrt(Rational(n)) {}

  /// The positive square root of a nonnegative rational.
  /// Throws std::domain_error for negative input.
  static QSqrt sqrt_of_rational(const Rational& r);

  /// Builds c*sqrt(d) from parts already known to be canonical: d must be a
  /// square-free positive integer.  Intended for kernels that construct the
  /// radicand from prime exponents; general callers use sqrt_of_rational.
  static QSqrt from_parts(const Rational& c, const Int& d) {
    QSqrt q;
    if (c != 0) q.terms_.emplace(d, c);
    return q;
  }

  const std::map<Int, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True when the value lies in Q (zero or a single sqrt(1) term).
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
  }

  /// The value as a rational; valid only when is_rational().
  Rational rational_value() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->second;
  }

  QSqrt operator-() const {
    QSqrt r = *this;
    for (auto& [d, c] : r.terms_) c = -c;
    return r;
  }

  QSqrt& operator+=(const QSqrt& o) {
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
  }
  QSqrt& operator-=(const QSqrt& o) {
    for (const auto& [d, c] : o.terms_) add_term(d, -c);
    return *this;
  }
  QSqrt& operator*=(const QSqrt& o) {
    *this = *this * o;
    return *this;
  }
  QSqrt& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [d, c] : terms_) c *= k;
    return *this;
  }

  friend QSqrt operator+(QSqrt a, const QSqrt& b) { return a += b; }
  friend QSqrt operator-(QSqrt a, const QSqrt& b) { return a -= b; }
  friend QSqrt operator*(const QSqrt& a, const QSqrt& b) {
    QSqrt r;
    for (const auto& [d1, c1] : a.terms_)
      for (const auto& [d2, c2] : b.terms_) {
        const Int g = gcd(d1, d2);
        r.add_term((d1 / g) * (d2 / g), c1 * c2 * g);
      }
    return r;
  }
  friend QSqrt operator*(QSqrt a, const Rational& k) { return a *= k; }
  friend QSqrt operator*(const Rational& k, QSqrt a) { return a *= k; }
  friend QSqrt operator/(QSqrt a, const Rational& k) {
    if (k == 0) throw std::domain_error("division of radical sum by zero");
    return a *= Rational(1) / k;
  }

  friend bool operator==(const QSqrt&, const QSqrt&) = default;

  /// Floating point value of the sum.
  double to_float() const {
    double s = 0.0;
    for (const auto& [d, c] : terms_) s += to_double(c) * std::sqrt(to_double(d));
    return s;
  }

  std::string str() const;

private:
  void add_term(const Int& d, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Int, Rational> terms_;
};

/// Exact quotient a/b for a single-term divisor b = c*sqrt(d).  Quotients by
/// multi-term divisors generally leave the ring and raise
/// UnsupportedDivisorError; a zero divisor raises std::domain_error.
QSqrt divide_by_radical(const QSqrt& a, const QSqrt& b);

/// Complex combination re + i*im of two radical sums.
struct CQSqrt {
  QSqrt re;
  QSqrt im;

  CQSqrt() = default;
  CQSqrt(QSqrt r) : re(std::move(r)) {}
  CQSqrt(QSqrt r, QSqrt i) : re(std::move(r)), im(std::move(i)) {}
  CQSqrt(const Rational& r) : re(r) {}
  CQSqrt(int n) : re(QSqrt(n)) {}

  static CQSqrt unit_im() { return CQSqrt(QSqrt(), QSqrt(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  CQSqrt conj() const { return {re, -im}; }

  CQSqrt operator-() const { return {-re, -im}; }
  CQSqrt& operator+=(const CQSqrt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CQSqrt& operator-=(const CQSqrt& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CQSqrt& operator*=(const CQSqrt& o) {
    *this = *this * o;
    return *this;
  }

  friend CQSqrt operator+(CQSqrt a, const CQSqrt& b) { return a += b; }
  friend CQSqrt operator-(CQSqrt a, const CQSqrt& b) { return a -= b; }
  friend CQSqrt operator*(const CQSqrt& a, const CQSqrt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CQSqrt operator*(const QSqrt& a, const CQSqrt& b) { return CQSqrt(a) * b; }
  friend CQSqrt operator*(const CQSqrt& a, const QSqrt& b) { return a * CQSqrt(b); }
  friend CQSqrt operator*(const Rational& k, const CQSqrt& a) { return {a.re * k, a.im * k}; }

  friend bool operator==(const CQSqrt&, const CQSqrt&) = default;

  std::complex<double> to_cfloat() const { return {re.to_float(), im.to_float()}; }
  std::string str() const { return "(" + re.str() + ") + i (" + im.str() + ")"; }
};

}  // namespace spincouple
