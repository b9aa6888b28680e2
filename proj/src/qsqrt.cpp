// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#include "spincouple/qsqrt.hpp"

#include <cstdint>
#include <mutex>
#include <random>
#include <vector>

namespace spincouple {

namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      ps.push_back(p);
      for (std::uint64_t q = std::uint64_t(p) * p; q <= limit; q += p) composite[q] = true;
    }
    return ps;
  }();
  return primes;
}

Int mulmod(const Int& a, const Int& b, const Int& m) { return (a * b) % m; }

Int powmod(Int base, Int exp, const Int& m) {
  Int r = 1;
  base %= m;
  while (exp > 0) {
    if ((exp & 1) != 0) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool miller_rabin(const Int& n, const Int& a) {
  if (n % a == 0) return n == a;
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  Int x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == a) return true;
    if (!miller_rabin(n, a)) return false;
  }
  // Deterministic for n < 3.3e24; larger inputs get a strong probable answer.
  return true;
}

Int pollard_rho(const Int& n) {
  if ((n & 1) == 0) return 2;
  static thread_local std::mt19937_64 rng(0x5eed5eedULL);
  while (true) {
    Int x = Int(rng()) % n;
    Int y = x;
    Int c = Int(rng()) % n + 1;
    Int d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      Int diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(Int n, std::map<Int, int>& exps) {
  for (std::uint32_t p : small_primes()) {
    if (Int(p) * p > n) break;
    while (n % p == 0) {
      ++exps[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++exps[n];
    return;
  }
  const Int d = pollard_rho(n);
  factor_into(d, exps);
  factor_into(n / d, exps);
}

}  // namespace

QSqrt QSqrt::sqrt_of_rational(const Rational& r) {
  if (r < 0) throw std::domain_error("square root of negative rational");
  if (r == 0) return QSqrt();
  const Int num = numerator(r);
  const Int den = denominator(r);
  // sqrt(p/q) = sqrt(p q)/q; factor p and q separately, add exponents.
  std::map<Int, int> exps;
  factor_into(num, exps);
  factor_into(den, exps);
  Int square_part = 1;
  Int d = 1;
  for (const auto& [p, e] : exps) {
    for (int k = 0; k < e / 2; ++k) square_part *= p;
    if (e % 2 != 0) d *= p;
  }
  return from_parts(Rational(square_part, den), d);
}

QSqrt divide_by_radical(const QSqrt& a, const QSqrt& b) {
  if (b.is_zero()) throw std::domain_error("division of radical sum by zero");
  if (b.terms().size() != 1)
    throw UnsupportedDivisorError(
        "division only supports single-term divisors c*sqrt(d), divisor has " +
        std::to_string(b.terms().size()) + " terms");
  const auto& [d, c] = *b.terms().begin();
  // 1/(c sqrt(d)) = sqrt(d)/(c d).
  QSqrt inv = QSqrt::from_parts(Rational(1) / (c * Rational(d)), d);
  return a * inv;
}

std::string QSqrt::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += rational_str(c);
    if (d != 1) s += "*sqrt(" + d.str() + ")";
  }
  return s;
}

}  // namespace spincouple
