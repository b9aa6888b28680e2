// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/redmat.hpp"

#include <algorithm>
#include <cstdlib>

#include "spincouple/errors.hpp"
#include "spincouple/rational.hpp"
#include "spincouple/wigner.hpp"

namespace spincouple {
namespace {

/// Gamma(a)/Gamma(b) for positive half-integer arguments whose difference
/// is an integer.  Each individual value may be irrational, but the ratio
/// telescopes to a rational product.
Rational gamma_ratio(HalfInt a, HalfInt b) {
  if (a.twice() <= 0 || b.twice() <= 0)
    throw InvalidQuantumNumbersError("gamma ratio needs positive arguments, got " +
                                     a.str() + " and " + b.str());
  Rational r = 1;
  while (b < a) {
    r *= Rational(b.twice(), 2);
    b += HalfInt(1);
  }
  while (a < b) {
    b -= HalfInt(1);
    r /= Rational(b.twice(), 2);
  }
  return r;
}

/// <j||eps(n) . J^n||j> for twice-label tj; zero when the n-step ladder
/// chain does not fit inside the multiplet.
QSqrt momentum_power(int tj, int n) {
  if (tj < n) return {};
  Rational rad(factorial(n) * factorial(n), factorial(2 * n) * (Int(1) << n));
  rad /= tj + 1;
  rad *= Rational(factorial(tj + n + 1), factorial(tj - n));
  return QSqrt::sqrt_of_rational(rad);
}

/// <l'||eps(n) . rhat^n||l> for twice-label tl and l' = l + sign*n, via
/// the closed form with the maximal rank change.
QSqrt versor_power(int tl, int n, int sign) {
  const int tm = tl + sign * n;
  Rational rad(tl + 1, tm + n + 1);
  rad /= Int(1) << n;
  rad *= gamma_ratio(HalfInt::from_twice(tm - n + 1), HalfInt::from_twice(tm + n + 1));
  rad *= gamma_ratio(HalfInt::from_twice(tm + n + 2), HalfInt::from_twice(tm - n + 2));
  QSqrt v = QSqrt::sqrt_of_rational(rad);
  if (sign < 0 && n % 2 != 0) v = -v;
  return v;
}

/// <l+dl||eps(n) . rhat^|dl| L^(n-|dl|)||l> for twice-label tl.  The
/// trailing Gamma ratio and the dimension denominator sit outside the
/// radical, which keeps the value a single scaled square root.
QSqrt mixed_power(int tl, int n, int dl) {
  const int a = std::abs(dl);
  const int tm = tl + dl;
  if (tm - n < 0) return {};
  Rational pre(1, tm + a + 1);
  pre *= gamma_ratio(HalfInt::from_twice(tm - a + 1), HalfInt::from_twice(tm + a + 1));
  Rational rad(factorial(n + a) * factorial(n - a), factorial(2 * n));
  rad *= tl + 1;
  rad *= Rational(factorial(tm + n + 1), factorial(tm - n));
  rad /= Int(1) << (n + 2 * a);
  QSqrt v = QSqrt::sqrt_of_rational(rad) * pre;
  if (dl < 0 && a % 2 != 0) v = -v;
  return v;
}

/// <l'||eps(n) . rhat^n||l> for any allowed rank change, through the
/// aligned Clebsch-Gordan coefficient.
QSqrt versor_word_general(int l, int n, int lp) {
  Rational rad(factorial(n), double_factorial(2 * n - 1));
  rad *= Rational(2 * l + 1, 2 * lp + 1);
  return QSqrt::sqrt_of_rational(rad) * cg(l, 0, n, 0, lp, 0);
}

int count_ops(const std::vector<WordOp>& word, WordOp op) {
  return static_cast<int>(std::count(word.begin(), word.end(), op));
}

}  // namespace

QSqrt redmat_J_power(HalfInt j, int n) {
  if (n < 1) throw InvalidQuantumNumbersError("operator power must be positive");
  if (j.twice() < 0)
    throw InvalidQuantumNumbersError("angular momentum must be nonnegative, got " + j.str());
  return momentum_power(j.twice(), n);
}

QSqrt redmat_Y(int lp, int L, int l) {
  if (lp < 0 || L < 0 || l < 0)
    throw InvalidQuantumNumbersError("spherical harmonic labels must be nonnegative");
  const QSqrt aligned = cg(l, 0, L, 0, lp, 0);
  if (aligned.is_zero()) return {};
  Rational rad(Int(2 * l + 1) * (2 * L + 1), 2 * lp + 1);
  return QSqrt::sqrt_of_rational(rad) * aligned;
}

QSqrt redmat_r_power(int l, int n, int sign) {
  if (n < 1) throw InvalidQuantumNumbersError("operator power must be positive");
  if (sign != 1 && sign != -1)
    throw InvalidQuantumNumbersError("rank change direction must be +1 or -1");
  if (l < 0 || l + sign * n < 0)
    throw InvalidQuantumNumbersError("orbital labels must be nonnegative");
  return versor_power(2 * l, n, sign);
}

QSqrt redmat_r_L_mixed(int l, int n, int dl) {
  if (n < 1) throw InvalidQuantumNumbersError("operator power must be positive");
  if (std::abs(dl) > n)
    throw InvalidQuantumNumbersError("rank change cannot exceed the word length");
  if (l < 0 || l + dl < 0)
    throw InvalidQuantumNumbersError("orbital labels must be nonnegative");
  return mixed_power(2 * l, n, dl);
}

CQSqrt redmat_cross(CrossKind kind, int l, int dl) {
  if (l < 0) throw InvalidQuantumNumbersError("orbital labels must be nonnegative");
  if (dl == 0 || std::abs(dl) > 2)
    throw InvalidQuantumNumbersError("rank change must be one of -2, -1, 1, 2");
  if (l + dl < 0) return {};
  QSqrt im;
  switch (kind) {
    case CrossKind::cross: {
      if (std::abs(dl) != 1) return {};
      const int k = 2 * l + 1 - dl;
      im = QSqrt::sqrt_of_rational(Rational(2 * l + dl + 1, 8 * (2 * (l + dl) + 1)));
      im *= Rational(-k);
      break;
    }
    case CrossKind::cross_l: {
      if (std::abs(dl) != 1) return {};
      const int k = 2 * l + 1 - dl;
      const int s = 2 * l + dl;
      Rational rad(Int(s - 1) * (s + 1) * (s + 3), 64 * (2 * (l + dl) + 1));
      im = QSqrt::sqrt_of_rational(rad) * Rational(-k);
      break;
    }
    case CrossKind::r_cross: {
      if (std::abs(dl) != 2) return {};
      const int l1 = l + dl / 2;
      const int l2 = l + dl;
      const int k = (dl / 2) * (2 * l1 + 1) - 3;
      Rational rad(Int(l1) * (l1 + 1), Int(4) * (2 * l1 + 1) * (2 * l2 + 1));
      im = QSqrt::sqrt_of_rational(rad) * Rational(-k);
      break;
    }
  }
  return CQSqrt(QSqrt{}, im);
}

QSqrt redmat_spin_analog(const RedMatKey& key) {
  const int n = static_cast<int>(key.word.size());
  if (n < 1) throw InvalidQuantumNumbersError("operator word must not be empty");
  if (key.bra.twice() < 0 || key.ket.twice() < 0)
    throw InvalidQuantumNumbersError("angular momentum labels must be nonnegative");

  const int orbital = count_ops(key.word, WordOp::Rhat) + count_ops(key.word, WordOp::L);
  const int spin = count_ops(key.word, WordOp::T) + count_ops(key.word, WordOp::S);
  if (orbital > 0 && spin > 0)
    throw InvalidQuantumNumbersError("operator word mixes orbital and spin factors");

  const bool is_spin = spin > 0;
  const WordOp pos = is_spin ? WordOp::T : WordOp::Rhat;
  const int a = count_ops(key.word, pos);
  for (int i = 1; i < n; ++i)
    if (key.word[i] == pos && key.word[i - 1] != pos)
      throw UnsupportedCaseError(
          "operator word must list position-type factors before momentum-type ones");

  if (!is_spin) {
    if (!key.bra.is_integer() || !key.ket.is_integer())
      throw InvalidQuantumNumbersError("orbital labels must be integers");
    const int l = key.ket.to_int();
    const int lp = key.bra.to_int();
    const int dl = lp - l;
    if (a == 0) return dl == 0 ? momentum_power(2 * l, n) : QSqrt{};
    if (a == n) return versor_word_general(l, n, lp);
    if (std::abs(dl) == a) return mixed_power(2 * l, n, dl);
    throw UnsupportedCaseError(
        "no closed form when the rank change differs from the position factor count");
  }

  const int tdiff = key.bra.twice() - key.ket.twice();
  if (tdiff % 2 != 0) return {};
  const int ds = tdiff / 2;
  if (std::abs(ds) > a || (a - std::abs(ds)) % 2 != 0) return {};
  const int ts = key.ket.twice();
  if (a == 0) return momentum_power(ts, n);
  if (std::abs(ds) == a) {
    if (a == n) return versor_power(ts, n, ds > 0 ? 1 : -1);
    return mixed_power(ts, n, ds);
  }
  throw UnsupportedCaseError(
      "no closed form for a spin transition word below maximal rank change");
}

}  // namespace spincouple
