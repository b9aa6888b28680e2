// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/cgfactor.hpp"

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "spincouple/errors.hpp"
#include "spincouple/redmat.hpp"
#include "spincouple/spinops.hpp"
#include "spincouple/wigner.hpp"

namespace spincouple {

namespace {

QSqrt rat(const Rational& r) { return QSqrt(r); }
QSqrt root(const Rational& r) { return QSqrt::sqrt_of_rational(r); }

/// Product of small integer factors, accumulated exactly so that label
/// polynomials never pass through machine-integer arithmetic.
Rational rprod(std::initializer_list<long long> fs) {
  Rational p(1);
  for (long long f : fs) p *= Rational(f);
  return p;
}

bool supported_pair(int tp, int tk) {
  return (tp == 1 && tk == 1) || (tp == 2 && tk == 2) || (tp == 3 && tk == 3) ||
         (tp == 2 && tk == 0) || (tp == 0 && tk == 2) || (tp == 3 && tk == 1) ||
         (tp == 1 && tk == 3);
}

void validate_case(const CouplingCase& c) {
  if (c.l_to < 0 || c.l_from < 0 || c.j.twice() < 0 || c.s_to.twice() < 0 ||
      c.s_from.twice() < 0)
    throw InvalidQuantumNumbersError("coupling case needs non-negative angular momenta");
  if (!valid_jm(HalfInt(c.l_to), c.lpz) || !valid_jm(HalfInt(c.l_from), c.lz) ||
      !valid_jm(c.s_to, c.spz) || !valid_jm(c.s_from, c.sz))
    throw InvalidQuantumNumbersError("coupling case projections out of range");
}

/// Word of the rank-delta transfer on the spin side: one transition factor
/// per unit of spin change, then spin factors up to the rank.
std::vector<WordOp> transfer_spin_word(int delta, int ads) {
  std::vector<WordOp> word(static_cast<std::size_t>(ads), WordOp::T);
  word.insert(word.end(), static_cast<std::size_t>(delta - ads), WordOp::S);
  return word;
}

QSqrt c_half_half(int d, int l, int dl, int j2) {
  if (dl != 0) return rat(Rational(-2));
  if (d == 0) return rat(Rational(j2 + 1) / rprod({2, 2 * l + 1}));
  return rat(Rational(2 * (j2 - 2 * l), 2 * l + 1));
}

QSqrt c_one_one(int d, int l, int lp, int j2) {
  const int dl = lp - l;
  const int tm = l + lp;
  if (d == 0) return rat(Rational(j2 + 1) / rprod({3, 2 * l + 1}));
  if (dl == 0) {
    const Rational x(j2 - 2 * l, 2);
    const Rational jl(j2 + 2 * l, 2);
    const int e = (j2 - 2 * l) / 2 - 1;
    const Rational dd =
        Rational(e % 2 == 0 ? 1 : -1) * (x * x + 1) * (jl + 2) * (jl + 1) * jl;
    if (d == 1) return rat(Rational(2) * Rational(j2 + 1) * (x * (jl + 1) + 1) / dd);
    return rat(Rational(4) * Rational(j2 + 1) / dd);
  }
  if (std::abs(dl) == 1) {
    if (d == 1)
      return rat(Rational(-1, tm + 1)) * root(rprod({j2 + 1, 2 * j2 - tm + 1}) / 2);
    return rat(Rational(-2 * (j2 - tm), tm + 1)) *
           root(Rational(2 * (j2 + 1), 2 * j2 - tm + 1));
  }
  return rat(Rational(j2 + 1)) * root(Rational(4) / rprod({j2, j2 + 2}));
}

QSqrt c_threehalf(int d, int l, int lp, int j2) {
  const int adl = std::abs(lp - l);
  const int tm = l + lp;
  if (d == 0) return rat(Rational(j2 + 1) / rprod({4, 2 * l + 1}));
  if (adl == 0) {
    const Rational x(j2 - 2 * l, 2);
    const Rational cubic = (x - Rational(3, 2)) * (x + Rational(1, 2)) * (x + 1);
    const Rational dt = Rational(l + 1) + Rational(2, 3) * cubic;
    const Rational dfull = dt * (Rational(j2, 2) - Rational(2, 3) * cubic);
    if (d == 1)
      return rat(Rational(2, 5) * x / Rational(2 * l + 1) *
                 (Rational(j2 + 1, 2) +
                  Rational(4) * (x - Rational(3, 2)) * x * (x + Rational(3, 2))) /
                 dt);
    if (d == 2)
      return rat(Rational(-1, 2) / Rational(2 * l + 1) * (Rational(5, 4) - x * x) *
                 (Rational(j2 + 1, 2) - Rational(2) * x * x * x + Rational(9, 2) * x) /
                 dfull);
    const int e = (j2 - 2 * l - 1) / 2;
    const Rational sg(e % 2 == 0 ? 1 : -1);
    const Rational ax = x < Rational(0) ? -x : x;
    return rat(Rational(-1, 2) * sg / (ax * Rational(2 * l + 1)) / dfull);
  }
  if (adl == 1) {
    const Rational y(j2 - tm, 2);
    const Rational jm1(j2 + tm + 2, 2);
    const Rational a2 = jm1 * jm1 - 4;
    const Rational b2 = Rational(4) - y * y;
    const Rational mean2 = rprod({tm, tm + 2}) / 4;
    if (d == 1)
      return rat(Rational(-(j2 + 1)) / rprod({10, tm + 1})) * root(a2 * b2 / mean2);
    if (d == 2)
      return rat(Rational(-2) * Rational(3 * tm - j2 + 2, 2) *
                 (y * Rational(j2 + 1, 2) + Rational(1, 2)) *
                 (Rational(5) * y * y - 4) / Rational(tm + 1)) *
             root(Rational(1) / (mean2 * a2 * b2));
    return rat(Rational(-4) * Rational(3 * j2 - tm + 2, 2) *
               (Rational(3, 2) * y * y - 1) /
               (Rational(tm + 1) * rprod({j2, j2 + 2}) / 4)) *
           root(mean2 / (a2 * b2));
  }
  if (adl == 2) {
    if (d == 2)
      return rat(Rational(3 * j2 - 2 * tm + 1)) *
             root(Rational(1) / rprod({3, j2 - 1, j2 + 3}));
    return rat(Rational(4 * (j2 - tm))) *
           root(Rational(1) / rprod({3, j2 - 1, j2 + 3}));
  }
  return rat(Rational(-8, 3)) *
         root(rprod({j2, j2 + 2}) / rprod({4, j2 - 1, j2 + 3}));
}

QSqrt c_one_zero(bool bra_is_one, int l, int lp) {
  const int dl = lp - l;
  if (dl == 0) return root(Rational(3) / rprod({l, l + 1}));
  const int tm = l + lp;
  if (bra_is_one) return rat(Rational(-dl)) * root(Rational(6 * (2 * l + 1), tm + 1));
  return rat(Rational(dl)) * root(Rational(6 * (2 * lp + 1), tm + 1));
}

QSqrt c_threehalf_half(int ds, int d, int l, int lp, int j2) {
  const int dl = lp - l;
  const int adl = std::abs(dl);
  const int tm = l + lp;
  if (adl == 0) {
    if (d == 1)
      return rat(Rational(2, 2 * l + 1)) *
             root(Rational(2 * j2 - 2 * l + 1, 4 * l - j2 + 1));
    return rat(Rational(8 * (j2 - 2 * l), 2 * l + 1)) *
           root(Rational(1) / rprod({2 * j2 - 2 * l + 1, 4 * l - j2 + 1}));
  }
  if (adl == 1) {
    const int u = ds * dl;
    const int ydt = j2 - tm;
    if (d == 1)
      return rat(Rational(-u)) *
             root(Rational(2 * (j2 + 1), tm + 1) *
                  Rational(2 * j2 - tm + 2 * u + 1, 2 * (tm - u + 1)) *
                  Rational(1 - u * ydt));
    return rat(Rational(-8 * (1 + u * ydt))) *
           root(Rational(3 + u * ydt) / rprod({3, tm - u + 1, j2 + 1 + 2 * u}));
  }
  return rat(Rational(ds * dl)) *
         root(rprod({16, j2 + 1, tm + 1}) / rprod({3, tm, tm + 2}));
}

void validate_table_key(const CoeffTableKey& key) {
  const int tp = key.s_to.twice();
  const int tk = key.s_from.twice();
  if (key.l_to < 0 || key.l_from < 0 || key.j.twice() < 0 || tp < 0 || tk < 0)
    throw InvalidQuantumNumbersError("coefficient key outside the physical domain");
  if (!supported_pair(tp, tk))
    throw UnsupportedCaseError("no tabulated coefficients for spin pair (" +
                               key.s_to.str() + ", " + key.s_from.str() + ")");
  if (!triangle(HalfInt(key.l_to), key.s_to, key.j) ||
      !triangle(HalfInt(key.l_from), key.s_from, key.j))
    throw UnsupportedCaseError("the total angular momentum does not couple both sides");
  const int adl = std::abs(key.l_to - key.l_from);
  const int ads = std::abs(tp - tk) / 2;
  if (key.delta < std::max(adl, ads) ||
      key.delta > std::min(key.l_to + key.l_from, (tp + tk) / 2))
    throw UnsupportedCaseError("transfer rank outside the tabulated range");
}

/// Ratio between the short-form weight and the coefficient for the keys
/// where the two tables list them as proportional.
QSqrt kappa_prefactor(const CoeffTableKey& key) {
  const int tp = key.s_to.twice();
  const int tk = key.s_from.twice();
  const int d = key.delta;
  const int l = key.l_from;
  const int lp = key.l_to;
  const int dl = lp - l;
  const int adl = std::abs(dl);
  const int tm = l + lp;
  if (d == 0) return rat(Rational(1));
  if (tp == 1 && tk == 1) return root(rprod({3, l, l + 1}) / 4);
  if (tp == 2 && tk == 2) {
    if (adl == 0) {
      if (d == 1) return root(rprod({2, l, l + 1}));
      return root(rprod({10, l, l + 1, 2 * l - 1, 2 * l + 3}) / 36);
    }
    if (adl == 1) {
      if (d == 1) return rat(Rational(dl)) * root(Rational(tm + 1, 2 * lp + 1));
      return rat(Rational(dl)) *
             root(rprod({5, tm + 1, tm - 1, tm + 3}) / rprod({48, 2 * lp + 1}));
    }
    const int j2 = key.j.twice();
    return root(rprod({5, j2, j2 + 2}) / rprod({12, j2 + 1, 2 * lp + 1}));
  }
  if (tp == 3 && tk == 3) {
    if (adl == 0) {
      if (d == 1) return root(rprod({15, l, l + 1}) / 4);
      if (d == 2) return root(rprod({5, l, l + 1, 2 * l - 1, 2 * l + 3}) / 4);
      return rat(Rational(3, 2)) *
             root(rprod({7, l - 1, l, l + 1, l + 2, 2 * l - 1, 2 * l + 3}) / 20);
    }
    if (adl == 1) {
      if (d == 1)
        return rat(Rational(dl)) * root(rprod({15, tm + 1}) / rprod({8, 2 * lp + 1}));
      if (d == 2)
        return rat(Rational(dl)) *
               root(rprod({15, tm - 1, tm + 1, tm + 3}) / rprod({32, 2 * lp + 1}));
      return rat(Rational(dl)) *
             root(rprod({21, tm - 2, tm - 1, tm + 1, tm + 3, tm + 4}) /
                  rprod({320, 2 * lp + 1}));
    }
    if (adl == 2) {
      if (d == 2)
        return root(rprod({15, 2 * l + 1, tm, tm + 2}) /
                    rprod({8, tm - 1, tm + 1, tm + 3}));
      return root(rprod({21, 2 * l + 1, tm - 2, tm, tm + 2, tm + 4}) /
                  rprod({128, tm - 1, tm + 1, tm + 3}));
    }
    return rat(Rational(dl)) *
           root(rprod({7, 2 * l + 1, tm - 1, tm + 1, tm + 3}) /
                rprod({64, tm + 4, tm - 2, tm, tm + 2}));
  }
  const int sign = (tp == 3) ? -1 : 1;
  const int half = (tp == 3) ? 1 : 2;
  if (adl == 0) {
    if (d == 1)
      return rat(Rational(sign)) * root(rprod({3, l, l + 1}) / (4 * half));
    return rat(Rational(sign)) *
           root(rprod({5, l, l + 1, 2 * l - 1, 2 * l + 3}) / (64 * half));
  }
  if (adl == 1) {
    if (d == 1)
      return rat(Rational(sign * dl)) *
             root(rprod({3, tm + 1}) / rprod({8 * half, 2 * lp + 1}));
    return rat(Rational(sign * dl)) *
           root(rprod({15 * (3 - half), tm + 1, tm - 1, tm + 3}) /
                rprod({1024, 2 * lp + 1}));
  }
  return rat(Rational(sign)) *
         root(rprod({15 * (3 - half), 2 * l + 1, tm, tm + 2}) /
              rprod({256, tm - 1, tm + 1, tm + 3}));
}

}  // namespace

QSqrt s_direct(const CouplingCase& c) {
  validate_case(c);
  const HalfInt jz = c.lz + c.sz;
  if (c.lpz + c.spz != jz) return {};
  return cg(HalfInt(c.l_to), c.lpz, c.s_to, c.spz, c.j, jz) *
         cg(HalfInt(c.l_from), c.lz, c.s_from, c.sz, c.j, jz);
}

QSqrt s_factorized(const CouplingCase& c) {
  validate_case(c);
  if (c.lpz + c.spz != c.lz + c.sz) return {};
  const HalfInt zsum = c.spz + c.sz;
  if (!zsum.is_integer()) return {};
  const HalfInt lphase = HalfInt(c.l_from) + c.s_to - c.j;
  if (!lphase.is_integer()) return {};
  const HalfInt ds = c.s_to - c.s_from;
  if (!ds.is_integer()) return {};
  const HalfInt dlz = c.lpz - c.lz;
  const int dmin = std::max(std::abs(c.l_to - c.l_from), std::abs(ds.to_int()));
  const int dmax = std::min(c.l_to + c.l_from, (c.s_to + c.s_from).to_int());
  QSqrt sum;
  for (int d = dmin; d <= dmax; ++d) {
    const QSqrt sj = sixj(HalfInt(c.l_to), HalfInt(d), HalfInt(c.l_from),
                          c.s_from, c.j, c.s_to);
    if (sj.is_zero()) continue;
    const QSqrt c1 =
        cg(HalfInt(c.l_from), c.lz, HalfInt(d), dlz, HalfInt(c.l_to), c.lpz);
    if (c1.is_zero()) continue;
    const QSqrt c2 = cg(c.s_from, c.sz, HalfInt(d), -dlz, c.s_to, c.spz);
    if (c2.is_zero()) continue;
    sum += sj * c1 * c2 * Rational(2 * d + 1);
  }
  if (sum.is_zero()) return {};
  const int sign = parity(zsum) * parity(lphase);
  return sum * Rational(sign * (c.j.twice() + 1)) *
         root(Rational(1) / rprod({2 * c.l_to + 1, c.s_to.twice() + 1}));
}

QSqrt coeff_C_general(HalfInt s_to, HalfInt s_from, int delta, int l_to,
                      int l_from, HalfInt j) {
  if (l_to < 0 || l_from < 0 || delta < 0 || j.twice() < 0 || s_to.twice() < 0 ||
      s_from.twice() < 0)
    throw InvalidQuantumNumbersError("coefficient inputs outside the physical domain");
  const HalfInt ds = s_to - s_from;
  if (!ds.is_integer())
    throw InvalidQuantumNumbersError("the two spins must differ by an integer");
  const int adl = std::abs(l_to - l_from);
  const int ads = std::abs(ds.to_int());
  if (delta < adl || delta < ads)
    throw InvalidQuantumNumbersError("transfer rank below the label change");
  const QSqrt orb =
      delta == 0 ? rat(Rational(1)) : redmat_r_L_mixed(l_from, delta, l_to - l_from);
  const QSqrt spi =
      delta == 0 ? rat(Rational(1))
                 : redmat_spin_analog({s_to, s_from, transfer_spin_word(delta, ads)});
  if (orb.is_zero() || spi.is_zero())
    throw UndefinedCoefficientError("a reduced matrix element in the divisor vanishes");
  const HalfInt lphase = HalfInt(l_from) + s_to - j;
  if (!lphase.is_integer()) return {};
  const QSqrt sj =
      sixj(HalfInt(l_to), HalfInt(delta), HalfInt(l_from), s_from, j, s_to);
  if (sj.is_zero()) return {};
  const int sign = parity_twice(s_to) * parity(lphase);
  const QSqrt num = sj * Rational(sign * (j.twice() + 1) * (2 * delta + 1)) *
                    root(Rational(1) / rprod({2 * l_to + 1, s_to.twice() + 1}));
  return divide_by_radical(divide_by_radical(num, orb), spi);
}

QSqrt coeff_C_table(const CoeffTableKey& key) {
  validate_table_key(key);
  const int tp = key.s_to.twice();
  const int tk = key.s_from.twice();
  const int j2 = key.j.twice();
  if (tp == 1 && tk == 1)
    return c_half_half(key.delta, key.l_from, key.l_to - key.l_from, j2);
  if (tp == 2 && tk == 2) return c_one_one(key.delta, key.l_from, key.l_to, j2);
  if (tp == 3 && tk == 3) return c_threehalf(key.delta, key.l_from, key.l_to, j2);
  if (tp == 2 && tk == 0) return c_one_zero(true, key.l_from, key.l_to);
  if (tp == 0 && tk == 2) return c_one_zero(false, key.l_from, key.l_to);
  return c_threehalf_half(tp == 3 ? 1 : -1, key.delta, key.l_from, key.l_to, j2);
}

QSqrt coeff_kappa_table(const CoeffTableKey& key) {
  validate_table_key(key);
  const int tp = key.s_to.twice();
  const int tk = key.s_from.twice();
  const int dl = key.l_to - key.l_from;
  // Short-form weights that the table lists as closed values rather than
  // multiples of the coefficient.
  if (tp == 1 && tk == 1 && dl != 0) {
    const int tm = key.l_to + key.l_from;
    return rat(Rational(-dl)) *
           root(rprod({3, tm + 1}) / rprod({2, 2 * key.l_to + 1}));
  }
  if (tp == 2 && tk == 0) {
    if (dl == 0) return rat(Rational(-1)) * root(Rational(3));
    return root(Rational(3 * (2 * key.l_from + 1), 2 * key.l_to + 1));
  }
  if (tp == 0 && tk == 2) return rat(Rational(1));
  return kappa_prefactor(key) * coeff_C_table(key);
}

QSqrt s_operator_form(const CouplingCase& c) {
  validate_case(c);
  const int tp = c.s_to.twice();
  const int tk = c.s_from.twice();
  if (!supported_pair(tp, tk))
    throw UnsupportedCaseError("no operator form for spin pair (" + c.s_to.str() +
                               ", " + c.s_from.str() + ")");
  if (c.lpz + c.spz != c.lz + c.sz) return {};
  if (!triangle(HalfInt(c.l_to), c.s_to, c.j) ||
      !triangle(HalfInt(c.l_from), c.s_from, c.j))
    return {};
  const int dl = c.l_to - c.l_from;
  const int ads = std::abs(tp - tk) / 2;
  const int dmin = std::max(std::abs(dl), ads);
  const int dmax = std::min(c.l_to + c.l_from, (tp + tk) / 2);
  if (dmin > dmax) return {};
  const HalfInt dlz = c.lpz - c.lz;
  CQSqrt sum;
  for (int d = dmin; d <= dmax; ++d) {
    const QSqrt cc = coeff_C_table({c.s_to, c.s_from, d, c.l_to, c.l_from, c.j});
    if (cc.is_zero()) continue;
    QSqrt orb;
    if (d == 0)
      orb = c.lpz == c.lz ? rat(Rational(1)) : QSqrt{};
    else
      orb = redmat_r_L_mixed(c.l_from, d, dl) *
            cg(HalfInt(c.l_from), c.lz, HalfInt(d), dlz, HalfInt(c.l_to), c.lpz);
    if (orb.is_zero()) continue;
    const CQSqrt spin =
        spin_me(c.s_to, c.spz, transfer_spin_word(d, ads), dlz, c.s_from, c.sz);
    sum += CQSqrt(cc * orb) * spin;
  }
  if (!sum.im.is_zero())
    throw std::logic_error("operator form produced a complex value");
  return sum.re;
}

QSqrt s_kappa_form(const CouplingCase& c) {
  validate_case(c);
  const int tp = c.s_to.twice();
  const int tk = c.s_from.twice();
  if (!supported_pair(tp, tk))
    throw UnsupportedCaseError("no short form for spin pair (" + c.s_to.str() +
                               ", " + c.s_from.str() + ")");
  if (c.lpz + c.spz != c.lz + c.sz) return {};
  if (!triangle(HalfInt(c.l_to), c.s_to, c.j) ||
      !triangle(HalfInt(c.l_from), c.s_from, c.j))
    return {};
  const int dl = c.l_to - c.l_from;
  const int ads = std::abs(tp - tk) / 2;
  const int dmin = std::max(std::abs(dl), ads);
  const int dmax = std::min(c.l_to + c.l_from, (tp + tk) / 2);
  if (dmin > dmax) return {};
  const HalfInt dlz = c.lpz - c.lz;
  QSqrt sum;
  for (int d = dmin; d <= dmax; ++d) {
    const QSqrt k = coeff_kappa_table({c.s_to, c.s_from, d, c.l_to, c.l_from, c.j});
    if (k.is_zero()) continue;
    const QSqrt c1 =
        cg(HalfInt(c.l_from), c.lz, HalfInt(d), dlz, HalfInt(c.l_to), c.lpz);
    if (c1.is_zero()) continue;
    const QSqrt c2 = cg(c.s_to, c.spz, HalfInt(d), dlz, c.s_from, c.sz);
    if (c2.is_zero()) continue;
    sum += k * c1 * c2;
  }
  return sum;
}

std::pair<QSqrt, QSqrt> alt_ratio_check(int l, HalfInt j) {
  if (l < 0 || j.twice() < 0)
    throw InvalidQuantumNumbersError("labels must be non-negative");
  const int dl = j.twice() - 2 * l;
  if (dl != 1 && dl != -1)
    throw InvalidQuantumNumbersError("the ratio identity needs j = l +- 1/2");
  const int l1 = l + dl;
  if (l1 < 0)
    throw InvalidQuantumNumbersError("the shifted label must be non-negative");
  return {rat(Rational(2 * l + dl + 1, 2 * l1 + 1)),
          rat(Rational(j.twice() + 1, j.twice() + 1 + dl))};
}

}  // namespace spincouple
