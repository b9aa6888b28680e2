// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/cgfactor.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "spincouple/errors.hpp"
#include "spincouple/wigner.hpp"

using namespace spincouple;

namespace {

QSqrt root(const Rational& r) { return QSqrt::sqrt_of_rational(r); }

HalfInt h2(int twice) { return HalfInt::from_twice(twice); }

/// Twice-spin values of the pairs covered by the coefficient tables.
const std::vector<std::pair<int, int>> kTablePairs = {
    {1, 1}, {2, 2}, {3, 3}, {2, 0}, {0, 2}, {3, 1}, {1, 3}};

/// Total momenta coupling both (l_to, s_to) and (l_from, s_from).
std::vector<HalfInt> couplable_j(int l_to, HalfInt s_to, int l_from,
                                 HalfInt s_from) {
  std::vector<HalfInt> out;
  const int lo1 = std::abs(2 * l_to - s_to.twice());
  const int hi1 = 2 * l_to + s_to.twice();
  const int lo2 = std::abs(2 * l_from - s_from.twice());
  const int hi2 = 2 * l_from + s_from.twice();
  if ((hi1 - hi2) % 2 != 0) return out;
  for (int t = std::max(lo1, lo2); t <= std::min(hi1, hi2); t += 2)
    out.push_back(h2(t));
  return out;
}

/// Applies fn to every projection assignment of the given case skeleton.
template <typename Fn>
void for_each_projection(int l_to, HalfInt s_to, int l_from, HalfInt s_from,
                         HalfInt j, Fn&& fn) {
  for (int lz2 = -2 * l_from; lz2 <= 2 * l_from; lz2 += 2)
    for (int sz2 = -s_from.twice(); sz2 <= s_from.twice(); sz2 += 2)
      for (int spz2 = -s_to.twice(); spz2 <= s_to.twice(); spz2 += 2) {
        const int lpz2 = lz2 + sz2 - spz2;
        if (std::abs(lpz2) > 2 * l_to) continue;
        fn(CouplingCase{j, s_to, s_from, l_to, l_from, h2(lpz2), h2(lz2),
                        h2(spz2), h2(sz2)});
      }
}

}  // namespace

TEST_SUITE("cgfactor") {

TEST_CASE("all four evaluation routes agree on the tabulated spin pairs") {
  for (const auto& [tp, tk] : kTablePairs) {
    const HalfInt s_to = h2(tp);
    const HalfInt s_from = h2(tk);
    for (int l_from = 0; l_from <= 5; ++l_from)
      for (int l_to = 0; l_to <= 5; ++l_to) {
        if (std::abs(l_to - l_from) > 3) continue;
        for (HalfInt j : couplable_j(l_to, s_to, l_from, s_from)) {
          for_each_projection(l_to, s_to, l_from, s_from, j,
                              [&](const CouplingCase& c) {
                                const QSqrt d = s_direct(c);
                                CHECK(d == s_factorized(c));
                                CHECK(d == s_operator_form(c));
                                CHECK(d == s_kappa_form(c));
                              });
        }
      }
  }
}

TEST_CASE("total momenta selected by each label change") {
  auto jset = [](std::vector<int> twice) {
    std::vector<HalfInt> out;
    for (int t : twice) out.push_back(h2(t));
    return out;
  };
  for (int l : {4, 5}) {
    const int t = 2 * l;
    // spins (1/2, 1/2)
    CHECK(couplable_j(l, h2(1), l, h2(1)) == jset({t - 1, t + 1}));
    CHECK(couplable_j(l + 1, h2(1), l, h2(1)) == jset({t + 1}));
    CHECK(couplable_j(l - 1, h2(1), l, h2(1)) == jset({t - 1}));
    // spins (1, 1)
    CHECK(couplable_j(l, h2(2), l, h2(2)) == jset({t - 2, t, t + 2}));
    CHECK(couplable_j(l + 1, h2(2), l, h2(2)) == jset({t, t + 2}));
    CHECK(couplable_j(l - 1, h2(2), l, h2(2)) == jset({t - 2, t}));
    CHECK(couplable_j(l + 2, h2(2), l, h2(2)) == jset({t + 2}));
    CHECK(couplable_j(l - 2, h2(2), l, h2(2)) == jset({t - 2}));
    // spins (3/2, 3/2)
    CHECK(couplable_j(l, h2(3), l, h2(3)) ==
          jset({t - 3, t - 1, t + 1, t + 3}));
    CHECK(couplable_j(l + 1, h2(3), l, h2(3)) == jset({t - 1, t + 1, t + 3}));
    CHECK(couplable_j(l - 1, h2(3), l, h2(3)) == jset({t - 3, t - 1, t + 1}));
    CHECK(couplable_j(l + 2, h2(3), l, h2(3)) == jset({t + 1, t + 3}));
    CHECK(couplable_j(l - 2, h2(3), l, h2(3)) == jset({t - 3, t - 1}));
    CHECK(couplable_j(l + 3, h2(3), l, h2(3)) == jset({t + 3}));
    CHECK(couplable_j(l - 3, h2(3), l, h2(3)) == jset({t - 3}));
    // spins (1, 0) and (0, 1)
    for (int dl : {-1, 0, 1}) {
      CHECK(couplable_j(l + dl, h2(2), l, h2(0)) == jset({t}));
      CHECK(couplable_j(l + dl, h2(0), l, h2(2)) == jset({t + 2 * dl}));
    }
    // spins (3/2, 1/2) and (1/2, 3/2)
    CHECK(couplable_j(l, h2(3), l, h2(1)) == jset({t - 1, t + 1}));
    CHECK(couplable_j(l + 1, h2(3), l, h2(1)) == jset({t - 1, t + 1}));
    CHECK(couplable_j(l - 1, h2(3), l, h2(1)) == jset({t - 1, t + 1}));
    CHECK(couplable_j(l + 2, h2(3), l, h2(1)) == jset({t + 1}));
    CHECK(couplable_j(l - 2, h2(3), l, h2(1)) == jset({t - 1}));
    CHECK(couplable_j(l, h2(1), l, h2(3)) == jset({t - 1, t + 1}));
    CHECK(couplable_j(l + 1, h2(1), l, h2(3)) == jset({t + 1, t + 3}));
    CHECK(couplable_j(l - 1, h2(1), l, h2(3)) == jset({t - 3, t - 1}));
    CHECK(couplable_j(l + 2, h2(1), l, h2(3)) == jset({t + 3}));
    CHECK(couplable_j(l - 2, h2(1), l, h2(3)) == jset({t - 3}));
  }
}

TEST_CASE("tabulated coefficients match the defining ratio") {
  for (const auto& [tp, tk] : kTablePairs) {
    const HalfInt s_to = h2(tp);
    const HalfInt s_from = h2(tk);
    const int ads = std::abs(tp - tk) / 2;
    for (int l_from = 0; l_from <= 8; ++l_from)
      for (int l_to = 0; l_to <= 8; ++l_to) {
        const int adl = std::abs(l_to - l_from);
        if (adl > 3) continue;
        for (HalfInt j : couplable_j(l_to, s_to, l_from, s_from)) {
          const int dmax = std::min(l_to + l_from, (tp + tk) / 2);
          for (int d = std::max(adl, ads); d <= dmax; ++d) {
            const CoeffTableKey key{s_to, s_from, d, l_to, l_from, j};
            CHECK(coeff_C_table(key) ==
                  coeff_C_general(s_to, s_from, d, l_to, l_from, j));
          }
        }
      }
  }
}

TEST_CASE("coefficient values at chosen labels") {
  // spins (1/2, 1/2), no label change
  for (int l = 1; l <= 4; ++l)
    for (int dj : {-1, 1}) {
      const HalfInt j = h2(2 * l + dj);
      CHECK(coeff_C_table({h2(1), h2(1), 0, l, l, j}) ==
            QSqrt(Rational(2 * l + dj + 1, 2 * (2 * l + 1))));
      CHECK(coeff_C_table({h2(1), h2(1), 1, l, l, j}) ==
            QSqrt(Rational(2 * dj, 2 * l + 1)));
    }
  // spins (1/2, 1/2), unit label change
  CHECK(coeff_C_table({h2(1), h2(1), 1, 3, 2, h2(5)}) == QSqrt(Rational(-2)));
  CHECK(coeff_C_table({h2(1), h2(1), 1, 2, 3, h2(5)}) == QSqrt(Rational(-2)));
  // spins (1, 1), label change by two
  for (int l : {2, 3})
    for (int dl : {-2, 2}) {
      const HalfInt j = h2(2 * l + dl);
      const int j2 = j.twice();
      CHECK(coeff_C_table({h2(2), h2(2), 2, l + dl, l, j}) ==
            QSqrt(Rational(j2 + 1)) *
                root(Rational(4, j2 * (j2 + 2))));
    }
  // spins (1, 0), no label change
  for (int l : {1, 2, 5})
    CHECK(coeff_C_table({h2(2), h2(0), 1, l, l, h2(2 * l)}) ==
          root(Rational(3, l * (l + 1))));
  // spins (3/2, 1/2), label change by two
  CHECK(coeff_C_table({h2(3), h2(1), 2, 4, 2, h2(5)}) ==
        QSqrt(Rational(2)) * root(Rational(14, 3)));
  CHECK(coeff_C_table({h2(3), h2(1), 2, 0, 2, h2(3)}) ==
        QSqrt(Rational(-2)) * root(Rational(8)));
}

TEST_CASE("short-form weights at chosen labels") {
  // spins (1/2, 1/2): the unit label change weight is a closed value
  CHECK(coeff_kappa_table({h2(1), h2(1), 1, 3, 2, h2(5)}) ==
        -root(Rational(9, 7)));
  CHECK(coeff_kappa_table({h2(1), h2(1), 1, 2, 3, h2(5)}) ==
        root(Rational(9, 5)));
  // spins (1/2, 1/2), no label change: kappa0 equals the coefficient
  CHECK(coeff_kappa_table({h2(1), h2(1), 0, 3, 3, h2(7)}) ==
        coeff_C_table({h2(1), h2(1), 0, 3, 3, h2(7)}));
  // and kappa1 carries the orbital magnitude
  CHECK(coeff_kappa_table({h2(1), h2(1), 1, 3, 3, h2(7)}) ==
        root(Rational(3 * 3 * 4, 4)) *
            coeff_C_table({h2(1), h2(1), 1, 3, 3, h2(7)}));
  // spins (1, 0) and (0, 1): closed weights, independent of j
  CHECK(coeff_kappa_table({h2(2), h2(0), 1, 2, 2, h2(4)}) == -root(Rational(3)));
  CHECK(coeff_kappa_table({h2(2), h2(0), 1, 3, 2, h2(4)}) ==
        root(Rational(15, 7)));
  CHECK(coeff_kappa_table({h2(0), h2(2), 1, 2, 2, h2(4)}) ==
        QSqrt(Rational(1)));
  CHECK(coeff_kappa_table({h2(0), h2(2), 1, 3, 2, h2(6)}) ==
        QSqrt(Rational(1)));
  // spins (3/2, 3/2), maximal label change
  {
    const CoeffTableKey key{h2(3), h2(3), 3, 5, 2, h2(7)};
    const int tm = 7;
    CHECK(coeff_kappa_table(key) ==
          QSqrt(Rational(3)) *
              root(Rational(7 * 5) * Rational((tm - 1) * (tm + 1) * (tm + 3)) /
                   (Rational(64) * Rational((tm + 4) * (tm - 2)) *
                    Rational(tm * (tm + 2)))) *
              coeff_C_table(key));
  }
}

TEST_CASE("direct and factorized products agree for random labels") {
  std::mt19937 rng(12345);
  auto draw = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  int nonzero = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const HalfInt s_to = h2(draw(0, 5));
    const HalfInt s_from = h2(draw(0, 5));
    const int l_to = draw(0, 6);
    const int l_from = draw(0, 6);
    // half the draws aim at the coupling window, the rest roam freely
    const HalfInt j = iter % 2 == 0
                          ? h2(std::abs(2 * l_to - s_to.twice()) + 2 * draw(0, 5))
                          : h2(draw(0, 15));
    const HalfInt lz = h2(2 * draw(-l_from, l_from));
    const HalfInt spz = h2(-s_to.twice() + 2 * draw(0, s_to.twice()));
    const HalfInt sz = h2(-s_from.twice() + 2 * draw(0, s_from.twice()));
    HalfInt lpz = h2(2 * draw(-l_to, l_to));
    if (iter % 4 != 0) {
      const HalfInt want = lz + sz - spz;
      if (want.is_integer() && std::abs(want.to_int()) <= l_to) lpz = want;
    }
    const CouplingCase c{j, s_to, s_from, l_to, l_from, lpz, lz, spz, sz};
    const QSqrt d = s_direct(c);
    CHECK(d == s_factorized(c));
    if (!d.is_zero()) ++nonzero;
  }
  CHECK(nonzero > 20);
}

TEST_CASE("ratio conventions written two ways coincide") {
  for (int l : {1, 2, 5})
    for (int dj : {-1, 1}) {
      const auto [a, b] = alt_ratio_check(l, h2(2 * l + dj));
      CHECK(a == b);
      CHECK(!a.is_zero());
    }
  CHECK(alt_ratio_check(1, h2(3)).first == QSqrt(Rational(4, 5)));
}

TEST_CASE("coupling inputs outside the catalogs are rejected") {
  const CouplingCase scalar{h2(4), h2(0), h2(0), 2, 2, h2(0), h2(0), h2(0), h2(0)};
  CHECK(!s_direct(scalar).is_zero());
  CHECK(s_direct(scalar) == s_factorized(scalar));
  CHECK_THROWS_AS(s_operator_form(scalar), UnsupportedCaseError);
  CHECK_THROWS_AS(s_kappa_form(scalar), UnsupportedCaseError);
  const CouplingCase high{h2(6), h2(4), h2(4), 2, 2, h2(0), h2(0), h2(0), h2(0)};
  CHECK_THROWS_AS(s_operator_form(high), UnsupportedCaseError);
  CHECK_THROWS_AS(s_kappa_form(high), UnsupportedCaseError);
  CHECK_THROWS_AS(coeff_C_table({h2(4), h2(4), 1, 2, 2, h2(6)}),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(coeff_kappa_table({h2(4), h2(4), 1, 2, 2, h2(6)}),
                  UnsupportedCaseError);
  // the total momentum must couple both sides
  CHECK_THROWS_AS(coeff_C_table({h2(1), h2(1), 0, 1, 1, h2(5)}),
                  UnsupportedCaseError);
  // the transfer rank must lie in the tabulated window
  CHECK_THROWS_AS(coeff_C_table({h2(1), h2(1), 1, 0, 0, h2(1)}),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(coeff_C_table({h2(2), h2(2), 0, 3, 2, h2(6)}),
                  UnsupportedCaseError);
  // malformed labels
  CHECK_THROWS_AS(
      s_direct({h2(2), h2(1), h2(1), -1, 2, h2(0), h2(0), h2(1), h2(1)}),
      InvalidQuantumNumbersError);
  CHECK_THROWS_AS(
      s_direct({h2(2), h2(1), h2(1), 1, 1, h2(4), h2(0), h2(1), h2(1)}),
      InvalidQuantumNumbersError);
  CHECK_THROWS_AS(coeff_C_general(h2(1), h2(0), 1, 1, 1, h2(2)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(coeff_C_general(h2(1), h2(1), 0, 2, 1, h2(3)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(alt_ratio_check(2, h2(7)), InvalidQuantumNumbersError);
  // a vanishing reduced matrix element leaves the ratio undefined
  CHECK_THROWS_AS(coeff_C_general(h2(1), h2(1), 1, 0, 0, h2(1)),
                  UndefinedCoefficientError);
}

}
