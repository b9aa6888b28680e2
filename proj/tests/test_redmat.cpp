// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <tuple>
#include <vector>

#include "sphere.hpp"
#include "spincouple/errors.hpp"
#include "spincouple/redmat.hpp"
#include "spincouple/tensor.hpp"
#include "spincouple/tensorbasis.hpp"
#include "spincouple/wigner.hpp"

using namespace spincouple;
namespace st = spincouple::testing;

namespace {

HalfInt h2(int twice) { return HalfInt::from_twice(twice); }

constexpr double kTol = 1e-10;

constexpr int pow3(int n) { return n == 0 ? 1 : 3 * pow3(n - 1); }

int levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return (j - i + 3) % 3 == 1 ? 1 : -1;
}

QSqrt qsqrt(const Rational& r) { return QSqrt::sqrt_of_rational(r); }

/// Components of the orbital angular momentum acting on the 2l+1 states
/// of sharp l, rows and columns in descending projection.
std::array<NMat, 3> l_matrices(int l) {
  if (l == 0) {
    NMat z(1, 1);
    return {z, z, z};
  }
  const SpinMatrix s = spin_operator(HalfInt(l));
  return {to_numeric(s.comp[0]), to_numeric(s.comp[1]), to_numeric(s.comp[2])};
}

/// Products over all length-b letter choices, indexed big-endian so the
/// flat index matches the standard tensor layout.
std::vector<NMat> momentum_chains(const std::array<NMat, 3>& lm, int dim, int b) {
  std::vector<NMat> chains{NMat::identity(dim)};
  for (int step = 0; step < b; ++step) {
    std::vector<NMat> next;
    next.reserve(chains.size() * 3);
    for (const NMat& c : chains)
      for (int k = 0; k < 3; ++k) next.push_back(c * lm[k]);
    chains = std::move(next);
  }
  return chains;
}

/// <l', i'| rhat^{h_1} ... rhat^{h_a} |l, i> by quadrature between
/// spherical harmonics, one matrix per flat monomial index.
std::vector<NMat> versor_moments(int lp, int l, int a, int degree) {
  const auto grid = st::sphere_grid(degree);
  const int pw = pow3(a);
  std::vector<NMat> mom(static_cast<std::size_t>(pw), NMat(2 * lp + 1, 2 * l + 1));
  std::vector<double> mono(static_cast<std::size_t>(pw));
  for (const auto& pt : grid) {
    const auto u = pt.unit();
    for (int h = 0; h < pw; ++h) {
      double v = 1.0;
      for (int rem = h, d = 0; d < a; ++d, rem /= 3) v *= u[rem % 3];
      mono[static_cast<std::size_t>(h)] = v;
    }
    const auto yb = st::ylm_row(lp, pt.ct, pt.st, pt.phi);
    const auto yk = st::ylm_row(l, pt.ct, pt.st, pt.phi);
    for (int i = 0; i <= 2 * lp; ++i)
      for (int j = 0; j <= 2 * l; ++j) {
        const std::complex<double> base =
            pt.w * std::conj(yb[static_cast<std::size_t>(i)]) * yk[static_cast<std::size_t>(j)];
        for (int h = 0; h < pw; ++h)
          mom[static_cast<std::size_t>(h)](i, j) += base * mono[static_cast<std::size_t>(h)];
      }
  }
  return mom;
}

/// Largest deviation between the oracle matrix elements of the rank-n
/// word and the reduced value times the coupling coefficient, over all
/// operator projections and all bra and ket states.
double we_deviation(int lp, int l, int n, const std::vector<NMat>& word,
                    const CQSqrt& reduced) {
  const std::complex<double> rm = reduced.to_cfloat();
  double worst = 0.0;
  for (int tm = 2 * n; tm >= -2 * n; tm -= 2) {
    const NTensor eps = to_numeric(standard_tensor(n, h2(tm)));
    NMat me(2 * lp + 1, 2 * l + 1);
    for (int h = 0; h < pow3(n); ++h) {
      const std::complex<double> c = eps[static_cast<std::size_t>(h)];
      if (c != 0.0) me += word[static_cast<std::size_t>(h)] * c;
    }
    for (int i = 0; i <= 2 * lp; ++i)
      for (int j = 0; j <= 2 * l; ++j) {
        const std::complex<double> pred =
            rm * cg(HalfInt(l), HalfInt(l - j), h2(2 * n), h2(tm), HalfInt(lp), HalfInt(lp - i))
                     .to_float();
        worst = std::max(worst, std::abs(me(i, j) - pred));
      }
  }
  return worst;
}

/// Reduced value the catalog assigns to the word rhat^a L^b between l and
/// lp; an engaged zero marks a selection-rule zero, nullopt a valid word
/// outside the catalog.
std::optional<QSqrt> catalog_value(int a, int b, int l, int lp) {
  const int n = a + b;
  const int dl = lp - l;
  if (std::abs(dl) > a || (a - std::abs(dl)) % 2 != 0) return QSqrt{};
  if (a == n) {
    if (std::abs(dl) == n) return redmat_r_power(l, n, dl > 0 ? 1 : -1);
    return redmat_spin_analog({HalfInt(lp), HalfInt(l), std::vector<WordOp>(n, WordOp::Rhat)});
  }
  if (a == 0) return dl == 0 ? redmat_J_power(HalfInt(l), n) : QSqrt{};
  if (std::abs(dl) == a) return redmat_r_L_mixed(l, n, dl);
  return std::nullopt;
}

QSqrt guarded_sqrt(const Rational& r) { return r < 0 ? QSqrt{} : qsqrt(r); }

/// The printed rank-1, rank-2, and rank-3 versor power forms, written in
/// twice-label variables so both integer and half-integer labels fit.
QSqrt versor_form(int tl, int n, int sign) {
  const int tm = tl + sign * n;
  if (tm - n < 0) return {};
  switch (n) {
    case 1:
      return qsqrt(Rational(tm + 1, 2 * (tm + 1 + sign))) * Rational(sign);
    case 2:
      return qsqrt(Rational(Int(tl + 1) * tm * (tm + 2),
                            Int(4) * (tm - 1) * (tm + 1) * (tm + 3)));
    case 3:
      return qsqrt(Rational(Int(tl + 1) * (tm - 1) * (tm + 1) * (tm + 3),
                            Int(8) * (tm + 4) * (tm - 2) * tm * (tm + 2))) *
             Rational(sign);
    default:
      return {};
  }
}

/// The printed mixed-word forms with one position factor and one or two
/// momentum factors, in twice-label variables.
QSqrt mixed_form(int tl, int n, int dl) {
  const int tm = tl + dl;
  if (tm - n < 0) return {};
  const int tlp = tl + 2 * dl;
  if (n == 2)
    return qsqrt(Rational(Int(tm - 1) * (tm + 1) * (tm + 3), Int(16) * (tlp + 1))) *
           Rational(dl);
  return qsqrt(Rational(Int(tm - 2) * (tm - 1) * (tm + 1) * (tm + 3) * (tm + 4),
                        Int(120) * (tlp + 1))) *
         Rational(dl);
}

/// The printed two-position one-momentum form at rank change two.
QSqrt double_versor_momentum_form(int tl, int dl) {
  const int tm = tl + dl;
  if (tm - 3 < 0) return {};
  return qsqrt(Rational(Int(tl + 1) * (tm - 2) * tm * (tm + 2) * (tm + 4),
                        Int(48) * (tm - 1) * (tm + 1) * (tm + 3)));
}

}  // namespace

TEST_SUITE("redmat") {

TEST_CASE("momentum power closed form") {
  for (int tj = 1; tj <= 12; ++tj)
    CHECK(redmat_J_power(h2(tj), 1) == qsqrt(casimir(h2(tj))));
  CHECK(redmat_J_power(h2(1), 2).is_zero());
  CHECK(redmat_J_power(HalfInt(1), 2) == qsqrt(Rational(5, 3)));
  CHECK(redmat_J_power(HalfInt(0), 1).is_zero());
  for (int tj = 0; tj <= 8; ++tj)
    for (int n = 1; n <= 4; ++n)
      if (tj < n) CHECK(redmat_J_power(h2(tj), n).is_zero());
}

TEST_CASE("versor power explicit forms") {
  CHECK(redmat_r_power(0, 1, 1) == qsqrt(Rational(1, 3)));
  for (int l = 0; l <= 10; ++l)
    for (int n = 1; n <= 3; ++n)
      for (int sign : {1, -1}) {
        if (l + sign * n < 0) continue;
        CHECK(redmat_r_power(l, n, sign) == versor_form(2 * l, n, sign));
      }
}

TEST_CASE("versor power equals the aligned coefficient route") {
  for (int l = 0; l <= 10; ++l)
    for (int n = 1; n <= 3; ++n)
      for (int sign : {1, -1}) {
        const int lp = l + sign * n;
        if (lp < 0) continue;
        const QSqrt aligned =
            qsqrt(Rational(factorial(n), double_factorial(2 * n - 1)) * Rational(2 * l + 1, 2 * lp + 1)) *
            cg(l, 0, n, 0, lp, 0);
        CHECK(redmat_r_power(l, n, sign) == aligned);
      }
}

TEST_CASE("mixed word reduces to the pure powers") {
  for (int l = 0; l <= 10; ++l)
    for (int n = 1; n <= 3; ++n) {
      CHECK(redmat_r_L_mixed(l, n, 0) == redmat_J_power(HalfInt(l), n));
      for (int sign : {1, -1}) {
        if (l + sign * n < 0) continue;
        CHECK(redmat_r_L_mixed(l, n, sign * n) == redmat_r_power(l, n, sign));
      }
    }
}

TEST_CASE("mixed word explicit forms") {
  for (int l = 0; l <= 10; ++l)
    for (int dl : {1, -1}) {
      if (l + dl < 0) continue;
      CHECK(redmat_r_L_mixed(l, 2, dl) == mixed_form(2 * l, 2, dl));
      CHECK(redmat_r_L_mixed(l, 3, dl) == mixed_form(2 * l, 3, dl));
    }
  for (int l = 0; l <= 10; ++l)
    for (int dl : {2, -2}) {
      if (l + dl < 0) continue;
      CHECK(redmat_r_L_mixed(l, 3, dl) == double_versor_momentum_form(2 * l, dl));
    }
}

TEST_CASE("rank change sign carrier") {
  for (int dl : {-3, -2, -1, 1, 2, 3}) {
    const int a = std::abs(dl);
    const int lhs = (a - dl) / 2 % 2 == 0 ? 1 : -1;
    int rhs = 1;
    for (int k = 0; k < a; ++k) rhs *= dl / a;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("matrix elements factor through reduced values") {
  std::map<std::tuple<int, int, int>, std::vector<NMat>> moments;
  for (int l = 0; l <= 6; ++l) {
    const auto lm = l_matrices(l);
    std::array<std::vector<NMat>, 4> chains;
    for (int b = 0; b <= 3; ++b) chains[static_cast<std::size_t>(b)] = momentum_chains(lm, 2 * l + 1, b);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; a + b <= 3; ++b) {
        const int n = a + b;
        if (n == 0) continue;
        for (int lp = std::max(0, l - n - 1); lp <= std::min(6, l + n + 1); ++lp) {
          if (a == 0 && lp != l) continue;
          const auto expected = catalog_value(a, b, l, lp);
          if (!expected) continue;
          auto key = std::make_tuple(lp, l, a);
          if (a > 0 && !moments.count(key))
            moments.emplace(key, versor_moments(lp, l, a, 2 * (lp + l + 5)));
          const auto& mom = moments[key];
          std::vector<NMat> word;
          word.reserve(static_cast<std::size_t>(pow3(n)));
          const auto& lch = chains[static_cast<std::size_t>(b)];
          for (int h = 0; h < pow3(n); ++h) {
            const int hp = h / pow3(b);
            const int hm = h % pow3(b);
            if (a == 0)
              word.push_back(lch[static_cast<std::size_t>(hm)]);
            else if (b == 0)
              word.push_back(mom[static_cast<std::size_t>(hp)]);
            else
              word.push_back(mom[static_cast<std::size_t>(hp)] * lch[static_cast<std::size_t>(hm)]);
          }
          CAPTURE(l);
          CAPTURE(lp);
          CAPTURE(a);
          CAPTURE(b);
          CHECK(we_deviation(lp, l, n, word, CQSqrt(*expected)) < kTol);
        }
      }
  }
}

TEST_CASE("pure momentum words are exact under extraction") {
  for (int l = 1; l <= 6; ++l) {
    const SpinMatrix s = spin_operator(HalfInt(l));
    const int dim = 2 * l + 1;
    std::vector<CMat> chains{CMat::identity(dim)};
    for (int n = 1; n <= 3; ++n) {
      std::vector<CMat> next;
      next.reserve(chains.size() * 3);
      for (const CMat& c : chains)
        for (int k = 0; k < 3; ++k) next.push_back(c * s.comp[static_cast<std::size_t>(k)]);
      chains = std::move(next);
      const QSqrt rm = redmat_J_power(HalfInt(l), n);
      for (int tm = 2 * n; tm >= -2 * n; tm -= 2) {
        const CTensor eps = standard_tensor(n, h2(tm));
        CMat me(dim, dim);
        for (int h = 0; h < pow3(n); ++h) {
          CMat term = chains[static_cast<std::size_t>(h)];
          term *= eps[static_cast<std::size_t>(h)];
          me += term;
        }
        CMat pred(dim, dim);
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j)
            pred(i, j) = CQSqrt(rm * cg(HalfInt(l), HalfInt(l - j), h2(2 * n), h2(tm),
                                        HalfInt(l), HalfInt(l - i)));
        CHECK(me == pred);
      }
    }
  }
}

TEST_CASE("cross product words match the closed forms") {
  for (int l = 0; l <= 6; ++l) {
    const auto lm = l_matrices(l);
    for (int dl : {-2, -1, 1, 2}) {
      const int lp = l + dl;
      if (lp < 0 || lp > 6) continue;
      const int deg = 2 * (lp + l + 5);
      const auto mom1 = versor_moments(lp, l, 1, deg);
      const auto mom2 = versor_moments(lp, l, 2, deg);

      std::array<NMat, 3> crossmat{NMat(2 * lp + 1, 2 * l + 1), NMat(2 * lp + 1, 2 * l + 1),
                                   NMat(2 * lp + 1, 2 * l + 1)};
      for (int i = 0; i < 3; ++i)
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 3; ++q)
            if (const int e = levi(i, p, q); e != 0)
              crossmat[static_cast<std::size_t>(i)] +=
                  (mom1[static_cast<std::size_t>(p)] * lm[static_cast<std::size_t>(q)]) *
                  std::complex<double>(e, 0.0);

      CAPTURE(l);
      CAPTURE(dl);
      {
        std::vector<NMat> word(crossmat.begin(), crossmat.end());
        CHECK(we_deviation(lp, l, 1, word, redmat_cross(CrossKind::cross, l, dl)) < kTol);
      }
      {
        std::vector<NMat> word;
        word.reserve(9);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            word.push_back(crossmat[static_cast<std::size_t>(i)] * lm[static_cast<std::size_t>(j)]);
        CHECK(we_deviation(lp, l, 2, word, redmat_cross(CrossKind::cross_l, l, dl)) < kTol);
      }
      {
        std::vector<NMat> word;
        word.reserve(9);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            NMat w(2 * lp + 1, 2 * l + 1);
            for (int p = 0; p < 3; ++p)
              for (int q = 0; q < 3; ++q)
                if (const int e = levi(j, p, q); e != 0)
                  w += (mom2[static_cast<std::size_t>(3 * i + p)] * lm[static_cast<std::size_t>(q)]) *
                       std::complex<double>(e, 0.0);
            word.push_back(std::move(w));
          }
        CHECK(we_deviation(lp, l, 2, word, redmat_cross(CrossKind::r_cross, l, dl)) < kTol);
      }
    }
  }
}

TEST_CASE("spherical harmonic elements match quadrature") {
  const double root4pi = std::sqrt(4.0 * std::numbers::pi);
  for (int lp = 0; lp <= 4; ++lp)
    for (int L = 0; L <= 4; ++L)
      for (int l = 0; l <= 4; ++l) {
        const double rm = redmat_Y(lp, L, l).to_float() / root4pi;
        const auto grid = st::sphere_grid(2 * (lp + L + l + 2));
        double worst = 0.0;
        for (int mu = -L; mu <= L; ++mu)
          for (int m = -l; m <= l; ++m) {
            const int mp = m + mu;
            if (std::abs(mp) > lp) continue;
            std::complex<double> integral = 0.0;
            for (const auto& pt : grid) {
              const auto yb = st::ylm_row(lp, pt.ct, pt.st, pt.phi);
              const auto yo = st::ylm_row(L, pt.ct, pt.st, pt.phi);
              const auto yk = st::ylm_row(l, pt.ct, pt.st, pt.phi);
              integral += pt.w * std::conj(yb[static_cast<std::size_t>(lp - mp)]) *
                          yo[static_cast<std::size_t>(L - mu)] * yk[static_cast<std::size_t>(l - m)];
            }
            const double pred =
                rm * cg(HalfInt(l), HalfInt(m), HalfInt(L), HalfInt(mu), HalfInt(lp), HalfInt(mp))
                         .to_float();
            worst = std::max(worst, std::abs(integral - pred));
          }
        CAPTURE(lp);
        CAPTURE(L);
        CAPTURE(l);
        CHECK(worst < kTol);
      }
  CHECK(redmat_Y(1, 1, 0) == QSqrt(1));
  CHECK(redmat_Y(0, 1, 1) == -qsqrt(Rational(3)));
  CHECK(redmat_Y(1, 2, 0).is_zero());
  CHECK(redmat_Y(2, 1, 0).is_zero());
  CHECK(redmat_Y(0, 1, 0).is_zero());
}

TEST_CASE("spin analog words") {
  for (int ts = 0; ts <= 8; ++ts)
    for (int ds : {1, -1}) {
      const int tsp = ts + 2 * ds;
      if (tsp < 0) continue;
      const RedMatKey key{h2(tsp), h2(ts), {WordOp::T}};
      CHECK(redmat_spin_analog(key) == versor_form(ts, 1, ds));
    }
  for (int ts = 1; ts <= 8; ++ts) {
    CHECK(redmat_spin_analog({h2(ts), h2(ts), {WordOp::S}}) == redmat_J_power(h2(ts), 1));
    CHECK(redmat_spin_analog({h2(ts), h2(ts), {WordOp::S, WordOp::S}}) ==
          redmat_J_power(h2(ts), 2));
  }
  for (int ts = 0; ts <= 8; ++ts)
    for (int ds : {1, -1}) {
      const int tsp = ts + 2 * ds;
      if (tsp < 0) continue;
      CHECK(redmat_spin_analog({h2(tsp), h2(ts), {WordOp::T, WordOp::S}}) ==
            mixed_form(ts, 2, ds));
      CHECK(redmat_spin_analog({h2(tsp), h2(ts), {WordOp::T, WordOp::S, WordOp::S}}) ==
            mixed_form(ts, 3, ds));
    }
  for (int ts = 0; ts <= 8; ++ts)
    for (int ds : {2, -2}) {
      const int tsp = ts + 2 * ds;
      if (tsp < 0) continue;
      CHECK(redmat_spin_analog({h2(tsp), h2(ts), {WordOp::T, WordOp::T}}) ==
            versor_form(ts, 2, ds / 2));
      CHECK(redmat_spin_analog({h2(tsp), h2(ts), {WordOp::T, WordOp::T, WordOp::S}}) ==
            double_versor_momentum_form(ts, ds));
    }
  for (int ts = 0; ts <= 8; ++ts)
    for (int ds : {3, -3}) {
      const int tsp = ts + 2 * ds;
      if (tsp < 0) continue;
      CHECK(redmat_spin_analog({h2(tsp), h2(ts), {WordOp::T, WordOp::T, WordOp::T}}) ==
            versor_form(ts, 3, ds / 3));
    }
  // Transition words change the label by exactly one unit per factor.
  CHECK(redmat_spin_analog({h2(3), h2(3), {WordOp::T}}).is_zero());
  CHECK(redmat_spin_analog({h2(7), h2(1), {WordOp::T, WordOp::T}}).is_zero());
  CHECK(redmat_spin_analog({h2(4), h2(1), {WordOp::T}}).is_zero());
  CHECK(redmat_spin_analog({HalfInt(1), HalfInt(1), {WordOp::L, WordOp::L}}) ==
        redmat_J_power(HalfInt(1), 2));
  CHECK(redmat_spin_analog({HalfInt(2), HalfInt(1), {WordOp::Rhat, WordOp::L}}) ==
        redmat_r_L_mixed(1, 2, 1));
  CHECK(redmat_spin_analog({HalfInt(2), HalfInt(0), {WordOp::L}}).is_zero());
}

TEST_CASE("inputs outside the catalogs are rejected") {
  CHECK_THROWS_AS((void)redmat_J_power(HalfInt(1), 0), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_J_power(h2(-2), 1), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_r_power(0, 1, -1), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_r_power(2, 1, 2), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_r_L_mixed(3, 2, 3), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_r_L_mixed(0, 2, -1), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_Y(-1, 1, 1), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_cross(CrossKind::cross, 2, 0), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_cross(CrossKind::cross, 2, 3), InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_cross(CrossKind::cross, -1, 1), InvalidQuantumNumbersError);
  CHECK(redmat_cross(CrossKind::cross, 0, -1).is_zero());

  CHECK_THROWS_AS((void)redmat_spin_analog({HalfInt(1), HalfInt(1), {}}),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(
      (void)redmat_spin_analog({HalfInt(1), HalfInt(1), {WordOp::Rhat, WordOp::S}}),
      InvalidQuantumNumbersError);
  CHECK_THROWS_AS((void)redmat_spin_analog({h2(1), HalfInt(1), {WordOp::L}}),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(
      (void)redmat_spin_analog({HalfInt(1), HalfInt(1), {WordOp::L, WordOp::Rhat}}),
      UnsupportedCaseError);
  CHECK_THROWS_AS(
      (void)redmat_spin_analog({HalfInt(1), HalfInt(1), {WordOp::S, WordOp::T, WordOp::T}}),
      UnsupportedCaseError);
  CHECK_THROWS_AS((void)redmat_spin_analog({h2(1), h2(1), {WordOp::T, WordOp::T}}),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(
      (void)redmat_spin_analog({HalfInt(1), HalfInt(1), {WordOp::Rhat, WordOp::Rhat, WordOp::L}}),
      UnsupportedCaseError);
}

}  // TEST_SUITE
