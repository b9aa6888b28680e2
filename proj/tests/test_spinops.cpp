// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <array>
#include <cstdlib>
#include <utility>
#include <vector>

#include "spincouple/errors.hpp"
#include "spincouple/redmat.hpp"
#include "spincouple/spinops.hpp"
#include "spincouple/tensor.hpp"
#include "spincouple/tensorbasis.hpp"
#include "spincouple/wigner.hpp"

using namespace spincouple;

namespace {

HalfInt h2(int twice) { return HalfInt::from_twice(twice); }

constexpr int pow3(int n) { return n == 0 ? 1 : 3 * pow3(n - 1); }

int levi(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return (j - i + 3) % 3 == 1 ? 1 : -1;
}

const CQSqrt kOne{QSqrt(Rational(1))};
const CQSqrt kImag{QSqrt{}, QSqrt(Rational(1))};

/// Sum of W^i W^i over components and intermediate multiplets.
CMat word_square(HalfInt s, WordOp op) {
  const auto blocks = word_blocks(s, {op, op}, s);
  CMat out(dim_of(s), dim_of(s));
  for (int i = 0; i < 3; ++i) out += blocks[static_cast<std::size_t>(4 * i)];
  return out;
}

std::vector<std::vector<WordOp>> spin_words_up_to_rank3() {
  using W = WordOp;
  return {{W::S},          {W::S, W::S},    {W::S, W::S, W::S},
          {W::T},          {W::T, W::S},    {W::T, W::S, W::S},
          {W::T, W::T},    {W::T, W::T, W::S},
          {W::T, W::T, W::T}};
}

}  // namespace

TEST_SUITE("spinops") {

TEST_CASE("transition operator blocks from the reduced value") {
  const TMatrix up = t_matrix(HalfInt(1), HalfInt(0));
  for (int tsz = -2; tsz <= 2; tsz += 2) {
    const CTensor eps = standard_vector(h2(tsz));
    const int row = (2 - tsz) / 2;
    for (int i = 0; i < 3; ++i) {
      const CQSqrt expect =
          eps.at({i}).conj() * CQSqrt(QSqrt::sqrt_of_rational(Rational(1, 3)));
      CHECK(up.comp[static_cast<std::size_t>(i)](row, 0) == expect);
    }
  }

  SUBCASE("pairs that do not differ by one give zero blocks") {
    for (const auto& [tp, tk] : std::vector<std::pair<int, int>>{
             {0, 0}, {2, 2}, {1, 1}, {4, 0}, {3, 3}, {5, 1}}) {
      const TMatrix t = t_matrix(h2(tp), h2(tk));
      for (const CMat& c : t.comp) CHECK(c.is_zero());
      CHECK(t.s_to == h2(tp));
      CHECK(t.s_from == h2(tk));
    }
  }

  SUBCASE("negative spins are rejected") {
    CHECK_THROWS_AS(t_matrix(h2(-1), h2(1)), InvalidQuantumNumbersError);
  }
}

TEST_CASE("transition operator squares to the known scalar") {
  struct Row {
    int ts;
    Rational value;
  };
  for (const Row& r : {Row{0, Rational(1)}, Row{1, Rational(3, 4)},
                       Row{2, Rational(1)}, Row{3, Rational(1)},
                       Row{4, Rational(1)}}) {
    const CMat sq = word_square(h2(r.ts), WordOp::T);
    CMat expect = CMat::identity(r.ts + 1);
    expect *= CQSqrt(QSqrt(r.value));
    CHECK(sq == expect);
  }
}

TEST_CASE("commutator of spin with the transition operator") {
  for (int tp = 0; tp <= 5; ++tp) {
    for (int tk = tp % 2; tk <= 5; tk += 2) {
      if (std::abs(tp - tk) != 2) continue;
      const HalfInt s_to = h2(tp);
      const HalfInt s_from = h2(tk);
      const auto s_bra = word_blocks(s_to, {WordOp::S}, s_to);
      const auto s_ket = word_blocks(s_from, {WordOp::S}, s_from);
      const TMatrix t = t_matrix(s_to, s_from);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const CMat lhs = s_bra[static_cast<std::size_t>(i)] *
                               t.comp[static_cast<std::size_t>(j)] -
                           t.comp[static_cast<std::size_t>(j)] *
                               s_ket[static_cast<std::size_t>(i)];
          CMat rhs(dim_of(s_to), dim_of(s_from));
          for (int k = 0; k < 3; ++k) {
            if (levi(i, j, k) == 0) continue;
            rhs += t.comp[static_cast<std::size_t>(k)] *
                   (kImag * CQSqrt(QSqrt(Rational(levi(i, j, k)))));
          }
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("word blocks reproduce reduced values under extraction") {
  // <s' m'|eps(n, m) . word|s m> must equal the reduced value times
  // cg(s, sz; n, m | s', spz) for every projection assignment.
  for (const auto& word : spin_words_up_to_rank3()) {
    const int n = static_cast<int>(word.size());
    int hops = 0;
    for (WordOp op : word)
      if (op == WordOp::T) ++hops;
    for (int tk = 0; tk <= 6; ++tk) {
      for (int dir = -1; dir <= 1; dir += 2) {
        const int tp = tk + dir * 2 * hops;
        if (tp < 0) continue;
        if (hops == 0 && dir > 0) continue;
        const HalfInt s_to = h2(tp);
        const HalfInt s_from = h2(tk);
        const QSqrt reduced = redmat_spin_analog({s_to, s_from, word});
        const auto blocks = word_blocks(s_to, word, s_from);
        for (int tm = -2 * n; tm <= 2 * n; tm += 2) {
          const CTensor eps = standard_tensor(n, h2(tm));
          for (int tspz = -tp; tspz <= tp; tspz += 2) {
            for (int tsz = -tk; tsz <= tk; tsz += 2) {
              CQSqrt val;
              const int row = (tp - tspz) / 2;
              const int col = (tk - tsz) / 2;
              for (int flat = 0; flat < pow3(n); ++flat) {
                const CQSqrt& b = blocks[static_cast<std::size_t>(flat)](row, col);
                if (b.is_zero()) continue;
                val += eps[static_cast<std::size_t>(flat)] * b;
              }
              const QSqrt expect =
                  reduced * cg(s_from, h2(tsz), HalfInt(n), h2(tm), s_to, h2(tspz));
              CHECK(val == CQSqrt(expect));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("matrix and spinor routes agree across the catalog") {
  using W = WordOp;
  struct Entry {
    int tp;
    int tk;
    std::vector<WordOp> word;
  };
  const std::vector<Entry> catalog = {
      {1, 1, {W::S}},          {2, 2, {W::S}},          {2, 2, {W::S, W::S}},
      {3, 3, {W::S}},          {3, 3, {W::S, W::S}},    {3, 3, {W::S, W::S, W::S}},
      {2, 0, {W::T}},          {0, 2, {W::T}},          {3, 1, {W::T}},
      {1, 3, {W::T}},          {3, 1, {W::T, W::S}},    {1, 3, {W::T, W::S}},
  };
  for (const Entry& e : catalog) {
    const int n = static_cast<int>(e.word.size());
    for (int tm = -2 * n; tm <= 2 * n; tm += 2) {
      for (int tspz = -e.tp; tspz <= e.tp; tspz += 2) {
        for (int tsz = -e.tk; tsz <= e.tk; tsz += 2) {
          const CQSqrt a = spin_me(h2(e.tp), h2(tspz), e.word, h2(tm), h2(e.tk),
                                   h2(tsz), SpinMeRoute::matrix);
          const CQSqrt b = spin_me(h2(e.tp), h2(tspz), e.word, h2(tm), h2(e.tk),
                                   h2(tsz), SpinMeRoute::spinor);
          CHECK(a == b);
        }
      }
    }
  }
}

TEST_CASE("spin matrix element examples") {
  // <1, spz|eps(m)^* . T|0, 0> = (1/sqrt 3) eps(m)^* . eps(spz)^*, which
  // collapses to a sign times the delta pairing m with -spz.
  for (int tm = -2; tm <= 2; tm += 2) {
    for (int tspz = -2; tspz <= 2; tspz += 2) {
      const CQSqrt got = spin_me(HalfInt(1), h2(tspz), {WordOp::T}, h2(tm),
                                 HalfInt(0), HalfInt(0));
      CQSqrt expect;
      if (tm == -tspz) {
        QSqrt mag = QSqrt::sqrt_of_rational(Rational(1, 3));
        if (tspz != 0) mag = -mag;
        expect = CQSqrt(mag);
      }
      CHECK(got == expect);
    }
  }

  // The zero-projection spin component is diagonal with eigenvalue sz.
  for (int tsz = -1; tsz <= 1; tsz += 2) {
    const CQSqrt got =
        spin_me(h2(1), h2(tsz), {WordOp::S}, HalfInt(0), h2(1), h2(tsz));
    CHECK(got == CQSqrt(QSqrt(Rational(tsz, 2))));
  }

  // Projections beyond the tensor rank vanish.
  CHECK(spin_me(HalfInt(1), HalfInt(1), {WordOp::S}, HalfInt(2), HalfInt(1),
                HalfInt(-1)) == CQSqrt{});
}

TEST_CASE("rewriting identities between contracted forms") {
  using W = WordOp;
  struct Shape {
    std::vector<WordOp> orbital;
    std::vector<WordOp> spin;
    int tp;
    int tk;
  };
  const std::vector<Shape> shapes = {
      {{W::Rhat}, {W::S}, 1, 1},
      {{W::L}, {W::S}, 1, 1},
      {{W::L}, {W::S}, 3, 3},
      {{W::Rhat}, {W::T}, 2, 0},
      {{W::Rhat}, {W::T}, 0, 2},
      {{W::Rhat}, {W::T}, 3, 1},
      {{W::L}, {W::T}, 1, 3},
      {{W::L, W::L}, {W::S, W::S}, 2, 2},
      {{W::Rhat, W::L}, {W::S, W::S}, 2, 2},
      {{W::Rhat, W::Rhat}, {W::S, W::S}, 2, 2},
      {{W::Rhat, W::L}, {W::T, W::S}, 3, 1},
      {{W::Rhat, W::Rhat}, {W::T, W::S}, 1, 3},
      {{W::L, W::L, W::L}, {W::S, W::S, W::S}, 3, 3},
      {{W::Rhat, W::L, W::L}, {W::S, W::S, W::S}, 3, 3},
      {{W::Rhat, W::Rhat, W::L}, {W::S, W::S, W::S}, 3, 3},
      {{W::Rhat, W::Rhat, W::Rhat}, {W::S, W::S, W::S}, 3, 3},
  };
  const std::vector<std::pair<int, int>> orbitals = {{1, 1}, {2, 1}, {1, 2},
                                                     {2, 2}, {3, 2}};
  for (const Shape& sh : shapes) {
    for (const auto& [lp, l] : orbitals) {
      ContractionCase c;
      c.l_to = lp;
      c.l_from = l;
      c.orbital = sh.orbital;
      c.spin = sh.spin;
      c.s_to = h2(sh.tp);
      c.s_from = h2(sh.tk);
      for (int tlpz = -2 * lp; tlpz <= 2 * lp; tlpz += 2) {
        for (int tlz = -2 * l; tlz <= 2 * l; tlz += 2) {
          for (int tspz = -sh.tp; tspz <= sh.tp; tspz += 2) {
            for (int tsz = -sh.tk; tsz <= sh.tk; tsz += 2) {
              c.lpz = h2(tlpz);
              c.lz = h2(tlz);
              c.spz = h2(tspz);
              c.sz = h2(tsz);
              const auto [first, second] = symtrace_contract_equiv(c);
              CHECK(first == second);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("position versor words contract to scalars") {
  // Summing rhat^i rhat^i over components gives the identity on the same
  // label and zero across labels, exercising the intermediate-path sum.
  for (const auto& [lp, l] : std::vector<std::pair<int, int>>{
           {0, 0}, {1, 1}, {2, 2}, {3, 3}, {2, 0}, {0, 2}, {3, 1}}) {
    const auto blocks =
        word_blocks(HalfInt(lp), {WordOp::Rhat, WordOp::Rhat}, HalfInt(l));
    CMat sum(2 * lp + 1, 2 * l + 1);
    for (int i = 0; i < 3; ++i) sum += blocks[static_cast<std::size_t>(4 * i)];
    if (lp == l)
      CHECK(sum == CMat::identity(2 * l + 1));
    else
      CHECK(sum.is_zero());
  }
}

TEST_CASE("spin operation inputs outside the catalogs are rejected") {
  using W = WordOp;
  CHECK_THROWS_AS(spin_me(HalfInt(2), HalfInt(0), {W::S}, HalfInt(0), HalfInt(2),
                          HalfInt(0)),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(spin_me(h2(1), h2(1), {W::S, W::S, W::S, W::S}, HalfInt(0),
                          h2(1), h2(1)),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(spin_me(h2(1), h2(1), {W::Rhat}, HalfInt(0), h2(1), h2(1)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(spin_me(h2(1), h2(3), {W::S}, HalfInt(0), h2(1), h2(1)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(spin_me(h2(1), h2(1), {W::S}, h2(1), h2(1), h2(1)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(spin_me(HalfInt(1), HalfInt(0), {W::T}, HalfInt(0), HalfInt(1),
                          HalfInt(0), SpinMeRoute::spinor),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(spin_me(h2(3), h2(1), {W::S, W::T}, HalfInt(0), h2(1), h2(1),
                          SpinMeRoute::spinor),
                  UnsupportedCaseError);
  CHECK_THROWS_AS(word_blocks(HalfInt(1), {W::Rhat, W::S}, HalfInt(1)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(word_blocks(h2(1), {W::Rhat}, h2(3)),
                  InvalidQuantumNumbersError);
  CHECK_THROWS_AS(word_blocks(HalfInt(1), {W::S}, h2(1)),
                  InvalidQuantumNumbersError);

  ContractionCase c;
  c.l_to = 1;
  c.l_from = 1;
  c.orbital = {W::Rhat};
  c.spin = {W::S, W::S};
  c.s_to = h2(1);
  c.s_from = h2(1);
  CHECK_THROWS_AS(symtrace_contract_equiv(c), InvalidQuantumNumbersError);
}

}  // TEST_SUITE
