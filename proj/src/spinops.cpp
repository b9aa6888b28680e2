// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/spinops.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>

#include "spincouple/errors.hpp"
#include "spincouple/tensorbasis.hpp"
#include "spincouple/wigner.hpp"

namespace spincouple {

namespace {

bool is_spin_op(WordOp op) { return op == WordOp::T || op == WordOp::S; }
bool is_transition_op(WordOp op) { return op == WordOp::Rhat || op == WordOp::T; }

std::array<CMat, 3> zero_triple(int rows, int cols) {
  return {CMat(rows, cols), CMat(rows, cols), CMat(rows, cols)};
}

/// Component matrices of a vector operator recovered from its reduced
/// matrix element: <j' m'|V^i|j m> = r * sum_mu eps^i(mu)^* cg(j m; 1 mu | j' m').
std::array<CMat, 3> vector_block(const QSqrt& reduced, HalfInt j_to, HalfInt j_from) {
  auto comp = zero_triple(dim_of(j_to), dim_of(j_from));
  if (reduced.is_zero()) return comp;
  for (int tmu = -2; tmu <= 2; tmu += 2) {
    const HalfInt mu = HalfInt::from_twice(tmu);
    const CTensor eps = standard_vector(mu);
    for (int col = 0; col < dim_of(j_from); ++col) {
      const HalfInt m = HalfInt::from_twice(j_from.twice() - 2 * col);
      const HalfInt mp = m + mu;
      if (abs(mp) > j_to) continue;
      const QSqrt c = cg(j_from, m, HalfInt(1), mu, j_to, mp);
      if (c.is_zero()) continue;
      const int row = (j_to.twice() - mp.twice()) / 2;
      const CQSqrt amp{reduced * c};
      for (int i = 0; i < 3; ++i) {
        const CQSqrt e = eps.at({i}).conj();
        if (e.is_zero()) continue;
        comp[i](row, col) += e * amp;
      }
    }
  }
  return comp;
}

std::array<CMat, 3> momentum_block(HalfInt j) {
  if (j.twice() == 0) return zero_triple(1, 1);
  return spin_operator(j).comp;
}

QSqrt hop_reduced(WordOp op, HalfInt to, HalfInt from) {
  if (op == WordOp::T) return redmat_spin_analog({to, from, {WordOp::T}});
  return redmat_r_power(from.to_int(), 1, to.to_int() - from.to_int());
}

struct BlocksKey {
  int t_to;
  int t_from;
  std::vector<int> ops;
  auto operator<=>(const BlocksKey&) const = default;
};

std::map<BlocksKey, std::shared_ptr<const std::vector<CMat>>> g_blocks_cache;
std::mutex g_blocks_mu;

std::vector<CMat> build_word_blocks(HalfInt j_to, const std::vector<WordOp>& word,
                                    HalfInt j_from) {
  const int n = static_cast<int>(word.size());
  int total = 1;
  for (int p = 0; p < n; ++p) total *= 3;
  std::vector<CMat> out(static_cast<std::size_t>(total),
                        CMat(dim_of(j_to), dim_of(j_from)));
  if (n == 0) {
    if (j_to == j_from) out[0] = CMat::identity(dim_of(j_to));
    return out;
  }
  // spaces[n] = j_from, spaces[0] = j_to; word[p] maps spaces[p+1] to spaces[p].
  std::vector<HalfInt> spaces(static_cast<std::size_t>(n) + 1);
  spaces[static_cast<std::size_t>(n)] = j_from;
  auto descend = [&](auto&& self, int p) -> void {
    if (p < 0) {
      if (spaces[0] != j_to) return;
      std::vector<std::array<CMat, 3>> triples;
      triples.reserve(static_cast<std::size_t>(n));
      for (int q = 0; q < n; ++q) {
        const auto to = spaces[static_cast<std::size_t>(q)];
        const auto from = spaces[static_cast<std::size_t>(q) + 1];
        if (is_transition_op(word[static_cast<std::size_t>(q)]))
          triples.push_back(vector_block(
              hop_reduced(word[static_cast<std::size_t>(q)], to, from), to, from));
        else
          triples.push_back(momentum_block(from));
      }
      for (int flat = 0; flat < total; ++flat) {
        int rem = flat;
        std::array<int, 3> digit{0, 0, 0};
        for (int q = n - 1; q >= 0; --q) {
          digit[static_cast<std::size_t>(q)] = rem % 3;
          rem /= 3;
        }
        CMat prod = triples[0][static_cast<std::size_t>(digit[0])];
        for (int q = 1; q < n; ++q)
          prod = prod * triples[static_cast<std::size_t>(q)]
                               [static_cast<std::size_t>(digit[static_cast<std::size_t>(q)])];
        out[static_cast<std::size_t>(flat)] += prod;
      }
      return;
    }
    const auto up = static_cast<std::size_t>(p);
    if (!is_transition_op(word[up])) {
      spaces[up] = spaces[up + 1];
      self(self, p - 1);
      return;
    }
    for (int step = -1; step <= 1; step += 2) {
      const HalfInt target = spaces[up + 1] + HalfInt::from_twice(2 * step);
      if (target.twice() < 0) continue;
      spaces[up] = target;
      self(self, p - 1);
    }
  };
  descend(descend, n - 1);
  return out;
}

void validate_word_spaces(HalfInt j_to, const std::vector<WordOp>& word,
                          HalfInt j_from) {
  if (j_to.twice() < 0 || j_from.twice() < 0)
    throw InvalidQuantumNumbersError("operator word blocks need non-negative labels");
  bool spin = false;
  bool orbital = false;
  for (WordOp op : word) (is_spin_op(op) ? spin : orbital) = true;
  if (spin && orbital)
    throw InvalidQuantumNumbersError("operator word mixes orbital and spin factors");
  if (orbital && !(j_to.is_integer() && j_from.is_integer()))
    throw InvalidQuantumNumbersError("orbital operator words need integer labels");
  if ((j_to - j_from).is_integer() != true)
    throw InvalidQuantumNumbersError(
        "operator words cannot connect integer and half-odd labels");
}

std::shared_ptr<const std::vector<CMat>> word_blocks_ref(
    HalfInt j_to, const std::vector<WordOp>& word, HalfInt j_from) {
  BlocksKey key{j_to.twice(), j_from.twice(), {}};
  key.ops.reserve(word.size());
  for (WordOp op : word) key.ops.push_back(static_cast<int>(op));
  {
    std::lock_guard<std::mutex> lock(g_blocks_mu);
    if (auto it = g_blocks_cache.find(key); it != g_blocks_cache.end())
      return it->second;
  }
  auto built = std::make_shared<const std::vector<CMat>>(
      build_word_blocks(j_to, word, j_from));
  std::lock_guard<std::mutex> lock(g_blocks_mu);
  return g_blocks_cache.try_emplace(key, std::move(built)).first->second;
}

const CQSqrt& minus_i() {
  static const CQSqrt v{QSqrt{}, QSqrt(Rational(-1))};
  return v;
}

CQSqrt spin_me_spinor(HalfInt s_to, HalfInt spz, const std::vector<WordOp>& word,
                      HalfInt m, HalfInt s_from, HalfInt sz) {
  const int tp = s_to.twice();
  const int tk = s_from.twice();
  const int n = static_cast<int>(word.size());
  if (n == 0) {
    if (s_to == s_from && spz == sz && m.twice() == 0) return CQSqrt(QSqrt(Rational(1)));
    return {};
  }
  // Leading T factors; anything after them must be S.
  int n_t = 0;
  while (n_t < n && word[static_cast<std::size_t>(n_t)] == WordOp::T) ++n_t;
  for (int q = n_t; q < n; ++q)
    if (word[static_cast<std::size_t>(q)] != WordOp::S)
      throw UnsupportedCaseError(
          "spinor closed forms keep transition factors before spin factors");
  const CTensor eps = standard_tensor(n, m);
  const auto& sigma = pauli_matrices();
  CQSqrt val;
  const auto word_is = [&](int t_count, int s_count) {
    return n_t == t_count && n - n_t == s_count;
  };
  if (tp == 1 && tk == 1 && word_is(0, 1)) {
    const SpinorTensor bra = standard_spinor(0, spz);
    const SpinorTensor ket = standard_spinor(0, sz);
    for (int h = 0; h < 3; ++h)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          val += eps.at({h}).conj() * bra.at({a}).conj() * sigma[static_cast<std::size_t>(h)](a, b) *
                 ket.at({b});
    return val * CQSqrt(QSqrt(Rational(1, 2)));
  }
  if (tp == 2 && tk == 2 && word_is(0, 1)) {
    const CTensor levi = levi_civita();
    const CTensor bra = standard_vector(spz);
    const CTensor ket = standard_vector(sz);
    for (int h = 0; h < 3; ++h)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          const CQSqrt& lv = levi.at({h, p, q});
          if (lv.is_zero()) continue;
          val += eps.at({h}).conj() * lv * bra.at({p}).conj() * ket.at({q});
        }
    return val * minus_i();
  }
  if (tp == 2 && tk == 2 && word_is(0, 2)) {
    const CTensor bra = standard_vector(spz);
    const CTensor ket = standard_vector(sz);
    for (int h1 = 0; h1 < 3; ++h1)
      for (int h2 = 0; h2 < 3; ++h2)
        val += eps.at({h1, h2}).conj() * bra.at({h1}).conj() * ket.at({h2});
    return -val;
  }
  if (tp == 3 && tk == 3 && word_is(0, 1)) {
    const SpinorTensor bra = standard_spinor(1, spz);
    const SpinorTensor ket = standard_spinor(1, sz);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            val += eps.at({k}).conj() * bra.at({i, a}).conj() *
                   sigma[static_cast<std::size_t>(k)](a, b) * ket.at({i, b});
    return val * CQSqrt(QSqrt(Rational(3, 2)));
  }
  if (tp == 3 && tk == 3 && word_is(0, 2)) {
    const SpinorTensor bra = standard_spinor(1, spz);
    const SpinorTensor ket = standard_spinor(1, sz);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 2; ++a)
          val += eps.at({i, j}).conj() * bra.at({i, a}).conj() * ket.at({j, a});
    return val * CQSqrt(QSqrt(Rational(-3)));
  }
  if (tp == 3 && tk == 3 && word_is(0, 3)) {
    const SpinorTensor bra = standard_spinor(1, spz);
    const SpinorTensor ket = standard_spinor(1, sz);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              val += eps.at({i, j, k}).conj() * bra.at({i, a}).conj() *
                     sigma[static_cast<std::size_t>(j)](a, b) * ket.at({k, b});
    return val * CQSqrt(QSqrt(Rational(-3, 2)));
  }
  if (tp == 2 && tk == 0 && word_is(1, 0)) {
    const CTensor bra = standard_vector(spz);
    for (int h = 0; h < 3; ++h) val += eps.at({h}).conj() * bra.at({h}).conj();
    return val * CQSqrt(QSqrt::sqrt_of_rational(Rational(1, 3)));
  }
  if (tp == 0 && tk == 2 && word_is(1, 0)) {
    const CTensor ket = standard_vector(sz);
    for (int h = 0; h < 3; ++h) val += eps.at({h}).conj() * ket.at({h});
    return val * CQSqrt(QSqrt::sqrt_of_rational(Rational(1, 3)));
  }
  if (tp == 3 && tk == 1 && word_is(1, 0)) {
    const SpinorTensor bra = standard_spinor(1, spz);
    const SpinorTensor ket = standard_spinor(0, sz);
    for (int h = 0; h < 3; ++h)
      for (int a = 0; a < 2; ++a)
        val += eps.at({h}).conj() * bra.at({h, a}).conj() * ket.at({a});
    return val * CQSqrt(QSqrt::sqrt_of_rational(Rational(3, 8)));
  }
  if (tp == 1 && tk == 3 && word_is(1, 0)) {
    const SpinorTensor bra = standard_spinor(0, spz);
    const SpinorTensor ket = standard_spinor(1, sz);
    for (int h = 0; h < 3; ++h)
      for (int a = 0; a < 2; ++a)
        val += eps.at({h}).conj() * bra.at({a}).conj() * ket.at({h, a});
    return val * CQSqrt(QSqrt::sqrt_of_rational(Rational(3, 8)));
  }
  if (tp == 3 && tk == 1 && word_is(1, 1)) {
    const SpinorTensor bra = standard_spinor(1, spz);
    const SpinorTensor ket = standard_spinor(0, sz);
    for (int h1 = 0; h1 < 3; ++h1)
      for (int h2 = 0; h2 < 3; ++h2)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            val += eps.at({h1, h2}).conj() * bra.at({h1, a}).conj() *
                   sigma[static_cast<std::size_t>(h2)](a, b) * ket.at({b});
    return val * CQSqrt(QSqrt::sqrt_of_rational(Rational(3, 32)));
  }
  if (tp == 1 && tk == 3 && word_is(1, 1)) {
    const SpinorTensor bra = standard_spinor(0, spz);
    const SpinorTensor ket = standard_spinor(1, sz);
    for (int h1 = 0; h1 < 3; ++h1)
      for (int h2 = 0; h2 < 3; ++h2)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            val += eps.at({h1, h2}).conj() * bra.at({a}).conj() *
                   sigma[static_cast<std::size_t>(h2)](a, b) * ket.at({h1, b});
    return val * CQSqrt(QSqrt::sqrt_of_rational(Rational(3, 32)));
  }
  throw UnsupportedCaseError("no spinor closed form for this spin pair and word");
}

}  // namespace

TMatrix t_matrix(HalfInt s_to, HalfInt s_from) {
  if (s_to.twice() < 0 || s_from.twice() < 0)
    throw InvalidQuantumNumbersError("spins must be non-negative");
  TMatrix t{s_from, s_to, zero_triple(dim_of(s_to), dim_of(s_from))};
  if (abs(s_to - s_from) != HalfInt(1)) return t;
  t.comp = vector_block(redmat_spin_analog({s_to, s_from, {WordOp::T}}), s_to, s_from);
  return t;
}

std::vector<CMat> word_blocks(HalfInt j_to, const std::vector<WordOp>& word,
                              HalfInt j_from) {
  validate_word_spaces(j_to, word, j_from);
  return *word_blocks_ref(j_to, word, j_from);
}

CQSqrt spin_me(HalfInt s_to, HalfInt spz, const std::vector<WordOp>& word,
               HalfInt m, HalfInt s_from, HalfInt sz, SpinMeRoute route) {
  if (s_to.twice() < 0 || s_from.twice() < 0 || !valid_jm(s_to, spz) ||
      !valid_jm(s_from, sz))
    throw InvalidQuantumNumbersError("spin matrix element needs valid projections");
  if (!m.is_integer())
    throw InvalidQuantumNumbersError("tensor projection must be an integer");
  for (WordOp op : word)
    if (!is_spin_op(op))
      throw InvalidQuantumNumbersError("spin matrix elements take words over {T, S}");
  if (s_to.twice() > 3 || s_from.twice() > 3)
    throw UnsupportedCaseError("spin matrix elements are kept for spins up to 3/2");
  if (word.size() > 3)
    throw UnsupportedCaseError("spin words are kept to length at most 3");
  const int n = static_cast<int>(word.size());
  if (route == SpinMeRoute::spinor) return spin_me_spinor(s_to, spz, word, m, s_from, sz);
  if (std::abs(m.twice()) > 2 * n) return {};
  if (n == 0) {
    if (s_to == s_from && spz == sz) return CQSqrt(QSqrt(Rational(1)));
    return {};
  }
  const auto blocks = word_blocks_ref(s_to, word, s_from);
  const CTensor eps = standard_tensor(n, m);
  const int row = (s_to.twice() - spz.twice()) / 2;
  const int col = (s_from.twice() - sz.twice()) / 2;
  CQSqrt val;
  for (std::size_t flat = 0; flat < blocks->size(); ++flat) {
    const CQSqrt& b = (*blocks)[flat](row, col);
    if (b.is_zero()) continue;
    val += eps[flat].conj() * b;
  }
  return val;
}

std::pair<CQSqrt, CQSqrt> symtrace_contract_equiv(const ContractionCase& c) {
  const int n = static_cast<int>(c.orbital.size());
  if (c.spin.size() != c.orbital.size())
    throw InvalidQuantumNumbersError("the rewriting identity pairs words of equal length");
  if (n < 1 || n > 3)
    throw UnsupportedCaseError("rewriting identities are kept for ranks 1 to 3");
  for (WordOp op : c.orbital)
    if (is_spin_op(op))
      throw InvalidQuantumNumbersError("the orbital word must use {Rhat, L}");
  for (WordOp op : c.spin)
    if (!is_spin_op(op))
      throw InvalidQuantumNumbersError("the spin word must use {T, S}");
  if (c.l_to < 0 || c.l_from < 0 || !valid_jm(HalfInt(c.l_to), c.lpz) ||
      !valid_jm(HalfInt(c.l_from), c.lz))
    throw InvalidQuantumNumbersError("orbital labels or projections out of range");
  if (c.s_to.twice() < 0 || c.s_from.twice() < 0 || !valid_jm(c.s_to, c.spz) ||
      !valid_jm(c.s_from, c.sz))
    throw InvalidQuantumNumbersError("spin labels or projections out of range");

  const auto orb = word_blocks_ref(HalfInt(c.l_to), c.orbital, HalfInt(c.l_from));
  const auto spn = word_blocks_ref(c.s_to, c.spin, c.s_from);
  const int orow = c.l_to - c.lpz.to_int();
  const int ocol = c.l_from - c.lz.to_int();
  const int srow = (c.s_to.twice() - c.spz.twice()) / 2;
  const int scol = (c.s_from.twice() - c.sz.twice()) / 2;

  const HalfInt dlz = c.lpz - c.lz;
  const CTensor eps = standard_tensor(n, dlz);
  CQSqrt orbital_part;
  for (std::size_t flat = 0; flat < orb->size(); ++flat) {
    const CQSqrt& o = (*orb)[flat](orow, ocol);
    if (o.is_zero()) continue;
    orbital_part += eps[flat] * o;
  }
  const CQSqrt first =
      orbital_part * spin_me(c.s_to, c.spz, c.spin, dlz, c.s_from, c.sz);

  const CTensor x = sym_projector(n);
  const std::size_t total = orb->size();
  CQSqrt second;
  for (std::size_t a = 0; a < total; ++a) {
    const CQSqrt& o = (*orb)[a](orow, ocol);
    if (o.is_zero()) continue;
    for (std::size_t b = 0; b < total; ++b) {
      const CQSqrt& w = (*spn)[b](srow, scol);
      if (w.is_zero()) continue;
      const CQSqrt& xv = x[a * total + b];
      if (xv.is_zero()) continue;
      second += xv * o * w;
    }
  }
  return {first, second};
}

}  // namespace spincouple
