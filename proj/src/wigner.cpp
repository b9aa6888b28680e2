// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#include "spincouple/wigner.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <list>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace spincouple {
namespace {

// ---------------------------------------------------------------------------
// Prime and factorial-exponent tables.
//
// Every factorial is kept as its vector of prime exponents (Legendre's
// formula), so products and quotients of factorials are integer vector sums.
// The square root of the assembled quotient then splits into the even part
// (a rational) and the product of odd-exponent primes, which is square-free
// by construction and needs no factorization.
// ---------------------------------------------------------------------------

struct Tables {
  int limit = 0;                            // largest tabulated integer
  std::vector<int32_t> primes;              // primes <= limit, ascending
  std::vector<int32_t> spf;                 // smallest prime factor, [0..limit]
  std::vector<int32_t> pidx;                // index into primes, -1 if composite
  std::vector<int32_t> picount;             // #primes <= n, [0..limit]
  std::vector<std::vector<int32_t>> fact;   // fact[n][i]: exponent of primes[i] in n!
};

std::shared_mutex g_table_mu;
Tables g_tables;

// Rebuilds the tables up to at least `need`; caller holds the unique lock.
void grow_tables(Tables& t, int need) {
  int lim = std::max({2 * t.limit, need, 512});
  t.limit = lim;
  t.spf.assign(lim + 1, 0);
  t.primes.clear();
  t.pidx.assign(lim + 1, -1);
  t.picount.assign(lim + 1, 0);
  for (int p = 2; p <= lim; ++p) {
    if (t.spf[p] == 0) {
      t.pidx[p] = int32_t(t.primes.size());
      t.primes.push_back(p);
      for (long long q = p; q <= lim; q += p)
        if (t.spf[q] == 0) t.spf[q] = p;
    }
    t.picount[p] = int32_t(t.primes.size());
  }
  t.fact.assign(lim + 1, {});
  for (int n = 2; n <= lim; ++n) {
    auto& v = t.fact[n];
    v = t.fact[n - 1];
    v.resize(t.picount[n], 0);
    for (int q = n; q > 1; q /= t.spf[q]) ++v[t.pidx[t.spf[q]]];
  }
}

void ensure_tables(int need) {
  {
    std::shared_lock lk(g_table_mu);
    if (g_tables.limit >= need) return;
  }
  std::unique_lock lk(g_table_mu);
  if (g_tables.limit < need) grow_tables(g_tables, need);
}

std::vector<int32_t>& exp_workspace() {
  thread_local std::vector<int32_t> w;
  return w;
}

// Adds s times the exponent vector of n! into w.
void add_fact(std::vector<int32_t>& w, const Tables& t, int n, int s) {
  const auto& f = t.fact[n];
  for (std::size_t i = 0; i < f.size(); ++i) w[i] += s * f[i];
}

// Adds s times the exponent vector of the integer v >= 1 into w.
void add_int(std::vector<int32_t>& w, const Tables& t, int v, int s) {
  for (int q = v; q > 1; q /= t.spf[q]) w[t.pidx[t.spf[q]]] += s;
}

Int int128_to_int(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 uv = neg ? ~static_cast<unsigned __int128>(v) + 1
                             : static_cast<unsigned __int128>(v);
  Int r = Int(std::uint64_t(uv >> 64));
  r <<= 64;
  r += std::uint64_t(uv);
  return neg ? Int(-r) : r;
}

// Exact alternating sum 1 - r0 (1 - r1 (1 - ...)) with rj = nums[j]/dens[j],
// evaluated by a gcd-free Horner ladder.  The 128-bit path covers every sum
// whose intermediate sizes provably fit; longer ladders fall back to big
// integers.
Rational alternating_sum(const long long* nums, const long long* dens, int m) {
  if (m == 0) return Rational(1);
  int bits = 0;
  for (int j = 0; j < m; ++j)
    bits += std::bit_width(std::uint64_t(std::max(nums[j], dens[j]))) + 1;
  if (bits <= 120) {
    __int128 num = 1, den = 1;
    for (int j = m - 1; j >= 0; --j) {
      const __int128 nn = dens[j] * den - nums[j] * num;
      den = dens[j] * den;
      num = nn;
    }
    return Rational(int128_to_int(num), int128_to_int(den));
  }
  Int num = 1, den = 1;
  for (int j = m - 1; j >= 0; --j) {
    Int nn = dens[j] * den - nums[j] * num;
    den *= dens[j];
    num = std::move(nn);
  }
  return Rational(num, den);
}

std::vector<long long>& num_workspace() {
  thread_local std::vector<long long> v;
  return v;
}
std::vector<long long>& den_workspace() {
  thread_local std::vector<long long> v;
  return v;
}

// Turns the accumulated exponent vector w, the alternating sum S and the
// overall sign into the canonical  c * sqrt(d): the even part of each
// exponent joins the rational coefficient, each odd-exponent prime joins the
// radicand.
QSqrt assemble(const Tables& t, const std::vector<int32_t>& w, const Rational& s, bool negate) {
  Int cnum = 1, cden = 1, rad = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int e = w[i];
    if (e == 0) continue;
    const int p = t.primes[i];
    const int half = (e >= 0) ? e / 2 : -((-e + 1) / 2);
    if (e - 2 * half == 1) rad *= p;
    for (int k = 0; k < half; ++k) cnum *= p;
    for (int k = 0; k > half; --k) cden *= p;
  }
  Rational coef(cnum, cden);
  coef *= s;
  if (negate) coef = -coef;
  return QSqrt::from_parts(coef, rad);
}

// Racah's single-sum form of the CG coefficient, on prime-exponent vectors.
// All arguments are doubled values; selection rules are already checked.
QSqrt cg_kernel(const Tables& t, int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
  const int a = (tj1 + tj2 - tj) / 2;
  const int b = (tj1 - tj2 + tj) / 2;
  const int c = (-tj1 + tj2 + tj) / 2;
  const int perim = (tj1 + tj2 + tj) / 2 + 1;
  const int a1 = (tj1 + tm1) / 2, a2 = (tj1 - tm1) / 2;
  const int b1 = (tj2 + tm2) / 2, b2 = (tj2 - tm2) / 2;
  const int c1 = (tj + tm) / 2, c2 = (tj - tm) / 2;
  const int x1 = (tj - tj2 + tm1) / 2;
  const int x2 = (tj - tj1 - tm2) / 2;
  const int kmin = std::max({0, -x1, -x2});
  const int kmax = std::min({a, a2, b1});
  if (kmax < kmin) return {};

  const int m = kmax - kmin;
  auto& nums = num_workspace();
  auto& dens = den_workspace();
  nums.resize(std::size_t(m));
  dens.resize(std::size_t(m));
  for (int j = 0; j < m; ++j) {
    const int k = kmin + j;
    nums[std::size_t(j)] = 1LL * (a - k) * (a2 - k) * (b1 - k);
    dens[std::size_t(j)] = 1LL * (k + 1) * (x1 + k + 1) * (x2 + k + 1);
  }
  const Rational s = alternating_sum(nums.data(), dens.data(), m);
  if (s == 0) return {};

  auto& w = exp_workspace();
  w.assign(std::size_t(t.picount[perim]), 0);
  add_fact(w, t, a, 1);
  add_fact(w, t, b, 1);
  add_fact(w, t, c, 1);
  add_fact(w, t, perim, -1);
  add_fact(w, t, a1, 1);
  add_fact(w, t, a2, 1);
  add_fact(w, t, b1, 1);
  add_fact(w, t, b2, 1);
  add_fact(w, t, c1, 1);
  add_fact(w, t, c2, 1);
  add_int(w, t, tj + 1, 1);
  add_fact(w, t, kmin, -2);
  add_fact(w, t, a - kmin, -2);
  add_fact(w, t, a2 - kmin, -2);
  add_fact(w, t, b1 - kmin, -2);
  add_fact(w, t, x1 + kmin, -2);
  add_fact(w, t, x2 + kmin, -2);
  return assemble(t, w, s, kmin & 1);
}

// Racah's single-sum form of the 6-j symbol, on prime-exponent vectors.
// Arguments are doubled values; the four triads are already validated.
QSqrt sixj_kernel(const Tables& t, int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
  const int s1 = (tj1 + tj2 + tj3) / 2;
  const int s2 = (tj1 + tj5 + tj6) / 2;
  const int s3 = (tj4 + tj2 + tj6) / 2;
  const int s4 = (tj4 + tj5 + tj3) / 2;
  const int q1 = (tj1 + tj2 + tj4 + tj5) / 2;
  const int q2 = (tj2 + tj3 + tj5 + tj6) / 2;
  const int q3 = (tj3 + tj1 + tj6 + tj4) / 2;
  const int tmin = std::max({s1, s2, s3, s4});
  const int tmax = std::min({q1, q2, q3});
  if (tmax < tmin) return {};

  const int m = tmax - tmin;
  auto& nums = num_workspace();
  auto& dens = den_workspace();
  nums.resize(std::size_t(m));
  dens.resize(std::size_t(m));
  for (int j = 0; j < m; ++j) {
    const int u = tmin + j;
    nums[std::size_t(j)] = 1LL * (u + 2) * (q1 - u) * (q2 - u) * (q3 - u);
    dens[std::size_t(j)] = 1LL * (u + 1 - s1) * (u + 1 - s2) * (u + 1 - s3) * (u + 1 - s4);
  }
  const Rational s = alternating_sum(nums.data(), dens.data(), m);
  if (s == 0) return {};

  auto& w = exp_workspace();
  w.assign(std::size_t(t.picount[tmin + 1]), 0);
  const auto triad = [&](int ta, int tb, int tc) {
    add_fact(w, t, (ta + tb - tc) / 2, 1);
    add_fact(w, t, (ta - tb + tc) / 2, 1);
    add_fact(w, t, (-ta + tb + tc) / 2, 1);
    add_fact(w, t, (ta + tb + tc) / 2 + 1, -1);
  };
  triad(tj1, tj2, tj3);
  triad(tj1, tj5, tj6);
  triad(tj4, tj2, tj6);
  triad(tj4, tj5, tj3);
  add_fact(w, t, tmin + 1, 2);
  add_fact(w, t, tmin - s1, -2);
  add_fact(w, t, tmin - s2, -2);
  add_fact(w, t, tmin - s3, -2);
  add_fact(w, t, tmin - s4, -2);
  add_fact(w, t, q1 - tmin, -2);
  add_fact(w, t, q2 - tmin, -2);
  add_fact(w, t, q3 - tmin, -2);
  return assemble(t, w, s, tmin & 1);
}

// ---------------------------------------------------------------------------
// Bounded LRU memo shared by cg and sixj.
// ---------------------------------------------------------------------------

struct MemoKey {
  std::array<int32_t, 7> v;  // six doubled arguments plus a kind tag
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (int32_t x : k.v) {
      h ^= std::uint64_t(std::uint32_t(x));
      h *= 1099511628211ULL;
    }
    return std::size_t(h);
  }
};

class CouplingMemo {
public:
  CouplingMemo() : cap_(initial_capacity()) {}

  bool lookup(const MemoKey& k, QSqrt& out) {
    std::lock_guard lk(mu_);
    auto it = index_.find(k);
    if (it == index_.end()) return false;
    order_.splice(order_.begin(), order_, it->second);
    out = it->second->second;
    return true;
  }

  void insert(const MemoKey& k, const QSqrt& value) {
    std::lock_guard lk(mu_);
    if (cap_ == 0) return;
    if (index_.contains(k)) return;
    order_.emplace_front(k, value);
    index_.emplace(k, order_.begin());
    while (index_.size() > cap_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }

  std::size_t capacity() {
    std::lock_guard lk(mu_);
    return cap_;
  }

  void set_capacity(std::size_t cap) {
    std::lock_guard lk(mu_);
    cap_ = cap;
    while (index_.size() > cap_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }

  void clear() {
    std::lock_guard lk(mu_);
    index_.clear();
    order_.clear();
  }

private:
  static std::size_t initial_capacity() {
    if (const char* env = std::getenv("SPINCOUPLE_CACHE")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0') return std::size_t(v);
    }
    return std::size_t(1) << 20;
  }

  std::mutex mu_;
  std::size_t cap_;
  std::list<std::pair<MemoKey, QSqrt>> order_;
  std::unordered_map<MemoKey, std::list<std::pair<MemoKey, QSqrt>>::iterator, MemoKeyHash> index_;
};

CouplingMemo& memo() {
  static CouplingMemo m;
  return m;
}

}  // namespace

bool valid_jm(HalfInt j, HalfInt m) {
  return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() &&
         (j.twice() - m.twice()) % 2 == 0;
}

bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  return tc >= std::abs(ta - tb) && tc <= ta + tb;
}

QSqrt cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
  if (m1 + m2 != m) return {};
  if (!valid_jm(j1, m1) || !valid_jm(j2, m2) || !valid_jm(j, m)) return {};
  if (!triangle(j1, j2, j)) return {};
  const MemoKey key{{j1.twice(), m1.twice(), j2.twice(), m2.twice(), j.twice(), 0, 0}};
  QSqrt r;
  if (memo().lookup(key, r)) return r;
  ensure_tables(std::max((j1.twice() + j2.twice() + j.twice()) / 2 + 1, j.twice() + 1));
  {
    std::shared_lock lk(g_table_mu);
    r = cg_kernel(g_tables, j1.twice(), m1.twice(), j2.twice(), m2.twice(), j.twice(),
                  m.twice());
  }
  memo().insert(key, r);
  return r;
}

QSqrt sixj(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) ||
      !triangle(j4, j5, j3))
    return {};
  const MemoKey key{
      {j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(), j6.twice(), 1}};
  QSqrt r;
  if (memo().lookup(key, r)) return r;
  const int q1 = (j1.twice() + j2.twice() + j4.twice() + j5.twice()) / 2;
  const int q2 = (j2.twice() + j3.twice() + j5.twice() + j6.twice()) / 2;
  const int q3 = (j3.twice() + j1.twice() + j6.twice() + j4.twice()) / 2;
  ensure_tables(std::max({q1, q2, q3}) + 2);
  {
    std::shared_lock lk(g_table_mu);
    r = sixj_kernel(g_tables, j1.twice(), j2.twice(), j3.twice(), j4.twice(), j5.twice(),
                    j6.twice());
  }
  memo().insert(key, r);
  return r;
}

std::pair<QSqrt, QSqrt> recouple_check(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                                       HalfInt j3, HalfInt m3, HalfInt jp,
                                       HalfInt j, HalfInt m) {
  const QSqrt lhs = cg(j1, m1, j2, m2, jp, m1 + m2) * cg(jp, m1 + m2, j3, m3, j, m);
  QSqrt rhs;
  const HalfInt mpp = m2 + m3;
  for (HalfInt jpp = abs(j2 - j3); jpp <= j2 + j3; jpp += HalfInt(1)) {
    const QSqrt prod = cg(j1, m1, jpp, mpp, j, m) * cg(j2, m2, j3, m3, jpp, mpp);
    if (prod.is_zero()) continue;
    const QSqrt dims =
        QSqrt::sqrt_of_rational(Rational(Int(dim_of(jp)) * Int(dim_of(jpp))));
    rhs += dims * sixj(j1, j2, jp, j3, j, jpp) * prod;
  }
  if (!rhs.is_zero() && parity(j1 + j2 + j3 + j) < 0) rhs = -rhs;
  return {lhs, rhs};
}

void set_coupling_cache_capacity(std::size_t entries) { memo().set_capacity(entries); }

std::size_t coupling_cache_capacity() { return memo().capacity(); }

void clear_coupling_cache() { memo().clear(); }

}  // namespace spincouple
