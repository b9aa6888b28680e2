// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spincouple/cgfactor.hpp"
#include "spincouple/projector.hpp"
#include "spincouple/ratpoly.hpp"
#include "spincouple/redmat.hpp"
#include "spincouple/spinops.hpp"
#include "spincouple/tensorbasis.hpp"
#include "spincouple/wigner.hpp"

namespace spincouple {

namespace {

using Cplx = std::complex<double>;

constexpr double kFourPi = 4.0 * std::numbers::pi;

HalfInt h2(int twice) { return HalfInt::from_twice(twice); }

constexpr int pow3(int n) { return n == 0 ? 1 : 3 * pow3(n - 1); }

CQSqrt cr(const Rational& r) { return CQSqrt(QSqrt(r)); }

int levi(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

template <typename... Args>
std::string cat(Args&&... args) {
    std::ostringstream out;
    (out << ... << args);
    return out.str();
}

std::string cq_str(const CQSqrt& v) {
    if (v.is_real()) return v.re.str();
    return cat(v.re.str(), " + i (", v.im.str(), ")");
}

/// Collects per-identity tallies and the first few counterexamples.
class Recorder {
public:
    explicit Recorder(SuiteReport& report) : report_(report) {}

    void pass(const std::string& identity) { tally(identity).checked += 1; }

    void fail(const std::string& identity, std::string inputs, std::string detail) {
        IdentityTally& t = tally(identity);
        t.checked += 1;
        t.failed += 1;
        if (report_.failures.size() < SuiteReport::kMaxFailures)
            report_.failures.push_back(
                {identity, std::move(inputs), std::move(detail)});
    }

private:
    IdentityTally& tally(const std::string& identity) {
        for (IdentityTally& t : report_.identities)
            if (t.identity == identity) return t;
        report_.identities.push_back({identity, 0, 0});
        return report_.identities.back();
    }

    SuiteReport& report_;
};

std::array<double, 3> random_direction(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    while (true) {
        const std::array<double, 3> v{g(rng), g(rng), g(rng)};
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (n > 0.1) return {v[0] / n, v[1] / n, v[2] / n};
    }
}

// ---------------------------------------------------------------------------
// coupling coefficients and recoupling

void suite_wigner(Recorder& rec, std::uint64_t seed, const CheckScale& scale) {
    for (int tj1 = 0; tj1 <= 4; ++tj1)
        for (int tj2 = 0; tj2 <= 4; ++tj2) {
            for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2)
                for (int tjp = std::abs(tj1 - tj2); tjp <= tj1 + tj2; tjp += 2)
                    for (int tm = -std::min(tj, tjp); tm <= std::min(tj, tjp);
                         tm += 2) {
                        QSqrt sum;
                        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                            const int tm2 = tm - tm1;
                            if (std::abs(tm2) > tj2) continue;
                            sum += cg(h2(tj1), h2(tm1), h2(tj2), h2(tm2), h2(tj),
                                      h2(tm)) *
                                   cg(h2(tj1), h2(tm1), h2(tj2), h2(tm2), h2(tjp),
                                      h2(tm));
                        }
                        const QSqrt want(tj == tjp ? 1 : 0);
                        if (sum == want)
                            rec.pass("coupling orthogonality");
                        else
                            rec.fail("coupling orthogonality",
                                     cat("2(j1 j2 j j' m) = ", tj1, " ", tj2, " ",
                                         tj, " ", tjp, " ", tm),
                                     cat("sum = ", sum.str(), ", want ",
                                         want.str()));
                    }
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                for (int tm1p = -tj1; tm1p <= tj1; tm1p += 2)
                    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                        const int tm2p = tm1 + tm2 - tm1p;
                        if (std::abs(tm2p) > tj2) continue;
                        QSqrt sum;
                        for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2;
                             tj += 2)
                            sum += cg(h2(tj1), h2(tm1), h2(tj2), h2(tm2), h2(tj),
                                      h2(tm1 + tm2)) *
                                   cg(h2(tj1), h2(tm1p), h2(tj2), h2(tm2p),
                                      h2(tj), h2(tm1 + tm2));
                        const QSqrt want(tm1 == tm1p ? 1 : 0);
                        if (sum == want)
                            rec.pass("coupling completeness");
                        else
                            rec.fail("coupling completeness",
                                     cat("2(j1 j2 m1 m1' m2) = ", tj1, " ", tj2,
                                         " ", tm1, " ", tm1p, " ", tm2),
                                     cat("sum = ", sum.str(), ", want ",
                                         want.str()));
                    }
        }

    for (int tj1 = 0; tj1 <= 4; ++tj1)
        for (int tj2 = 0; tj2 <= 4; ++tj2)
            for (int tj = std::abs(tj1 - tj2); tj <= tj1 + tj2; tj += 2)
                for (int tm = -tj; tm <= tj; tm += 2)
                    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                        const int tm2 = tm - tm1;
                        if (std::abs(tm2) > tj2) continue;
                        const QSqrt lhs =
                            cg(h2(tj1), h2(tm1), h2(tj2), h2(tm2), h2(tj), h2(tm));
                        QSqrt rhs =
                            cg(h2(tj2), h2(tm2), h2(tj1), h2(tm1), h2(tj), h2(tm));
                        if (((tj1 + tj2 - tj) / 2) % 2 != 0) rhs = -rhs;
                        if (lhs == rhs)
                            rec.pass("exchange symmetry");
                        else
                            rec.fail("exchange symmetry",
                                     cat("2(j1 m1 j2 m2 j m) = ", tj1, " ", tm1,
                                         " ", tj2, " ", tm2, " ", tj, " ", tm),
                                     cat("lhs = ", lhs.str(), ", rhs = ",
                                         rhs.str()));
                    }

    std::mt19937_64 rng(seed);
    int tested = 0;
    while (tested < scale.recoupling_tuples) {
        const int tj1 = int(rng() % 9), tj2 = int(rng() % 9), tj3 = int(rng() % 9);
        const int np = int(rng() % (std::size_t(std::min(tj1, tj2)) + 1));
        const int tjp = std::abs(tj1 - tj2) + 2 * np;
        const int nj = int(rng() % (std::size_t(std::min(tjp, tj3)) + 1));
        const int tj = std::abs(tjp - tj3) + 2 * nj;
        const int tm1 = -tj1 + 2 * int(rng() % (std::size_t(tj1) + 1));
        const int tm2 = -tj2 + 2 * int(rng() % (std::size_t(tj2) + 1));
        const int tm3 = -tj3 + 2 * int(rng() % (std::size_t(tj3) + 1));
        const int tm = tm1 + tm2 + tm3;
        if (std::abs(tm) > tj) continue;
        const auto [lhs, rhs] = recouple_check(h2(tj1), h2(tm1), h2(tj2), h2(tm2),
                                               h2(tj3), h2(tm3), h2(tjp), h2(tj),
                                               h2(tm));
        if (lhs == rhs)
            rec.pass("recoupling consistency");
        else
            rec.fail("recoupling consistency",
                     cat("2(j1 m1 j2 m2 j3 m3 j12 j m) = ", tj1, " ", tm1, " ",
                         tj2, " ", tm2, " ", tj3, " ", tm3, " ", tjp, " ", tj,
                         " ", tm),
                     cat("lhs = ", lhs.str(), ", rhs = ", rhs.str()));
        ++tested;
    }

    for (int ta = 0; ta <= 8; ++ta)
        for (int tb = 0; tb <= 8; ++tb)
            for (int tc = std::abs(ta - tb); tc <= ta + tb; tc += 2) {
                const QSqrt value = sixj(h2(ta), h2(tb), h2(tc), HalfInt(0),
                                         h2(tc), h2(tb));
                QSqrt expect = QSqrt::sqrt_of_rational(
                    Rational(1, Int(tb + 1) * Int(tc + 1)));
                if (((ta + tb + tc) / 2) % 2 != 0) expect = -expect;
                if (value == expect)
                    rec.pass("vanishing argument reduction");
                else
                    rec.fail("vanishing argument reduction",
                             cat("2(a b c) = ", ta, " ", tb, " ", tc),
                             cat("value = ", value.str(), ", want ",
                                 expect.str()));
            }

    tested = 0;
    while (tested < 100) {
        const int ta = int(rng() % 7), tb = int(rng() % 7), td = int(rng() % 7);
        const int nc = int(rng() % (std::size_t(std::min(ta, tb)) + 1));
        const int tc = std::abs(ta - tb) + 2 * nc;
        const int ne = int(rng() % (std::size_t(std::min(td, tc)) + 1));
        const int te = std::abs(td - tc) + 2 * ne;
        const int tf_lo = std::max(std::abs(ta - te), std::abs(td - tb));
        const int tf_hi = std::min(ta + te, td + tb);
        if (tf_lo > tf_hi) continue;
        const int tf =
            tf_lo + 2 * int(rng() % (std::size_t((tf_hi - tf_lo) / 2) + 1));
        const HalfInt a = h2(ta), b = h2(tb), c = h2(tc);
        const HalfInt d = h2(td), e = h2(te), f = h2(tf);
        const QSqrt base = sixj(a, b, c, d, e, f);
        const std::array<QSqrt, 5> orbit = {
            sixj(b, a, c, e, d, f), sixj(c, b, a, f, e, d),
            sixj(a, c, b, d, f, e), sixj(d, e, c, a, b, f),
            sixj(a, e, f, d, b, c)};
        bool ok = true;
        for (const QSqrt& v : orbit)
            if (!(v == base)) ok = false;
        if (ok)
            rec.pass("symmetry orbit");
        else
            rec.fail("symmetry orbit",
                     cat("2(a b c d e f) = ", ta, " ", tb, " ", tc, " ", td,
                         " ", te, " ", tf),
                     cat("base = ", base.str()));
        ++tested;
    }
}

// ---------------------------------------------------------------------------
// tensor and spinor bases

CQSqrt inner(const CTensor& a, const CTensor& b) {
    CQSqrt acc;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k].conj() * b[k];
    return acc;
}

CTensor delta2() {
    CTensor d({3, 3});
    for (int i = 0; i < 3; ++i) d.at({i, i}) = CQSqrt(1);
    return d;
}

CTensor closed_projector_2() {
    CTensor x({3, 3, 3, 3});
    for (int i1 = 0; i1 < 3; ++i1)
        for (int i2 = 0; i2 < 3; ++i2)
            for (int j1 = 0; j1 < 3; ++j1)
                for (int j2 = 0; j2 < 3; ++j2) {
                    Rational v{};
                    if (i1 == j1 && i2 == j2) v += Rational(1, 2);
                    if (i1 == j2 && i2 == j1) v += Rational(1, 2);
                    if (i1 == i2 && j1 == j2) v -= Rational(1, 3);
                    x.at({i1, i2, j1, j2}) = cr(v);
                }
    return x;
}

CTensor closed_projector_3() {
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    CTensor x({3, 3, 3, 3, 3, 3});
    std::vector<int> idx(6, 0);
    do {
        const int i[3] = {idx[0], idx[1], idx[2]};
        const int jraw[3] = {idx[3], idx[4], idx[5]};
        Rational v{};
        for (const auto& p : perms) {
            const int j[3] = {jraw[p[0]], jraw[p[1]], jraw[p[2]]};
            if (i[0] == j[0] && i[1] == j[1] && i[2] == j[2]) v += 1;
            if (i[0] == i[1]) {
                if (j[0] == j[1] && i[2] == j[2]) v -= Rational(2, 5);
                if (j[1] == j[2] && i[2] == j[0]) v += Rational(1, 10);
                if (j[0] == j[2] && i[2] == j[1]) v += Rational(1, 10);
            }
            if (i[0] == i[2]) {
                if (j[0] == j[2] && i[1] == j[1]) v -= Rational(2, 5);
                if (j[1] == j[2] && i[1] == j[0]) v += Rational(1, 10);
                if (j[0] == j[1] && i[1] == j[2]) v += Rational(1, 10);
            }
            if (i[1] == i[2]) {
                if (j[1] == j[2] && i[0] == j[0]) v -= Rational(2, 5);
                if (j[0] == j[2] && i[0] == j[1]) v += Rational(1, 10);
                if (j[0] == j[1] && i[0] == j[2]) v += Rational(1, 10);
            }
        }
        x.at(idx) = cr(v / 6);
    } while (next_index(idx, x.dims()));
    return x;
}

void suite_tensorbasis(Recorder& rec, std::uint64_t seed,
                       const CheckScale& scale) {
    for (int n = 1; n <= 4; ++n)
        for (int m = -n; m <= n; ++m) {
            const CTensor t = standard_tensor(n, HalfInt(m));
            CTensor flipped = standard_tensor(n, HalfInt(-m));
            if (m % 2 != 0) flipped = -flipped;
            if (t.conjugate() == flipped)
                rec.pass("tensor conjugation");
            else
                rec.fail("tensor conjugation", cat("n = ", n, ", m = ", m), "");
            for (int mp = -n; mp <= n; ++mp) {
                const CQSqrt dot = inner(t, standard_tensor(n, HalfInt(mp)));
                const CQSqrt want = m == mp ? CQSqrt(1) : CQSqrt{};
                if (dot == want)
                    rec.pass("tensor orthonormality");
                else
                    rec.fail("tensor orthonormality",
                             cat("n = ", n, ", m = ", m, ", m' = ", mp),
                             cat("dot = ", cq_str(dot)));
            }
        }

    for (int n = 2; n <= 4; ++n)
        for (int q = 1; q <= n - 1; ++q)
            for (int m = -n; m <= n; ++m) {
                CTensor sum(std::vector<int>(std::size_t(n), 3));
                for (int mq = -q; mq <= q; ++mq) {
                    const int mp = m - mq;
                    if (std::abs(mp) > n - q) continue;
                    const QSqrt c = cg(HalfInt(n - q), HalfInt(mp), HalfInt(q),
                                       HalfInt(mq), HalfInt(n), HalfInt(m));
                    if (c.is_zero()) continue;
                    CTensor term =
                        tensor_product(standard_tensor(n - q, HalfInt(mp)),
                                       standard_tensor(q, HalfInt(mq)));
                    term *= CQSqrt(c);
                    sum += term;
                }
                if (sum == standard_tensor(n, HalfInt(m)))
                    rec.pass("coupling splits");
                else
                    rec.fail("coupling splits",
                             cat("n = ", n, ", split = ", q, ", m = ", m), "");
            }

    {
        const bool ok1 = sym_projector(1) == delta2();
        const bool ok2 = sym_projector(2) == closed_projector_2();
        const bool ok3 = sym_projector(3) == closed_projector_3();
        for (int n = 1; n <= 3; ++n) {
            const bool ok = n == 1 ? ok1 : (n == 2 ? ok2 : ok3);
            if (ok)
                rec.pass("projector closed forms");
            else
                rec.fail("projector closed forms", cat("rank = ", n), "");
        }
    }
    for (int n = 1; n <= 3; ++n) {
        const CTensor x = sym_projector(n);
        if (contract(x, x, n) == x)
            rec.pass("projector idempotence");
        else
            rec.fail("projector idempotence", cat("rank = ", n), "");
    }
    {
        const NTensor x = sym_projector_numeric(4);
        const NTensor xx = contract(x, x, 4);
        double worst = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k)
            worst = std::max(worst, std::abs(xx[k] - x[k]));
        if (worst < 1e-12)
            rec.pass("projector idempotence");
        else
            rec.fail("projector idempotence", "rank = 4",
                     cat("max deviation = ", worst));
    }

    for (int n = 0; n <= 3; ++n) {
        const int ts = 2 * n + 1;
        for (int tsz = -ts; tsz <= ts; tsz += 2) {
            const SpinorTensor chi = standard_spinor(n, h2(tsz));
            for (int tszp = -ts; tszp <= ts; tszp += 2) {
                const CQSqrt dot = inner(chi, standard_spinor(n, h2(tszp)));
                const CQSqrt want = tsz == tszp ? CQSqrt(1) : CQSqrt{};
                if (dot == want)
                    rec.pass("spinor orthonormality");
                else
                    rec.fail("spinor orthonormality",
                             cat("n = ", n, ", 2sz = ", tsz, ", 2sz' = ", tszp),
                             cat("dot = ", cq_str(dot)));
            }
            const CMat& s2 = pauli_matrices()[1];
            CTensor lhs(chi.dims());
            std::vector<int> idx(std::size_t(chi.rank()), 0);
            do {
                std::vector<int> src = idx;
                CQSqrt acc;
                for (int b = 0; b < 2; ++b) {
                    if (s2(idx.back(), b) == CQSqrt{}) continue;
                    src.back() = b;
                    acc += s2(idx.back(), b) * chi.at(src);
                }
                lhs.at(idx) = CQSqrt(QSqrt{}, QSqrt(1)) * acc;
            } while (next_index(idx, chi.dims()));
            CTensor rhs = standard_spinor(n, h2(-tsz)).conjugate();
            if (((1 + tsz) / 2) % 2 != 0) rhs = -rhs;
            if (lhs == rhs)
                rec.pass("spinor conjugation");
            else
                rec.fail("spinor conjugation", cat("n = ", n, ", 2sz = ", tsz),
                         "");
        }
    }

    {
        const auto& sigma = pauli_matrices();
        for (int n = 1; n <= 3; ++n) {
            const int ts = 2 * n + 1;
            for (int tsz = -ts; tsz <= ts; tsz += 2) {
                const SpinorTensor chi = standard_spinor(n, h2(tsz));
                for (int slot = 0; slot < n; ++slot) {
                    std::vector<int> rest(std::size_t(n - 1), 0);
                    const std::vector<int> rest_dims(std::size_t(n - 1), 3);
                    bool all_zero = true;
                    do {
                        for (int a = 0; a < 2; ++a) {
                            CQSqrt acc;
                            std::vector<int> idx(std::size_t(n + 1), 0);
                            for (int i = 0; i < 3; ++i)
                                for (int b = 0; b < 2; ++b) {
                                    const CQSqrt& s = sigma[std::size_t(i)](a, b);
                                    if (s == CQSqrt{}) continue;
                                    std::size_t p = 0;
                                    for (int ax = 0; ax < n; ++ax)
                                        idx[std::size_t(ax)] =
                                            (ax == slot) ? i : rest[p++];
                                    idx.back() = b;
                                    acc += s * chi.at(idx);
                                }
                            if (!(acc == CQSqrt{})) all_zero = false;
                        }
                    } while (next_index(rest, rest_dims));
                    if (all_zero)
                        rec.pass("spinor transversality");
                    else
                        rec.fail("spinor transversality",
                                 cat("n = ", n, ", 2sz = ", tsz,
                                     ", slot = ", slot),
                                 "");
                }
            }
        }
    }

    for (int n = 1; n <= 3; ++n) {
        const CTensor proj = spinor_projector(n);
        const int pw = pow3(n);
        const int dim = pw * 2;
        CMat lhs(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                lhs(r, c) = proj[std::size_t(r) * std::size_t(dim) +
                                 std::size_t(c)];
        const CTensor x = sym_projector(n);
        CMat xmat(dim, dim);
        for (int r = 0; r < pw; ++r)
            for (int c = 0; c < pw; ++c)
                for (int a = 0; a < 2; ++a)
                    xmat(r * 2 + a, c * 2 + a) =
                        x[std::size_t(r) * std::size_t(pw) + std::size_t(c)];
        const auto& sigma = pauli_matrices();
        CMat mid(dim, dim);
        const CQSqrt w1 = cr(Rational(n + 1, 2 * n + 1));
        const CQSqrt w2 = cr(Rational(n, 2 * n + 1));
        std::vector<int> kk(std::size_t(n), 0);
        const std::vector<int> kdims(std::size_t(n), 3);
        do {
            int krow = 0;
            for (int v : kk) krow = krow * 3 + v;
            std::vector<int> hh = kk;
            for (int a = 0; a < 2; ++a) mid(krow * 2 + a, krow * 2 + a) += w1;
            for (int h1 = 0; h1 < 3; ++h1) {
                hh[0] = h1;
                int hcol = 0;
                for (int v : hh) hcol = hcol * 3 + v;
                for (int r = 0; r < 3; ++r) {
                    const int e = levi(kk[0], r, h1);
                    if (e == 0) continue;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            const CQSqrt& s = sigma[std::size_t(r)](a, b);
                            if (s == CQSqrt{}) continue;
                            mid(krow * 2 + a, hcol * 2 + b) +=
                                w2 * CQSqrt(QSqrt{}, QSqrt(e)) * s;
                        }
                }
            }
        } while (next_index(kk, kdims));
        if (lhs == xmat * mid * xmat)
            rec.pass("spinor projector closed form");
        else
            rec.fail("spinor projector closed form", cat("rank = ", n), "");
    }

    {
        const auto& sigma = pauli_matrices();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const CMat prod = sigma[std::size_t(i)] * sigma[std::size_t(j)];
                CMat want = i == j ? CMat::identity(2) : CMat(2, 2);
                for (int k = 0; k < 3; ++k) {
                    const int e = levi(i, j, k);
                    if (e == 0) continue;
                    CMat term = sigma[std::size_t(k)];
                    term *= CQSqrt(QSqrt{}, QSqrt(e));
                    want += term;
                }
                if (prod == want)
                    rec.pass("pauli product expansion");
                else
                    rec.fail("pauli product expansion",
                             cat("i = ", i, ", j = ", j), "");
            }
    }

    {
        const auto& sigma = pauli_matrices();
        for (int m = -1; m <= 1; ++m) {
            const CTensor eps = standard_vector(HalfInt(m));
            for (int tsz = -1; tsz <= 1; tsz += 2) {
                const SpinorTensor chi = standard_spinor(0, h2(tsz));
                CTensor lhs({2});
                for (int a = 0; a < 2; ++a) {
                    CQSqrt acc;
                    for (int k = 0; k < 3; ++k)
                        for (int b = 0; b < 2; ++b)
                            acc += eps.at({k}) * sigma[std::size_t(k)](a, b) *
                                   chi.at({b});
                    lhs.at({a}) = acc;
                }
                const int flipped = (m % 2 == 0) ? tsz : -tsz;
                QSqrt coef;
                if (m == 0)
                    coef = QSqrt(Rational(tsz));
                else
                    coef = QSqrt::from_parts(Rational(tsz - m, 2), 2);
                SpinorTensor rhs = standard_spinor(0, h2(flipped));
                rhs *= CQSqrt(coef);
                if (lhs == rhs)
                    rec.pass("polarization contraction");
                else
                    rec.fail("polarization contraction",
                             cat("m = ", m, ", 2sz = ", tsz), "");
            }
        }
    }

    std::mt19937_64 rng(seed);
    for (int rep = 0; rep < std::max(scale.frames, 4); ++rep) {
        const std::array<double, 3> r1 = random_direction(rng);
        const std::array<double, 3> r2 = random_direction(rng);
        const double x =
            r1[0] * r2[0] + r1[1] * r2[1] + r1[2] * r2[2];
        for (int l = 1; l <= 6; ++l) {
            const double fscale =
                kFourPi /
                to_double(Rational(double_factorial(2 * l + 1), factorial(l)));
            Cplx acc;
            for (int m = -l; m <= l; ++m)
                acc += sph_harm(l, HalfInt(m), r1) *
                       std::conj(sph_harm(l, HalfInt(m), r2));
            const double lhs = fscale * acc.real();
            const double rhs =
                to_double(Rational(factorial(l), double_factorial(2 * l - 1))) *
                legendre(l).eval(x);
            const double dev =
                std::max(std::abs(acc.imag()) * fscale, std::abs(lhs - rhs));
            if (dev < 1e-12)
                rec.pass("harmonic addition");
            else
                rec.fail("harmonic addition",
                         cat("l = ", l, ", cos = ", x),
                         cat("deviation = ", dev));
        }
    }
}

// ---------------------------------------------------------------------------
// reduced matrix elements

/// Reduced value the catalog assigns to the word rhat^a L^b between l
/// and lp; an engaged zero marks a selection-rule zero, nullopt a valid
/// word outside the catalog.
std::optional<QSqrt> catalog_value(int a, int b, int l, int lp) {
    const int n = a + b;
    const int dl = lp - l;
    if (std::abs(dl) > a || (a - std::abs(dl)) % 2 != 0) return QSqrt{};
    if (a == n) {
        if (std::abs(dl) == n) return redmat_r_power(l, n, dl > 0 ? 1 : -1);
        return redmat_spin_analog(
            {HalfInt(lp), HalfInt(l), std::vector<WordOp>(std::size_t(n), WordOp::Rhat)});
    }
    if (a == 0) return dl == 0 ? redmat_J_power(HalfInt(l), n) : QSqrt{};
    if (std::abs(dl) == a) return redmat_r_L_mixed(l, n, dl);
    return std::nullopt;
}

/// Largest deviation between the matrix elements of the rank-n word and
/// the reduced value times the coupling coefficient, over all operator
/// projections and all bra and ket states.
double extraction_deviation(int lp, int l, int n, const std::vector<NMat>& word,
                            const CQSqrt& reduced) {
    const Cplx rm = reduced.to_cfloat();
    double worst = 0.0;
    for (int tm = 2 * n; tm >= -2 * n; tm -= 2) {
        const NTensor eps = standard_tensor_numeric(n, h2(tm));
        NMat me(2 * lp + 1, 2 * l + 1);
        for (int h = 0; h < pow3(n); ++h) {
            const Cplx c = eps[std::size_t(h)];
            if (c != 0.0) me += word[std::size_t(h)] * c;
        }
        for (int i = 0; i <= 2 * lp; ++i)
            for (int j = 0; j <= 2 * l; ++j) {
                const Cplx pred =
                    rm * cg(HalfInt(l), HalfInt(l - j), HalfInt(n), h2(tm),
                            HalfInt(lp), HalfInt(lp - i))
                             .to_float();
                worst = std::max(worst, std::abs(me(i, j) - pred));
            }
    }
    return worst;
}

/// Splits the oracle block into one matrix per flat word index.
std::vector<NMat> block_matrices(const NTensor& block, int n, int rows,
                                 int cols) {
    const int pw = pow3(n);
    std::vector<NMat> out(std::size_t(pw), NMat(rows, cols));
    for (int h = 0; h < pw; ++h)
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                out[std::size_t(h)](i, j) =
                    block[(std::size_t(h) * std::size_t(rows) + std::size_t(i)) *
                              std::size_t(cols) +
                          std::size_t(j)];
    return out;
}

std::array<NMat, 3> l_matrices(int l) {
    if (l == 0) {
        NMat z(1, 1);
        return {z, z, z};
    }
    const SpinMatrix s = spin_operator(HalfInt(l));
    return {to_numeric(s.comp[0]), to_numeric(s.comp[1]), to_numeric(s.comp[2])};
}

struct SpherePoint {
    std::array<double, 3> u;
    double w;
};

/// Product grid integrating spherical polynomials up to the given total
/// degree exactly: Gauss-Legendre in the polar cosine, uniform in the
/// azimuth.  Weights sum to 4 pi.
std::vector<SpherePoint> sphere_grid(int degree) {
    const int n_theta = degree / 2 + 1;
    const int n_phi = degree + 1;
    const auto gl = gauss_legendre(n_theta);
    std::vector<SpherePoint> pts;
    pts.reserve(std::size_t(n_theta) * std::size_t(n_phi));
    const double wphi = 2.0 * std::numbers::pi / n_phi;
    for (const auto& [x, w] : gl) {
        const double st = std::sqrt(std::max(0.0, 1.0 - x * x));
        for (int k = 0; k < n_phi; ++k)
            pts.push_back({{st * std::cos(wphi * k), st * std::sin(wphi * k), x},
                           w * wphi});
    }
    return pts;
}

void suite_redmat(Recorder& rec, std::uint64_t /*seed*/,
                  const CheckScale& scale) {
    const int lmax = scale.extraction_lmax;
    const int len = scale.extraction_word_len;

    for (int l = 0; l <= lmax; ++l)
        for (int a = 1; a <= len; ++a)
            for (int b = 0; a + b <= len; ++b) {
                const int n = a + b;
                for (int lp = std::max(0, l - n - 1);
                     lp <= std::min(lmax, l + n + 1); ++lp) {
                    const auto expected = catalog_value(a, b, l, lp);
                    if (!expected) continue;
                    std::vector<WordOp> word(std::size_t(a), WordOp::Rhat);
                    word.insert(word.end(), std::size_t(b), WordOp::L);
                    const NTensor block = oracle_orbital_me(word, lp, l);
                    const auto mats =
                        block_matrices(block, n, 2 * lp + 1, 2 * l + 1);
                    const double dev = extraction_deviation(
                        lp, l, n, mats, CQSqrt(*expected));
                    if (dev < 1e-10)
                        rec.pass("position word extraction");
                    else
                        rec.fail("position word extraction",
                                 cat("l = ", l, ", l' = ", lp,
                                     ", word = rhat^", a, " L^", b),
                                 cat("max deviation = ", dev));
                }
            }

    for (int l = 1; l <= lmax; ++l) {
        const SpinMatrix s = spin_operator(HalfInt(l));
        const int dim = 2 * l + 1;
        std::vector<CMat> chains{CMat::identity(dim)};
        for (int n = 1; n <= len; ++n) {
            std::vector<CMat> next;
            next.reserve(chains.size() * 3);
            for (const CMat& c : chains)
                for (int k = 0; k < 3; ++k)
                    next.push_back(c * s.comp[std::size_t(k)]);
            chains = std::move(next);
            const QSqrt rm = redmat_J_power(HalfInt(l), n);
            for (int tm = 2 * n; tm >= -2 * n; tm -= 2) {
                const CTensor eps = standard_tensor(n, h2(tm));
                CMat me(dim, dim);
                for (int h = 0; h < pow3(n); ++h) {
                    CMat term = chains[std::size_t(h)];
                    term *= eps[std::size_t(h)];
                    me += term;
                }
                CMat pred(dim, dim);
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j)
                        pred(i, j) = CQSqrt(
                            rm * cg(HalfInt(l), HalfInt(l - j), HalfInt(n),
                                    h2(tm), HalfInt(l), HalfInt(l - i)));
                if (me == pred)
                    rec.pass("momentum word extraction");
                else
                    rec.fail("momentum word extraction",
                             cat("l = ", l, ", power = ", n, ", 2m = ", tm),
                             "");
            }
        }
    }

    {
        std::vector<std::vector<WordOp>> words;
        for (int a = 0; a <= std::min(len, 3); ++a)
            for (int b = 0; a + b <= std::min(len, 3); ++b) {
                if (a + b == 0) continue;
                std::vector<WordOp> w(std::size_t(a), WordOp::T);
                w.insert(w.end(), std::size_t(b), WordOp::S);
                words.push_back(std::move(w));
            }
        for (const auto& word : words) {
            const int n = static_cast<int>(word.size());
            int hops = 0;
            for (WordOp op : word)
                if (op == WordOp::T) ++hops;
            for (int tk = 0; tk <= 6; ++tk)
                for (int dir = -1; dir <= 1; dir += 2) {
                    const int tp = tk + dir * 2 * hops;
                    if (tp < 0) continue;
                    if (hops == 0 && dir > 0) continue;
                    const HalfInt s_to = h2(tp);
                    const HalfInt s_from = h2(tk);
                    const QSqrt reduced =
                        redmat_spin_analog({s_to, s_from, word});
                    const auto blocks = word_blocks(s_to, word, s_from);
                    bool ok = true;
                    for (int tm = -2 * n; tm <= 2 * n && ok; tm += 2) {
                        const CTensor eps = standard_tensor(n, h2(tm));
                        for (int tspz = -tp; tspz <= tp && ok; tspz += 2)
                            for (int tsz = -tk; tsz <= tk && ok; tsz += 2) {
                                CQSqrt val;
                                const int row = (tp - tspz) / 2;
                                const int col = (tk - tsz) / 2;
                                for (int flat = 0; flat < pow3(n); ++flat) {
                                    const CQSqrt& v =
                                        blocks[std::size_t(flat)](row, col);
                                    if (v.is_zero()) continue;
                                    val += eps[std::size_t(flat)] * v;
                                }
                                const QSqrt expect =
                                    reduced * cg(s_from, h2(tsz), HalfInt(n),
                                                 h2(tm), s_to, h2(tspz));
                                if (!(val == CQSqrt(expect))) ok = false;
                            }
                    }
                    if (ok)
                        rec.pass("spin word extraction");
                    else
                        rec.fail("spin word extraction",
                                 cat("2s' = ", tp, ", 2s = ", tk,
                                     ", word length = ", n, ", hops = ", hops),
                                 "");
                }
        }
    }

    for (int l = 0; l <= lmax; ++l)
        for (int dl : {-2, -1, 1, 2}) {
            const int lp = l + dl;
            if (lp < 0 || lp > lmax) continue;
            const int rows = 2 * lp + 1, cols = 2 * l + 1;
            const auto lm = l_matrices(l);
            const auto mom1 = block_matrices(
                oracle_orbital_me({WordOp::Rhat}, lp, l), 1, rows, cols);
            const auto mom2 = block_matrices(
                oracle_orbital_me({WordOp::Rhat, WordOp::Rhat}, lp, l), 2, rows,
                cols);

            std::array<NMat, 3> crossmat{NMat(rows, cols), NMat(rows, cols),
                                         NMat(rows, cols)};
            for (int i = 0; i < 3; ++i)
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        if (const int e = levi(i, p, q); e != 0)
                            crossmat[std::size_t(i)] +=
                                (mom1[std::size_t(p)] * lm[std::size_t(q)]) *
                                Cplx(e, 0.0);

            double dev = extraction_deviation(
                lp, l, 1, {crossmat[0], crossmat[1], crossmat[2]},
                redmat_cross(CrossKind::cross, l, dl));
            if (dev < 1e-10)
                rec.pass("cross word extraction");
            else
                rec.fail("cross word extraction",
                         cat("l = ", l, ", dl = ", dl, ", kind = cross"),
                         cat("max deviation = ", dev));

            std::vector<NMat> cross_l;
            cross_l.reserve(9);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    cross_l.push_back(crossmat[std::size_t(i)] *
                                      lm[std::size_t(j)]);
            dev = extraction_deviation(lp, l, 2, cross_l,
                                       redmat_cross(CrossKind::cross_l, l, dl));
            if (dev < 1e-10)
                rec.pass("cross word extraction");
            else
                rec.fail("cross word extraction",
                         cat("l = ", l, ", dl = ", dl, ", kind = cross_l"),
                         cat("max deviation = ", dev));

            std::vector<NMat> r_cross;
            r_cross.reserve(9);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    NMat w(rows, cols);
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q)
                            if (const int e = levi(j, p, q); e != 0)
                                w += (mom2[std::size_t(3 * i + p)] *
                                      lm[std::size_t(q)]) *
                                     Cplx(e, 0.0);
                    r_cross.push_back(std::move(w));
                }
            dev = extraction_deviation(lp, l, 2, r_cross,
                                       redmat_cross(CrossKind::r_cross, l, dl));
            if (dev < 1e-10)
                rec.pass("cross word extraction");
            else
                rec.fail("cross word extraction",
                         cat("l = ", l, ", dl = ", dl, ", kind = r_cross"),
                         cat("max deviation = ", dev));
        }

    {
        const int ly = scale.harmonic_lmax;
        const auto grid = sphere_grid(2 * (3 * ly + 2));
        std::vector<std::vector<std::vector<Cplx>>> rows(grid.size());
        for (std::size_t p = 0; p < grid.size(); ++p) {
            rows[p].resize(std::size_t(ly) + 1);
            for (int l = 0; l <= ly; ++l) {
                auto& row = rows[p][std::size_t(l)];
                row.resize(std::size_t(2 * l + 1));
                for (int m = -l; m <= l; ++m)
                    row[std::size_t(l - m)] = sph_harm(l, HalfInt(m), grid[p].u);
            }
        }
        for (int lp = 0; lp <= ly; ++lp)
            for (int L = 0; L <= ly; ++L)
                for (int l = 0; l <= ly; ++l) {
                    const double rm =
                        redmat_Y(lp, L, l).to_float() / std::sqrt(kFourPi);
                    double worst = 0.0;
                    for (int mu = -L; mu <= L; ++mu)
                        for (int m = -l; m <= l; ++m) {
                            const int mp = m + mu;
                            if (std::abs(mp) > lp) continue;
                            Cplx integral;
                            for (std::size_t p = 0; p < grid.size(); ++p)
                                integral +=
                                    grid[p].w *
                                    std::conj(
                                        rows[p][std::size_t(lp)]
                                            [std::size_t(lp - mp)]) *
                                    rows[p][std::size_t(L)][std::size_t(L - mu)] *
                                    rows[p][std::size_t(l)][std::size_t(l - m)];
                            const double pred =
                                rm * cg(HalfInt(l), HalfInt(m), HalfInt(L),
                                        HalfInt(mu), HalfInt(lp), HalfInt(mp))
                                         .to_float();
                            worst =
                                std::max(worst, std::abs(integral - pred));
                        }
                    if (worst < 1e-10)
                        rec.pass("harmonic insertion");
                    else
                        rec.fail("harmonic insertion",
                                 cat("l' = ", lp, ", L = ", L, ", l = ", l),
                                 cat("max deviation = ", worst));
                }
    }
}

// ---------------------------------------------------------------------------
// spin operator words

void suite_spinops(Recorder& rec, std::uint64_t /*seed*/,
                   const CheckScale& /*scale*/) {
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
        for (int tm = -2 * n; tm <= 2 * n; tm += 2)
            for (int tspz = -e.tp; tspz <= e.tp; tspz += 2)
                for (int tsz = -e.tk; tsz <= e.tk; tsz += 2) {
                    const CQSqrt a =
                        spin_me(h2(e.tp), h2(tspz), e.word, h2(tm), h2(e.tk),
                                h2(tsz), SpinMeRoute::matrix);
                    const CQSqrt b =
                        spin_me(h2(e.tp), h2(tspz), e.word, h2(tm), h2(e.tk),
                                h2(tsz), SpinMeRoute::spinor);
                    if (a == b)
                        rec.pass("route agreement");
                    else
                        rec.fail("route agreement",
                                 cat("2s' = ", e.tp, ", 2s = ", e.tk,
                                     ", word length = ", n, ", 2m = ", tm,
                                     ", 2s'z = ", tspz, ", 2sz = ", tsz),
                                 cat("matrix = ", cq_str(a), ", spinor = ",
                                     cq_str(b)));
                }
    }

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
    const std::vector<std::pair<int, int>> orbitals = {
        {1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}};
    for (const Shape& sh : shapes)
        for (const auto& [lp, l] : orbitals) {
            ContractionCase c;
            c.l_to = lp;
            c.l_from = l;
            c.orbital = sh.orbital;
            c.spin = sh.spin;
            c.s_to = h2(sh.tp);
            c.s_from = h2(sh.tk);
            for (int tlpz = -2 * lp; tlpz <= 2 * lp; tlpz += 2)
                for (int tlz = -2 * l; tlz <= 2 * l; tlz += 2)
                    for (int tspz = -sh.tp; tspz <= sh.tp; tspz += 2)
                        for (int tsz = -sh.tk; tsz <= sh.tk; tsz += 2) {
                            c.lpz = h2(tlpz);
                            c.lz = h2(tlz);
                            c.spz = h2(tspz);
                            c.sz = h2(tsz);
                            const auto [first, second] =
                                symtrace_contract_equiv(c);
                            if (first == second)
                                rec.pass("contracted rewriting");
                            else
                                rec.fail(
                                    "contracted rewriting",
                                    cat("l' = ", lp, ", l = ", l, ", 2s' = ",
                                        sh.tp, ", 2s = ", sh.tk, ", 2l'z = ",
                                        tlpz, ", 2lz = ", tlz, ", 2s'z = ",
                                        tspz, ", 2sz = ", tsz),
                                    cat("lhs = ", cq_str(first), ", rhs = ",
                                        cq_str(second)));
                        }
        }

    for (const auto& [lp, l] : std::vector<std::pair<int, int>>{
             {0, 0}, {1, 1}, {2, 2}, {3, 3}, {2, 0}, {0, 2}, {3, 1}}) {
        const auto blocks =
            word_blocks(HalfInt(lp), {WordOp::Rhat, WordOp::Rhat}, HalfInt(l));
        CMat sum(2 * lp + 1, 2 * l + 1);
        for (int i = 0; i < 3; ++i) sum += blocks[std::size_t(4 * i)];
        const bool ok = lp == l ? (sum == CMat::identity(2 * l + 1))
                                : sum.is_zero();
        if (ok)
            rec.pass("versor square contraction");
        else
            rec.fail("versor square contraction",
                     cat("l' = ", lp, ", l = ", l), "");
    }
}

// ---------------------------------------------------------------------------
// spin-orbit coupling sums

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

std::string case_str(const CouplingCase& c) {
    return cat("2j = ", c.j.twice(), ", 2s' = ", c.s_to.twice(), ", 2s = ",
               c.s_from.twice(), ", l' = ", c.l_to, ", l = ", c.l_from,
               ", 2l'z = ", c.lpz.twice(), ", 2lz = ", c.lz.twice(),
               ", 2s'z = ", c.spz.twice(), ", 2sz = ", c.sz.twice());
}

void suite_cgfactor(Recorder& rec, std::uint64_t /*seed*/,
                    const CheckScale& scale) {
    const int lmax = scale.route_lmax;

    for (const auto& [tp, tk] : kTablePairs) {
        const HalfInt s_to = h2(tp);
        const HalfInt s_from = h2(tk);
        for (int l_from = 0; l_from <= lmax; ++l_from)
            for (int l_to = 0; l_to <= lmax; ++l_to) {
                if (std::abs(l_to - l_from) > 3) continue;
                for (HalfInt j : couplable_j(l_to, s_to, l_from, s_from))
                    for (int lz2 = -2 * l_from; lz2 <= 2 * l_from; lz2 += 2)
                        for (int sz2 = -tk; sz2 <= tk; sz2 += 2)
                            for (int spz2 = -tp; spz2 <= tp; spz2 += 2) {
                                const int lpz2 = lz2 + sz2 - spz2;
                                if (std::abs(lpz2) > 2 * l_to) continue;
                                const CouplingCase c{j,       s_to,
                                                     s_from,  l_to,
                                                     l_from,  h2(lpz2),
                                                     h2(lz2), h2(spz2),
                                                     h2(sz2)};
                                const QSqrt d = s_direct(c);
                                const QSqrt f = s_factorized(c);
                                const QSqrt o = s_operator_form(c);
                                const QSqrt k = s_kappa_form(c);
                                if (d == f)
                                    rec.pass("factorized route");
                                else
                                    rec.fail("factorized route", case_str(c),
                                             cat("direct = ", d.str(),
                                                 ", factorized = ", f.str()));
                                if (d == o)
                                    rec.pass("operator route");
                                else
                                    rec.fail("operator route", case_str(c),
                                             cat("direct = ", d.str(),
                                                 ", operator = ", o.str()));
                                if (d == k)
                                    rec.pass("short-form route");
                                else
                                    rec.fail("short-form route", case_str(c),
                                             cat("direct = ", d.str(),
                                                 ", short form = ", k.str()));
                            }
            }
    }

    for (const auto& [tp, tk] : kTablePairs) {
        const HalfInt s_to = h2(tp);
        const HalfInt s_from = h2(tk);
        const int ads = std::abs(tp - tk) / 2;
        for (int l_from = 0; l_from <= lmax; ++l_from)
            for (int l_to = 0; l_to <= lmax; ++l_to) {
                const int adl = std::abs(l_to - l_from);
                if (adl > 3) continue;
                for (HalfInt j : couplable_j(l_to, s_to, l_from, s_from)) {
                    const int dmax = std::min(l_to + l_from, (tp + tk) / 2);
                    for (int d = std::max(adl, ads); d <= dmax; ++d) {
                        const CoeffTableKey key{s_to, s_from, d, l_to, l_from,
                                                j};
                        const QSqrt lhs = coeff_C_table(key);
                        const QSqrt rhs =
                            coeff_C_general(s_to, s_from, d, l_to, l_from, j);
                        if (lhs == rhs)
                            rec.pass("coefficient ratio");
                        else
                            rec.fail("coefficient ratio",
                                     cat("2s' = ", tp, ", 2s = ", tk,
                                         ", rank = ", d, ", l' = ", l_to,
                                         ", l = ", l_from, ", 2j = ",
                                         j.twice()),
                                     cat("table = ", lhs.str(),
                                         ", defining ratio = ", rhs.str()));
                    }
                }
            }
    }

    for (int l = 1; l <= lmax; ++l)
        for (int dj : {-1, 1}) {
            const int tj = 2 * l + dj;
            if (tj < 1) continue;
            const auto [lhs, rhs] = alt_ratio_check(l, h2(tj));
            if (lhs == rhs)
                rec.pass("alternative ratio");
            else
                rec.fail("alternative ratio", cat("l = ", l, ", 2j = ", tj),
                         cat("lhs = ", lhs.str(), ", rhs = ", rhs.str()));
        }
}

// ---------------------------------------------------------------------------
// projected matrix elements

double max_abs_diff(const NTensor& a, const NTensor& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

NTensor sym_part(const NTensor& t) {
    if (t.rank() <= 1) return t;
    return contract(sym_projector_numeric(t.rank()), t, t.rank());
}

std::vector<WordOp> word_rl(int n_r, int n_l) {
    std::vector<WordOp> w(std::size_t(n_r), WordOp::Rhat);
    w.insert(w.end(), std::size_t(n_l), WordOp::L);
    return w;
}

NTensor braced(const std::vector<std::array<double, 3>>& vs) {
    NTensor t = NTensor::scalar({1.0, 0.0});
    for (const auto& v : vs) {
        NTensor a({3});
        for (int i = 0; i < 3; ++i) a[std::size_t(i)] = {v[i], 0.0};
        t = tensor_product(t, a);
    }
    return sym_part(t);
}

void suite_projector(Recorder& rec, std::uint64_t seed,
                     const CheckScale& scale) {
    std::mt19937_64 rng(seed);
    std::vector<GeomFrame> frames;
    frames.reserve(std::size_t(scale.frames));
    for (int k = 0; k < scale.frames; ++k)
        frames.push_back(make_frame(random_direction(rng), random_direction(rng)));

    for (const GeomFrame& f : frames) {
        for (int p = 1; p <= 3; ++p)
            for (int l = 0; l <= scale.frame_lmax; ++l) {
                const double dev =
                    max_abs_diff(me_L_power(p, l, f),
                                 sym_part(oracle_sum(word_rl(0, p), l, l, f)));
                if (dev < 1e-10)
                    rec.pass("projected closed forms");
                else
                    rec.fail("projected closed forms",
                             cat("word = L^", p, ", l = ", l),
                             cat("max deviation = ", dev));
            }
        for (int n = 1; n <= 3; ++n)
            for (int sign : {1, -1})
                for (int l = 0; l <= scale.frame_lmax; ++l) {
                    if (l + sign * n < 0) continue;
                    const double dev = max_abs_diff(
                        me_r_power(n, sign, l, f),
                        sym_part(oracle_sum(word_rl(n, 0), l + sign * n, l, f)));
                    if (dev < 1e-10)
                        rec.pass("projected closed forms");
                    else
                        rec.fail("projected closed forms",
                                 cat("word = rhat^", n, ", sign = ", sign,
                                     ", l = ", l),
                                 cat("max deviation = ", dev));
                }
        for (auto [n, t] : {std::pair{1, 1}, {2, 1}, {1, 2}})
            for (int sign : {1, -1})
                for (int l = 0; l <= scale.frame_lmax; ++l) {
                    if (l + sign * n < 0) continue;
                    const double dev = max_abs_diff(
                        me_mixed(n, t, sign, l, f),
                        sym_part(oracle_sum(word_rl(n, t), l + sign * n, l, f)));
                    if (dev < 1e-10)
                        rec.pass("projected closed forms");
                    else
                        rec.fail("projected closed forms",
                                 cat("word = rhat^", n, " L^", t, ", sign = ",
                                     sign, ", l = ", l),
                                 cat("max deviation = ", dev));
                }
    }

    const Cplx im{0.0, 1.0};
    for (const GeomFrame& f : frames) {
        const auto& a = f.rhat;
        const auto& b = f.rhatp;
        const auto& v = f.v;
        const double x = f.x;
        auto tab = [&](const NTensor& want, const NTensor& got,
                       const std::string& inputs) {
            const double dev = max_abs_diff(want, got);
            if (dev < 1e-12)
                rec.pass("specialization tables");
            else
                rec.fail("specialization tables", inputs,
                         cat("max deviation = ", dev));
        };

        for (int l : {1, 2, 5}) {
            const double fscale = (2 * l + 1) / kFourPi;
            NTensor one = braced({v});
            one *= Cplx{legendre(l, 1).eval(x) * fscale, 0.0} * im;
            tab(one, me_L_power(1, l, f), cat("word = L, l = ", l));

            NTensor two = braced({v, v}) * Cplx{legendre(l, 2).eval(x), 0.0};
            two += braced({a, b}) * Cplx{legendre(l, 1).eval(x), 0.0};
            two *= Cplx{-fscale, 0.0};
            tab(two, me_L_power(2, l, f), cat("word = L^2, l = ", l));

            NTensor three = braced({v, v, v}) * Cplx{legendre(l, 3).eval(x), 0.0};
            three += braced({b, a, v}) * Cplx{3.0 * legendre(l, 2).eval(x), 0.0};
            three *= -im * fscale;
            tab(three, me_L_power(3, l, f), cat("word = L^3, l = ", l));
        }

        for (int sign : {1, -1}) {
            for (int l : {2, 5}) {
                const int l1 = l + sign;
                NTensor one = braced({b}) * Cplx{legendre(l1, 1).eval(x), 0.0};
                one -= braced({a}) * Cplx{legendre(l, 1).eval(x), 0.0};
                one *= Cplx{sign / kFourPi, 0.0};
                tab(one, me_r_power(1, sign, l, f),
                    cat("word = rhat, sign = ", sign, ", l = ", l));

                const int l2 = l + 2 * sign;
                NTensor two = braced({a, a}) * Cplx{legendre(l, 2).eval(x), 0.0};
                two -= braced({a, b}) * Cplx{2.0 * legendre(l1, 2).eval(x), 0.0};
                two += braced({b, b}) * Cplx{legendre(l2, 2).eval(x), 0.0};
                two *= Cplx{1.0 / (kFourPi * (2 * l1 + 1)), 0.0};
                tab(two, me_r_power(2, sign, l, f),
                    cat("word = rhat^2, sign = ", sign, ", l = ", l));
            }
            for (int l : {3, 6}) {
                const int l1 = l + sign;
                const int l2 = l + 2 * sign;
                const int l3 = l + 3 * sign;
                NTensor three =
                    braced({a, a, a}) * Cplx{-legendre(l, 3).eval(x), 0.0};
                three += braced({a, a, b}) *
                         Cplx{3.0 * legendre(l1, 3).eval(x), 0.0};
                three -= braced({a, b, b}) *
                         Cplx{3.0 * legendre(l2, 3).eval(x), 0.0};
                three += braced({b, b, b}) * Cplx{legendre(l3, 3).eval(x), 0.0};
                three *= Cplx{static_cast<double>(sign) /
                                  (kFourPi * (2 * l2 + 1) * (2 * l1 + 1)),
                              0.0};
                tab(three, me_r_power(3, sign, l, f),
                    cat("word = rhat^3, sign = ", sign, ", l = ", l));
            }
            for (int l : {2, 4}) {
                const int l1 = l + sign;
                const int l2 = l + 2 * sign;

                NTensor oneone =
                    braced({b, v}) * Cplx{legendre(l1, 2).eval(x), 0.0};
                oneone -= braced({a, v}) * Cplx{legendre(l, 2).eval(x), 0.0};
                oneone *= im * (sign / kFourPi);
                tab(oneone, me_mixed(1, 1, sign, l, f),
                    cat("word = rhat L, sign = ", sign, ", l = ", l));

                NTensor twoone =
                    braced({b, b, v}) * Cplx{legendre(l2, 3).eval(x), 0.0};
                twoone -= braced({b, a, v}) *
                          Cplx{2.0 * legendre(l1, 3).eval(x), 0.0};
                twoone += braced({a, a, v}) * Cplx{legendre(l, 3).eval(x), 0.0};
                twoone *= im * (1.0 / (kFourPi * (2 * l1 + 1)));
                tab(twoone, me_mixed(2, 1, sign, l, f),
                    cat("word = rhat^2 L, sign = ", sign, ", l = ", l));

                NTensor onetwo =
                    braced({b, v, v}) * Cplx{legendre(l1, 3).eval(x), 0.0};
                onetwo -= braced({a, v, v}) * Cplx{legendre(l, 3).eval(x), 0.0};
                onetwo += braced({b, b, a}) * Cplx{legendre(l1, 2).eval(x), 0.0};
                onetwo -= braced({b, a, a}) * Cplx{legendre(l, 2).eval(x), 0.0};
                onetwo *= Cplx{-sign / kFourPi, 0.0};
                tab(onetwo, me_mixed(1, 2, sign, l, f),
                    cat("word = rhat L^2, sign = ", sign, ", l = ", l));
            }
        }
    }

    for (const GeomFrame& f : frames)
        for (int sign : {1, -1})
            for (int l = 0; l <= scale.frame_lmax; ++l) {
                if (l + sign < 0) continue;
                const auto [lhs, rhs] = projected_dot_check(l, sign, f);
                if (std::abs(lhs - rhs) < 1e-10)
                    rec.pass("projected radial dot");
                else
                    rec.fail("projected radial dot",
                             cat("l = ", l, ", sign = ", sign),
                             cat("lhs = ", lhs, ", rhs = ", rhs));
            }

    const RatPoly x = RatPoly::monomial(1);
    for (int sign : {1, -1})
        for (int n = 0; n <= 3; ++n)
            for (int l = (sign > 0 ? 0 : n + 1); l <= scale.ladder_lmax; ++l)
                for (int k = 0; k <= n; ++k) {
                    const int lk = l + sign * k;
                    const Rational coef(sign * (2 * l + sign * (2 * n + 1) + 1),
                                        2);
                    RatPoly lhs = x * legendre(lk, 1);
                    lhs -= Rational(n - k) * legendre(lk);
                    lhs += coef * legendre(lk);
                    if (lhs == legendre(lk + sign, 1))
                        rec.pass("derivative ladder");
                    else
                        rec.fail("derivative ladder",
                                 cat("sign = ", sign, ", n = ", n, ", l = ", l,
                                     ", k = ", k),
                                 "");
                }
}

}  // namespace

long long SuiteReport::checked() const {
    long long total = 0;
    for (const IdentityTally& t : identities) total += t.checked;
    return total;
}

long long SuiteReport::failed() const {
    long long total = 0;
    for (const IdentityTally& t : identities) total += t.failed;
    return total;
}

CheckScale CheckScale::acceptance() {
    CheckScale s;
    s.recoupling_tuples = 500;
    s.route_lmax = 8;
    s.extraction_lmax = 6;
    s.extraction_word_len = 3;
    s.harmonic_lmax = 4;
    s.frames = 50;
    s.frame_lmax = 6;
    s.ladder_lmax = 12;
    return s;
}

const std::vector<std::string>& check_suite_names() {
    static const std::vector<std::string> names = {
        "wigner", "tensorbasis", "redmat", "spinops", "cgfactor", "projector"};
    return names;
}

SuiteReport run_check_suite(const std::string& suite, std::uint64_t seed,
                            const CheckScale& scale) {
    SuiteReport report;
    report.suite = suite;
    Recorder rec(report);
    if (suite == "wigner")
        suite_wigner(rec, seed, scale);
    else if (suite == "tensorbasis")
        suite_tensorbasis(rec, seed, scale);
    else if (suite == "redmat")
        suite_redmat(rec, seed, scale);
    else if (suite == "spinops")
        suite_spinops(rec, seed, scale);
    else if (suite == "cgfactor")
        suite_cgfactor(rec, seed, scale);
    else if (suite == "projector")
        suite_projector(rec, seed, scale);
    else
        throw std::invalid_argument("unknown check suite: " + suite);
    return report;
}

}  // namespace spincouple
