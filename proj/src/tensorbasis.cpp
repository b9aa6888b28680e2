// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/tensorbasis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "spincouple/errors.hpp"
#include "spincouple/rational.hpp"
#include "spincouple/wigner.hpp"

namespace spincouple {

namespace {

constexpr int kMaxExactRank = 4;
constexpr int kMaxNumericRank = 8;

const QSqrt& half_sqrt2() {
    static const QSqrt v = QSqrt::from_parts(Rational(1, 2), 2);
    return v;
}

CTensor make_standard_vector(int tm) {
    CTensor t({3});
    switch (tm) {
        case 2:
            t.at({0}) = CQSqrt(-half_sqrt2());
            t.at({1}) = CQSqrt(QSqrt{}, -half_sqrt2());
            break;
        case 0:
            t.at({2}) = CQSqrt(1);
            break;
        case -2:
            t.at({0}) = CQSqrt(half_sqrt2());
            t.at({1}) = CQSqrt(QSqrt{}, -half_sqrt2());
            break;
        default:
            break;
    }
    return t;
}

template <typename K, typename V, typename Build>
const V& cached(std::map<K, V>& store, std::mutex& mu, const K& key, Build build) {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = store.find(key);
        if (it != store.end()) return it->second;
    }
    // Built outside the lock so the builders may recurse into the cache.
    V value = build();
    std::lock_guard<std::mutex> lock(mu);
    return store.emplace(key, std::move(value)).first->second;
}

std::map<std::pair<int, int>, CTensor> g_tensor_cache;
std::mutex g_tensor_mu;

const CTensor& standard_tensor_ref(int n, int tm) {
    return cached(g_tensor_cache, g_tensor_mu, std::make_pair(n, tm), [&] {
        if (n == 1) return make_standard_vector(tm);
        std::vector<int> dims(static_cast<std::size_t>(n), 3);
        CTensor t(dims);
        if (std::abs(tm) > 2 * n) return t;
        const HalfInt m = HalfInt::from_twice(tm);
        for (int tsz = -2; tsz <= 2; tsz += 2) {
            const int tmp = tm - tsz;
            if (std::abs(tmp) > 2 * (n - 1)) continue;
            const QSqrt c = cg(HalfInt(n - 1), HalfInt::from_twice(tmp), HalfInt(1),
                               HalfInt::from_twice(tsz), HalfInt(n), m);
            if (c.is_zero()) continue;
            CTensor term = tensor_product(standard_tensor_ref(n - 1, tmp),
                                          make_standard_vector(tsz));
            term *= CQSqrt(c);
            t += term;
        }
        return t;
    });
}

std::map<std::pair<int, int>, SpinorTensor> g_spinor_cache;
std::mutex g_spinor_mu;

const SpinorTensor& standard_spinor_ref(int n, int tsz) {
    return cached(g_spinor_cache, g_spinor_mu, std::make_pair(n, tsz), [&] {
        if (n == 0) {
            SpinorTensor t({2});
            if (tsz == 1) t.at({0}) = CQSqrt(1);
            if (tsz == -1) t.at({1}) = CQSqrt(1);
            return t;
        }
        std::vector<int> dims(static_cast<std::size_t>(n), 3);
        dims.push_back(2);
        SpinorTensor t(dims);
        if (std::abs(tsz) > 2 * n + 1) return t;
        const HalfInt sz = HalfInt::from_twice(tsz);
        for (int tszp = -1; tszp <= 1; tszp += 2) {
            const int tmm = tsz - tszp;
            if (std::abs(tmm) > 2 * n) continue;
            const QSqrt c = cg(HalfInt(n), HalfInt::from_twice(tmm),
                               HalfInt::from_twice(1), HalfInt::from_twice(tszp),
                               HalfInt::from_twice(2 * n + 1), sz);
            if (c.is_zero()) continue;
            SpinorTensor term = tensor_product(standard_tensor_ref(n, tmm),
                                               standard_spinor_ref(0, tszp));
            term *= CQSqrt(c);
            t += term;
        }
        return t;
    });
}

std::map<int, CTensor> g_symproj_cache;
std::mutex g_symproj_mu;

const CTensor& sym_projector_ref(int n) {
    return cached(g_symproj_cache, g_symproj_mu, n, [&] {
        std::vector<int> dims(static_cast<std::size_t>(2 * n), 3);
        CTensor x(dims);
        for (int tm = -2 * n; tm <= 2 * n; tm += 2) {
            const CTensor& eps = standard_tensor_ref(n, tm);
            x += tensor_product(eps, eps.conjugate());
        }
        return x;
    });
}

std::map<std::pair<int, int>, NTensor> g_ntensor_cache;
std::mutex g_ntensor_mu;

const NTensor& standard_tensor_numeric_ref(int n, int tm) {
    return cached(g_ntensor_cache, g_ntensor_mu, std::make_pair(n, tm), [&] {
        if (n <= kMaxExactRank) return to_numeric(standard_tensor_ref(n, tm));
        std::vector<int> dims(static_cast<std::size_t>(n), 3);
        NTensor t(dims);
        if (std::abs(tm) > 2 * n) return t;
        const HalfInt m = HalfInt::from_twice(tm);
        for (int tsz = -2; tsz <= 2; tsz += 2) {
            const int tmp = tm - tsz;
            if (std::abs(tmp) > 2 * (n - 1)) continue;
            const QSqrt c = cg(HalfInt(n - 1), HalfInt::from_twice(tmp), HalfInt(1),
                               HalfInt::from_twice(tsz), HalfInt(n), m);
            if (c.is_zero()) continue;
            NTensor term = tensor_product(standard_tensor_numeric_ref(n - 1, tmp),
                                          to_numeric(make_standard_vector(tsz)));
            term *= std::complex<double>(c.to_float());
            t += term;
        }
        return t;
    });
}

void require_cartesian(const CTensor& t) {
    for (int i = 0; i < t.rank(); ++i)
        if (t.dim(i) != 3)
            throw InvalidQuantumNumbersError("tensor axes must all have length 3");
}

}  // namespace

const CTensor& levi_civita() {
    static const CTensor eps = [] {
        CTensor t({3, 3, 3});
        t.at({0, 1, 2}) = CQSqrt(1);
        t.at({1, 2, 0}) = CQSqrt(1);
        t.at({2, 0, 1}) = CQSqrt(1);
        t.at({0, 2, 1}) = CQSqrt(-1);
        t.at({2, 1, 0}) = CQSqrt(-1);
        t.at({1, 0, 2}) = CQSqrt(-1);
        return t;
    }();
    return eps;
}

const std::array<CMat, 3>& pauli_matrices() {
    static const std::array<CMat, 3> sigma = [] {
        std::array<CMat, 3> s{CMat(2, 2), CMat(2, 2), CMat(2, 2)};
        s[0](0, 1) = CQSqrt(1);
        s[0](1, 0) = CQSqrt(1);
        s[1](0, 1) = CQSqrt(QSqrt{}, QSqrt(-1));
        s[1](1, 0) = CQSqrt(QSqrt{}, QSqrt(1));
        s[2](0, 0) = CQSqrt(1);
        s[2](1, 1) = CQSqrt(-1);
        return s;
    }();
    return sigma;
}

CTensor standard_vector(HalfInt m) {
    if (!m.is_integer()) return CTensor({3});
    return make_standard_vector(m.twice());
}

CTensor standard_tensor(int n, HalfInt m) {
    if (n < 1) throw InvalidQuantumNumbersError("tensor rank must be at least 1");
    if (!m.is_integer())
        throw InvalidQuantumNumbersError("integer-spin tensor needs an integer projection");
    if (n > kMaxExactRank)
        throw UnsupportedCaseError("exact standard tensors are kept up to rank 4");
    return standard_tensor_ref(n, m.twice());
}

SpinorTensor standard_spinor(int n, HalfInt sz) {
    if (n < 0) throw InvalidQuantumNumbersError("spinor tensor rank must be non-negative");
    if (sz.is_integer())
        throw InvalidQuantumNumbersError("half-integer-spin spinor needs a half-odd projection");
    if (n > kMaxExactRank)
        throw UnsupportedCaseError("exact standard spinors are kept up to rank 4");
    return standard_spinor_ref(n, sz.twice());
}

CTensor sym_projector(int n) {
    if (n < 1) throw InvalidQuantumNumbersError("projector rank must be at least 1");
    if (n > kMaxExactRank)
        throw UnsupportedCaseError("exact symmetric projectors are kept up to rank 4");
    return sym_projector_ref(n);
}

CTensor spinor_projector(int n) {
    if (n < 1) throw InvalidQuantumNumbersError("spinor projector rank must be at least 1");
    if (n > kMaxExactRank)
        throw UnsupportedCaseError("exact spinor projectors are kept up to rank 4");
    std::vector<int> block(static_cast<std::size_t>(n), 3);
    block.push_back(2);
    std::vector<int> dims = block;
    dims.insert(dims.end(), block.begin(), block.end());
    CTensor x(dims);
    for (int tsz = -(2 * n + 1); tsz <= 2 * n + 1; tsz += 2) {
        const SpinorTensor& chi = standard_spinor_ref(n, tsz);
        x += tensor_product(chi, chi.conjugate());
    }
    return x;
}

SpinMatrix spin_operator(HalfInt s) {
    const int ts = s.twice();
    if (ts < 1) throw InvalidQuantumNumbersError("spin must be at least 1/2");
    const int dim = ts + 1;
    SpinMatrix out{s, {CMat(dim, dim), CMat(dim, dim), CMat(dim, dim)}};
    for (int col = 0; col < dim; ++col) {
        const int tm = ts - 2 * col;
        out.comp[2](col, col) = CQSqrt(QSqrt(Rational(tm, 2)));
        if (col > 0) {
            // raising amplitude sqrt((s - m)(s + m + 1)) into row col - 1
            const QSqrt c = QSqrt::sqrt_of_rational(
                Rational(col) * Rational((ts - col) + 1));
            out.comp[0](col - 1, col) += CQSqrt(c * Rational(1, 2));
            out.comp[1](col - 1, col) += CQSqrt(QSqrt{}, -(c * Rational(1, 2)));
        }
        if (col < dim - 1) {
            // lowering amplitude sqrt((s + m)(s - m + 1)) into row col + 1
            const QSqrt c = QSqrt::sqrt_of_rational(
                Rational(ts - col) * Rational(col + 1));
            out.comp[0](col + 1, col) += CQSqrt(c * Rational(1, 2));
            out.comp[1](col + 1, col) += CQSqrt(QSqrt{}, c * Rational(1, 2));
        }
    }
    return out;
}

CTensor irreducible_part(const CTensor& t) {
    require_cartesian(t);
    const int n = t.rank();
    if (n <= 1) return t;
    if (n > kMaxExactRank)
        throw UnsupportedCaseError("irreducible projection is kept up to rank 4");
    return contract(sym_projector_ref(n), t, n);
}

std::complex<double> sph_harm(int l, HalfInt m, const std::array<double, 3>& rhat) {
    if (l < 0) throw InvalidQuantumNumbersError("degree must be non-negative");
    if (!m.is_integer())
        throw InvalidQuantumNumbersError("spherical harmonic order must be an integer");
    const double norm =
        std::sqrt(rhat[0] * rhat[0] + rhat[1] * rhat[1] + rhat[2] * rhat[2]);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::domain_error("spherical harmonic direction must be a unit vector");
    const int tm = m.twice();
    if (std::abs(tm) > 2 * l) return {};
    const double inv_two_sqrt_pi = 0.5 / std::sqrt(std::acos(-1.0));
    if (l == 0) return {inv_two_sqrt_pi, 0.0};

    // Scalar contractions g_k(m') = eps(k, m') . rhat^k, built level by
    // level; g1 is indexed by descending sz = 1, 0, -1.
    const std::complex<double> g1[3] = {
        {-rhat[0] / std::sqrt(2.0), -rhat[1] / std::sqrt(2.0)},
        {rhat[2], 0.0},
        {rhat[0] / std::sqrt(2.0), -rhat[1] / std::sqrt(2.0)},
    };
    std::vector<std::complex<double>> g(3);
    g[0] = g1[2];
    g[1] = g1[1];
    g[2] = g1[0];
    for (int k = 2; k <= l; ++k) {
        std::vector<std::complex<double>> next(static_cast<std::size_t>(2 * k + 1));
        for (int mp = -k; mp <= k; ++mp) {
            std::complex<double> acc;
            for (int sz = -1; sz <= 1; ++sz) {
                const int mq = mp - sz;
                if (std::abs(mq) > k - 1) continue;
                const QSqrt c =
                    cg(HalfInt(k - 1), HalfInt(mq), HalfInt(1), HalfInt(sz),
                       HalfInt(k), HalfInt(mp));
                if (c.is_zero()) continue;
                acc += c.to_float() * g[static_cast<std::size_t>(mq + k - 1)] *
                       g1[1 - sz];
            }
            next[static_cast<std::size_t>(mp + k)] = acc;
        }
        g = std::move(next);
    }
    const double scale =
        inv_two_sqrt_pi *
        std::sqrt(to_double(Rational(double_factorial(2 * l + 1), factorial(l))));
    return scale * g[static_cast<std::size_t>(tm / 2 + l)];
}

NTensor standard_tensor_numeric(int n, HalfInt m) {
    if (n < 1) throw InvalidQuantumNumbersError("tensor rank must be at least 1");
    if (!m.is_integer())
        throw InvalidQuantumNumbersError("integer-spin tensor needs an integer projection");
    if (n > kMaxNumericRank)
        throw UnsupportedCaseError("numeric standard tensors are kept up to rank 8");
    return standard_tensor_numeric_ref(n, m.twice());
}

NTensor standard_spinor_numeric(int n, HalfInt sz) {
    return to_numeric(standard_spinor(n, sz));
}

NTensor sym_projector_numeric(int n) {
    if (n < 1) throw InvalidQuantumNumbersError("projector rank must be at least 1");
    if (n > kMaxExactRank)
        throw UnsupportedCaseError("symmetric projectors are kept up to rank 4");
    return to_numeric(sym_projector_ref(n));
}

}  // namespace spincouple
