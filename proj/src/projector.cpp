// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#include "spincouple/projector.hpp"

#include <cmath>
#include <complex>
#include <deque>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "spincouple/errors.hpp"
#include "spincouple/ratpoly.hpp"
#include "spincouple/tensorbasis.hpp"

namespace spincouple {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

using Cplx = std::complex<double>;

Cplx unit_power(int p) {
    switch (((p % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Product tensor of real 3-vectors; axis k carries the index of vs[k].
NTensor outer(const std::vector<const std::array<double, 3>*>& vs) {
    NTensor t = NTensor::scalar({1.0, 0.0});
    for (const auto* v : vs) {
        NTensor a({3});
        for (int i = 0; i < 3; ++i) a[static_cast<std::size_t>(i)] = {(*v)[i], 0.0};
        t = tensor_product(t, a);
    }
    return t;
}

const NTensor& sym_projector_cached(int n) {
    static std::deque<NTensor> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    while (static_cast<int>(cache.size()) < n)
        cache.push_back(sym_projector_numeric(static_cast<int>(cache.size()) + 1));
    return cache[static_cast<std::size_t>(n - 1)];
}

/// Symmetric traceless part of a Cartesian tensor of rank <= 4.
NTensor irreducible_numeric(const NTensor& t) {
    if (t.rank() <= 1) return t;
    return contract(sym_projector_cached(t.rank()), t, t.rank());
}

void require_sign(int sign) {
    if (sign != 1 && sign != -1)
        throw InvalidQuantumNumbersError("ladder sign must be +1 or -1");
}

void require_frame(const GeomFrame& f) {
    for (const auto* v : {&f.rhat, &f.rhatp}) {
        const double n2 = (*v)[0] * (*v)[0] + (*v)[1] * (*v)[1] + (*v)[2] * (*v)[2];
        if (std::abs(n2 - 1.0) > 1e-12)
            throw std::invalid_argument("frame directions must be unit vectors");
    }
}

/// Prefactor of the position-power closed form without the 1/(4pi):
/// (l_1 - l)^n (2l+1) / prod_{k<n} (2 l_k + 1).
Rational ladder_prefactor(int n, int sign, int l) {
    Rational a(2 * l + 1);
    for (int k = 0; k < n; ++k) a /= 2 * (l + sign * k) + 1;
    if (sign < 0 && n % 2 != 0) a = -a;
    return a;
}

/// Associated Legendre data for one degree: the m-th derivatives of P_l
/// and the spherical harmonic normalizations, m = 0..l.
struct YTable {
    std::vector<RatPoly> dp;
    std::vector<double> norm;
};

const YTable& y_table(int l) {
    static std::deque<YTable> cache;
    static std::mutex mu;
    std::scoped_lock lock(mu);
    while (static_cast<int>(cache.size()) <= l) {
        const int d = static_cast<int>(cache.size());
        YTable t;
        for (int m = 0; m <= d; ++m) {
            t.dp.push_back(legendre(d, m));
            t.norm.push_back(std::sqrt(
                to_double(Rational((2 * d + 1) * factorial(d - m), factorial(d + m))) /
                kFourPi));
        }
        cache.push_back(std::move(t));
    }
    return cache[static_cast<std::size_t>(l)];
}

/// All spherical harmonics of one degree at (cos theta, sin theta, phi),
/// ordered by descending projection m = l..-l.
std::vector<Cplx> ylm_all(int l, double ct, double st, double phi) {
    const YTable& t = y_table(l);
    std::vector<Cplx> out(static_cast<std::size_t>(2 * l + 1));
    const Cplx e1 = std::polar(1.0, phi);
    Cplx em = {1.0, 0.0};
    double sm = 1.0;
    double phase = 1.0;
    for (int m = 0; m <= l; ++m) {
        const double p = phase * sm * t.dp[static_cast<std::size_t>(m)].eval(ct);
        const Cplx val = t.norm[static_cast<std::size_t>(m)] * p * em;
        out[static_cast<std::size_t>(l - m)] = val;
        out[static_cast<std::size_t>(l + m)] = phase * std::conj(val);
        em *= e1;
        sm *= st;
        phase = -phase;
    }
    return out;
}

struct SphereGrid {
    std::vector<std::pair<double, double>> nodes;  // (cos theta, weight)
    int n_phi = 0;
};

SphereGrid sphere_grid(int n_theta, int n_phi) {
    return {gauss_legendre(n_theta), n_phi};
}

/// Quadrature blocks <l_to m'| r^h |l_from m> on a shared grid, cached by
/// labels and grid size; axes are the component, row, and column.
const NTensor& rhat_block(int l_to, int l_from, int n_theta, int n_phi) {
    using Key = std::array<int, 4>;
    static std::map<Key, NTensor> cache;
    static std::mutex mu;
    const Key key{l_to, l_from, n_theta, n_phi};
    {
        std::scoped_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const int dt = 2 * l_to + 1;
    const int df = 2 * l_from + 1;
    NTensor block({3, dt, df});
    const SphereGrid grid = sphere_grid(n_theta, n_phi);
    const double wphi = 2.0 * std::numbers::pi / grid.n_phi;
    for (const auto& [ct, wt] : grid.nodes) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int b = 0; b < grid.n_phi; ++b) {
            const double phi = wphi * b;
            const double dir[3] = {st * std::cos(phi), st * std::sin(phi), ct};
            const std::vector<Cplx> yt = ylm_all(l_to, ct, st, phi);
            const std::vector<Cplx> yf = ylm_all(l_from, ct, st, phi);
            const double w = wt * wphi;
            for (int h = 0; h < 3; ++h) {
                const double c = w * dir[h];
                if (c == 0.0) continue;
                for (int i = 0; i < dt; ++i) {
                    const Cplx left = c * std::conj(yt[static_cast<std::size_t>(i)]);
                    for (int j = 0; j < df; ++j)
                        block.at({h, i, j}) += left * yf[static_cast<std::size_t>(j)];
                }
            }
        }
    }
    std::scoped_lock lock(mu);
    return cache.try_emplace(key, std::move(block)).first->second;
}

void require_orbital_word(const std::vector<WordOp>& word) {
    for (WordOp op : word)
        if (op != WordOp::Rhat && op != WordOp::L)
            throw InvalidQuantumNumbersError(
                "projector words are built from position and momentum factors");
}

double ladder_up(int l, int m) {
    return std::sqrt(static_cast<double>(l) * (l + 1) - static_cast<double>(m) * (m + 1));
}

}  // namespace

GeomFrame make_frame(const std::array<double, 3>& ket_dir,
                     const std::array<double, 3>& bra_dir) {
    GeomFrame f;
    const std::array<const std::array<double, 3>*, 2> in{&ket_dir, &bra_dir};
    const std::array<std::array<double, 3>*, 2> out{&f.rhat, &f.rhatp};
    for (int k = 0; k < 2; ++k) {
        const auto& v = *in[static_cast<std::size_t>(k)];
        const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("frame directions must be nonzero finite vectors");
        for (int i = 0; i < 3; ++i) (*out[static_cast<std::size_t>(k)])[i] = v[i] / n;
    }
    f.x = f.rhat[0] * f.rhatp[0] + f.rhat[1] * f.rhatp[1] + f.rhat[2] * f.rhatp[2];
    f.v = {f.rhat[1] * f.rhatp[2] - f.rhat[2] * f.rhatp[1],
           f.rhat[2] * f.rhatp[0] - f.rhat[0] * f.rhatp[2],
           f.rhat[0] * f.rhatp[1] - f.rhat[1] * f.rhatp[0]};
    return f;
}

double proj_kernel(int l, const GeomFrame& f) {
    if (l < 0) throw InvalidQuantumNumbersError("orbital momentum must be non-negative");
    require_frame(f);
    return (2 * l + 1) / kFourPi * legendre(l).eval(f.x);
}

NTensor me_L_power(int p, int l, const GeomFrame& f) {
    if (p < 1 || p > 4)
        throw InvalidQuantumNumbersError("momentum power is kept for 1 <= p <= 4");
    if (l < 0) throw InvalidQuantumNumbersError("orbital momentum must be non-negative");
    require_frame(f);
    NTensor raw(std::vector<int>(static_cast<std::size_t>(p), 3));
    for (int q = 0; 2 * q <= p; ++q) {
        const double c =
            to_double(Rational(double_factorial(2 * q - 1) * binomial(p, 2 * q))) *
            legendre(l, p - q).eval(f.x);
        if (c == 0.0) continue;
        std::vector<const std::array<double, 3>*> vs;
        vs.insert(vs.end(), static_cast<std::size_t>(q), &f.rhat);
        vs.insert(vs.end(), static_cast<std::size_t>(q), &f.rhatp);
        vs.insert(vs.end(), static_cast<std::size_t>(p - 2 * q), &f.v);
        raw += Cplx{c, 0.0} * outer(vs);
    }
    const Cplx pref = unit_power(p) * ((2 * l + 1) / kFourPi);
    return pref * irreducible_numeric(raw);
}

NTensor me_r_power(int n, int sign, int l, const GeomFrame& f) {
    if (n < 1 || n > 4)
        throw InvalidQuantumNumbersError("position power is kept for 1 <= n <= 4");
    require_sign(sign);
    if (l < 0 || l + sign * n < 0)
        throw InvalidQuantumNumbersError("orbital momentum ladder must stay non-negative");
    require_frame(f);
    NTensor raw(std::vector<int>(static_cast<std::size_t>(n), 3));
    for (int k1 = 0; k1 <= n; ++k1) {
        const int k2 = n - k1;
        const Int num = binomial(n, k1) * (k2 % 2 != 0 ? -1 : 1);
        const double c = to_double(Rational(num)) * legendre(l + sign * k1, n).eval(f.x);
        if (c == 0.0) continue;
        std::vector<const std::array<double, 3>*> vs;
        vs.insert(vs.end(), static_cast<std::size_t>(k2), &f.rhat);
        vs.insert(vs.end(), static_cast<std::size_t>(k1), &f.rhatp);
        raw += Cplx{c, 0.0} * outer(vs);
    }
    const Cplx pref{to_double(ladder_prefactor(n, sign, l)) / kFourPi, 0.0};
    return pref * irreducible_numeric(raw);
}

NTensor me_mixed(int n, int t, int sign, int l, const GeomFrame& f) {
    if (n < 1 || t < 1 || n + t > 4)
        throw InvalidQuantumNumbersError(
            "mixed words need n >= 1 and t >= 1 with n + t <= 4");
    require_sign(sign);
    if (l < 0 || l + sign * n < 0)
        throw InvalidQuantumNumbersError("orbital momentum ladder must stay non-negative");
    require_frame(f);
    NTensor raw(std::vector<int>(static_cast<std::size_t>(n + t), 3));
    for (int k1 = 0; k1 <= n; ++k1) {
        const int k2 = n - k1;
        for (int q = 0; 2 * q <= t; ++q) {
            const Int num = binomial(n, k1) * double_factorial(2 * q - 1) *
                            binomial(t, 2 * q) * (k2 % 2 != 0 ? -1 : 1);
            const double c = to_double(Rational(num)) *
                             legendre(l + sign * k1, n + t - q).eval(f.x);
            if (c == 0.0) continue;
            std::vector<const std::array<double, 3>*> vs;
            vs.insert(vs.end(), static_cast<std::size_t>(k2 + q), &f.rhat);
            vs.insert(vs.end(), static_cast<std::size_t>(k1 + q), &f.rhatp);
            vs.insert(vs.end(), static_cast<std::size_t>(t - 2 * q), &f.v);
            raw += Cplx{c, 0.0} * outer(vs);
        }
    }
    const Cplx pref =
        unit_power(t) * (to_double(ladder_prefactor(n, sign, l)) / kFourPi);
    return pref * irreducible_numeric(raw);
}

NTensor oracle_orbital_me(const std::vector<WordOp>& word, int l_to, int l_from) {
    if (l_to < 0 || l_from < 0)
        throw InvalidQuantumNumbersError("orbital momentum must be non-negative");
    require_orbital_word(word);
    const int rank = static_cast<int>(word.size());
    int n_r = 0;
    for (WordOp op : word)
        if (op == WordOp::Rhat) ++n_r;
    const int n_theta = l_to + l_from + n_r + 4;
    const int n_phi = 2 * (l_to + l_from + n_r) + 4;
    const int dt = 2 * l_to + 1;
    const int df = 2 * l_from + 1;

    std::vector<int> dims(static_cast<std::size_t>(rank), 3);
    dims.push_back(dt);
    dims.push_back(df);
    NTensor out(dims);

    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    do {
        for (int col = 0; col < df; ++col) {
            using State = std::map<std::pair<int, int>, Cplx>;
            State state{{{l_from, l_from - col}, Cplx{1.0, 0.0}}};
            for (int k = rank - 1; k >= 0; --k) {
                // Factors still to apply can shift the label by at most
                // one step each; drop states that cannot reach l_to.
                int reach = 0;
                for (int j = 0; j < k; ++j)
                    if (word[static_cast<std::size_t>(j)] == WordOp::Rhat) ++reach;
                const int h = idx[static_cast<std::size_t>(k)];
                State next;
                for (const auto& [lm, amp] : state) {
                    const auto [lc, mc] = lm;
                    if (word[static_cast<std::size_t>(k)] == WordOp::L) {
                        if (std::abs(lc - l_to) > reach) continue;
                        if (h == 2) {
                            if (mc != 0) next[{lc, mc}] += amp * static_cast<double>(mc);
                            continue;
                        }
                        const double up = mc < lc ? ladder_up(lc, mc) : 0.0;
                        const double dn = mc > -lc ? ladder_up(lc, mc - 1) : 0.0;
                        if (h == 0) {
                            if (up != 0.0) next[{lc, mc + 1}] += amp * (0.5 * up);
                            if (dn != 0.0) next[{lc, mc - 1}] += amp * (0.5 * dn);
                        } else {
                            if (up != 0.0) next[{lc, mc + 1}] += amp * Cplx{0.0, -0.5 * up};
                            if (dn != 0.0) next[{lc, mc - 1}] += amp * Cplx{0.0, 0.5 * dn};
                        }
                        continue;
                    }
                    for (int l2 : {lc - 1, lc + 1}) {
                        if (l2 < 0 || std::abs(l2 - l_to) > reach) continue;
                        const NTensor& block = rhat_block(l2, lc, n_theta, n_phi);
                        for (int m2 = std::max(mc - 1, -l2); m2 <= std::min(mc + 1, l2); ++m2) {
                            const Cplx b = block.at({h, l2 - m2, lc - mc});
                            if (b != Cplx{}) next[{l2, m2}] += amp * b;
                        }
                    }
                }
                state = std::move(next);
            }
            for (const auto& [lm, amp] : state) {
                if (lm.first != l_to) continue;
                std::vector<int> full = idx;
                full.push_back(l_to - lm.second);
                full.push_back(col);
                out.at(full) = amp;
            }
        }
    } while (next_index(idx, std::vector<int>(static_cast<std::size_t>(rank), 3)));
    return out;
}

NTensor oracle_sum(const std::vector<WordOp>& word, int l_to, int l_from,
                   const GeomFrame& f) {
    require_frame(f);
    const NTensor me = oracle_orbital_me(word, l_to, l_from);
    const int rank = static_cast<int>(word.size());
    const int dt = 2 * l_to + 1;
    const int df = 2 * l_from + 1;
    std::vector<Cplx> yb(static_cast<std::size_t>(dt));
    std::vector<Cplx> yk(static_cast<std::size_t>(df));
    for (int i = 0; i < dt; ++i)
        yb[static_cast<std::size_t>(i)] = sph_harm(l_to, HalfInt(l_to - i), f.rhatp);
    for (int j = 0; j < df; ++j)
        yk[static_cast<std::size_t>(j)] =
            std::conj(sph_harm(l_from, HalfInt(l_from - j), f.rhat));
    NTensor out(std::vector<int>(static_cast<std::size_t>(rank), 3));
    for (std::size_t a = 0; a < out.size(); ++a) {
        Cplx acc{};
        const std::size_t base = a * static_cast<std::size_t>(dt) *
                                 static_cast<std::size_t>(df);
        for (int i = 0; i < dt; ++i)
            for (int j = 0; j < df; ++j)
                acc += yb[static_cast<std::size_t>(i)] *
                       me[base + static_cast<std::size_t>(i * df + j)] *
                       yk[static_cast<std::size_t>(j)];
        out[a] = acc;
    }
    return out;
}

std::pair<double, double> projected_dot_check(int l, int sign, const GeomFrame& f) {
    require_sign(sign);
    const int l1 = l + sign;
    if (l < 0 || l1 < 0)
        throw InvalidQuantumNumbersError("orbital momentum ladder must stay non-negative");
    require_frame(f);
    const int n_theta = l1 + l + 1 + 4;
    const int n_phi = 2 * (l1 + l + 1) + 4;
    const SphereGrid grid = sphere_grid(n_theta, n_phi);
    const double wphi = 2.0 * std::numbers::pi / grid.n_phi;
    const RatPoly pl1 = legendre(l1);
    const RatPoly pl = legendre(l);
    double lhs = 0.0;
    for (const auto& [ct, wt] : grid.nodes) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int b = 0; b < grid.n_phi; ++b) {
            const double phi = wphi * b;
            const double q[3] = {st * std::cos(phi), st * std::sin(phi), ct};
            const double xb = q[0] * f.rhatp[0] + q[1] * f.rhatp[1] + q[2] * f.rhatp[2];
            const double xk = q[0] * f.rhat[0] + q[1] * f.rhat[1] + q[2] * f.rhat[2];
            lhs += wt * wphi * pl1.eval(xb) * xb * pl.eval(xk);
        }
    }
    lhs *= (2 * l1 + 1) / kFourPi * (2 * l + 1) / kFourPi;
    const double rhs = to_double(Rational(l1 + l + 1, 2 * (2 * l + 1))) * proj_kernel(l, f);
    return {lhs, rhs};
}

std::vector<std::pair<double, double>> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        out[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return out;
}

}  // namespace spincouple
