// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "spincouple/redmat.hpp"
#include "spincouple/tensor.hpp"

namespace spincouple {

/// Bra and ket directions for configuration-space matrix elements,
/// with the derived scalar x = rhat . rhatp and bivector v = rhat ^ rhatp.
/// rhat labels the ket state and rhatp the bra state.
struct GeomFrame {
    std::array<double, 3> rhat;
    std::array<double, 3> rhatp;
    double x = 1.0;
    std::array<double, 3> v{};
};

/// Build a frame from arbitrary nonzero vectors; inputs are normalized.
GeomFrame make_frame(const std::array<double, 3>& ket_dir,
                     const std::array<double, 3>& bra_dir);

/// Direction-basis kernel of the projector onto orbital momentum l,
/// <rhatp| P_l |rhat> = (2l+1)/(4pi) P_l(x).
double proj_kernel(int l, const GeomFrame& f);

/// <rhatp| L^{h1} ... L^{hp} P_l |rhat> as a rank-p Cartesian tensor;
/// axis k carries the index of the k-th factor and the rightmost factor
/// acts first.  1 <= p <= 4.
NTensor me_L_power(int p, int l, const GeomFrame& f);

/// <rhatp| P_{l_n} r^{i1} ... r^{in} P_l |rhat> for the unit position
/// operator, with the ladder l_k = l + sign*k; requires 1 <= n <= 4 and
/// l_n >= 0.  Axis k carries the index of the k-th factor.
NTensor me_r_power(int n, int sign, int l, const GeomFrame& f);

/// <rhatp| P_{l_n} r^{i1}..r^{in} L^{h1}..L^{ht} P_l |rhat> with the
/// position factors to the left of the momentum factors; the first n
/// axes are position indices, the last t momentum indices.  Requires
/// n >= 1, t >= 1, n + t <= 4, and l_n = l + sign*n >= 0.
NTensor me_mixed(int n, int t, int sign, int l, const GeomFrame& f);

/// Multiplet matrix <l_to m'| W^{a1}..W^{ar} |l_from m> of a word over
/// {Rhat, L}, computed from ladder amplitudes for L factors and sphere
/// quadrature for position factors.  Axes are the r Cartesian word
/// indices followed by the row and column, both ordered by descending
/// projection.  The empty word gives the identity or zero block.
NTensor oracle_orbital_me(const std::vector<WordOp>& word, int l_to, int l_from);

/// Brute-force direction-basis matrix element
/// sum_{m',m} Y_{l_to m'}(rhatp) <l_to m'|W|l_from m> Y_{l_from m}(rhat)*
/// over the same words as oracle_orbital_me; rank equals the word length.
NTensor oracle_sum(const std::vector<WordOp>& word, int l_to, int l_from,
                   const GeomFrame& f);

/// Both sides of the projected radial dot product identity
/// <rhatp| P_{l+sign} (rhatp . r) P_l |rhat>, the left by sphere
/// quadrature and the right from the closed form
/// (l_1 + l + 1)/(2(2l+1)) <rhatp| P_l |rhat>.
std::pair<double, double> projected_dot_check(int l, int sign, const GeomFrame& f);

/// Gauss-Legendre nodes and weights on [-1, 1], exact for polynomials
/// of degree 2n - 1.
std::vector<std::pair<double, double>> gauss_legendre(int n);

}  // namespace spincouple
