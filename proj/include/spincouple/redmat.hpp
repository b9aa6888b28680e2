// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#pragma once

#include <vector>

#include "spincouple/halfint.hpp"
#include "spincouple/qsqrt.hpp"

namespace spincouple {

/// Factors allowed in reduced-matrix-element operator words.  Rhat and L
/// pair with orbital labels, T (the spin transition operator) and S with
/// spin labels.  Position-type factors precede angular-momentum-type ones.
enum class WordOp { Rhat, L, T, S };

/// Key for a reduced matrix element <bra || eps(n) . word || ket>, where
/// n is the word length and the word is contracted with a standard
/// rank-n tensor.
struct RedMatKey {
    HalfInt bra;
    HalfInt ket;
    std::vector<WordOp> word;
};

/// The three cross-product reduced matrix elements:
///   cross    <l'||eps (rhat ^ L)||l>,    nonzero for |dl| = 1
///   cross_l  <l'||eps (rhat ^ L) L||l>,  nonzero for |dl| = 1
///   r_cross  <l'||eps rhat (rhat ^ L)||l>, nonzero for |dl| = 2
enum class CrossKind { cross, cross_l, r_cross };

/// <j||eps(n) . J^n||j>: contracted power of an angular momentum
/// operator; diagonal in j, zero when 2j < n.
QSqrt redmat_J_power(HalfInt j, int n);

/// <lp||Y_L||l> in units of 1/sqrt(4 pi): the transcendental factor is
/// kept out of the exact value and restored by numeric consumers.
QSqrt redmat_Y(int lp, int L, int l);

/// <l'||eps(n) . rhat^n||l> for l' = l + sign*n (position versor powers
/// with maximal rank change).
QSqrt redmat_r_power(int l, int n, int sign);

/// <l+dl||eps(n) . rhat^|dl| L^(n-|dl|)||l>: mixed position and orbital
/// angular momentum word; |dl| <= n.
QSqrt redmat_r_L_mixed(int l, int n, int dl);

/// Cross-product matrix elements; imaginary-valued, hence complex return.
CQSqrt redmat_cross(CrossKind kind, int l, int dl);

/// Reduced matrix element for a general key, including the spin-space
/// analogs obtained by the substitution l -> s, rhat -> T, L -> S.
QSqrt redmat_spin_analog(const RedMatKey& key);

}  // namespace spincouple
