// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <utility>

#include "spincouple/halfint.hpp"
#include "spincouple/qsqrt.hpp"

namespace spincouple {

/// One product of two Clebsch-Gordan coefficients sharing a total angular
/// momentum j: the primed coupling (l_to, s_to) and the unprimed coupling
/// (l_from, s_from), with all four projections fixed.
struct CouplingCase {
  HalfInt j;
  HalfInt s_to;
  HalfInt s_from;
  int l_to = 0;
  int l_from = 0;
  HalfInt lpz;
  HalfInt lz;
  HalfInt spz;
  HalfInt sz;
};

/// Names one tabulated coefficient: the spin pair, the transfer rank delta,
/// the orbital labels, and the total angular momentum.
struct CoeffTableKey {
  HalfInt s_to;
  HalfInt s_from;
  int delta = 0;
  int l_to = 0;
  int l_from = 0;
  HalfInt j;
};

/// cg(l_to, lpz; s_to, spz | j, jz) cg(l_from, lz; s_from, sz | j, jz),
/// zero when the two total projections differ.
QSqrt s_direct(const CouplingCase& c);

/// The same product evaluated through the recoupling sum over transfer
/// ranks, with a 6j symbol and one orbital and one spin Clebsch-Gordan
/// coefficient per rank.
QSqrt s_factorized(const CouplingCase& c);

/// The transfer-rank sum with each term split into a coefficient, an
/// orbital matrix element restored from its reduced value, and a spin
/// matrix element assembled from operator products.  Supported spin pairs
/// only; a total angular momentum that fails to couple either side gives
/// zero.
QSqrt s_operator_form(const CouplingCase& c);

/// The transfer-rank sum in its shortest form: one tabulated prefactor
/// times one orbital and one spin Clebsch-Gordan coefficient per rank.
QSqrt s_kappa_form(const CouplingCase& c);

/// Coefficient of one transfer rank from the master formula: phases,
/// dimensional factors, and a 6j symbol divided by the orbital and spin
/// reduced matrix elements of the transfer word.
QSqrt coeff_C_general(HalfInt s_to, HalfInt s_from, int delta, int l_to,
                      int l_from, HalfInt j);

/// The same coefficient from its printed closed form, available for the
/// supported spin pairs on their coupled domains.
QSqrt coeff_C_table(const CoeffTableKey& key);

/// Prefactor multiplying the orbital and spin Clebsch-Gordan coefficients
/// of one transfer rank in the shortest form of the sum.
QSqrt coeff_kappa_table(const CoeffTableKey& key);

/// Both sides of the ratio identity relating the label-change form to the
/// total-angular-momentum form: (2<l>+1)/(2 l1 + 1) against
/// (2j+1)/(2j+1+dl) for j = l + dl/2 with dl = +-1.
std::pair<QSqrt, QSqrt> alt_ratio_check(int l, HalfInt j);

}  // namespace spincouple
