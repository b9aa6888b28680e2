// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <utility>
#include <vector>

#include "spincouple/halfint.hpp"
#include "spincouple/qsqrt.hpp"
#include "spincouple/redmat.hpp"
#include "spincouple/tensor.hpp"

namespace spincouple {

/// Cartesian component blocks of the spin transition operator between two
/// spin multiplets, rows and columns ordered by descending projection.
struct TMatrix {
  HalfInt s_from;
  HalfInt s_to;
  std::array<CMat, 3> comp;
};

/// Component matrices of the transition operator mapping spin s_from states
/// to spin s_to states.  The operator changes the spin by exactly one, so
/// any other pair yields zero matrices of the corresponding shape.
TMatrix t_matrix(HalfInt s_to, HalfInt s_from);

/// Flattened list of 3^n component matrices for an operator word acting
/// between two multiplets.  Entry k is the product W(h1)...W(hn) whose
/// Cartesian indices (h1..hn) are the big-endian base-3 digits of k, with
/// the rightmost factor acting first.  Orbital words are built from
/// {Rhat, L} between integer labels, spin words from {T, S}; the two
/// transition operators sum over every reachable intermediate multiplet.
std::vector<CMat> word_blocks(HalfInt j_to, const std::vector<WordOp>& word,
                              HalfInt j_from);

/// How spin_me assembles its value: by multiplying component matrices, or
/// by evaluating the printed spinor contractions for the low-spin catalog.
enum class SpinMeRoute { matrix, spinor };

/// <s_to, spz| eps(n, m)^* . word |s_from, sz> for a spin word over {T, S}
/// of length n <= 3 between multiplets with spins <= 3/2.  The two routes
/// must agree exactly; the spinor route exists only for the cataloged
/// words and spin pairs.
CQSqrt spin_me(HalfInt s_to, HalfInt spz, const std::vector<WordOp>& word,
               HalfInt m, HalfInt s_from, HalfInt sz,
               SpinMeRoute route = SpinMeRoute::matrix);

/// One instance of the contraction rewriting identity: an orbital word and
/// a spin word of equal length, each with fixed bra and ket states.
struct ContractionCase {
  int l_to = 0;
  HalfInt lpz;
  int l_from = 0;
  HalfInt lz;
  std::vector<WordOp> orbital;
  HalfInt s_to;
  HalfInt spz;
  HalfInt s_from;
  HalfInt sz;
  std::vector<WordOp> spin;
};

/// Evaluates both sides of the rewriting identity that trades the sum over
/// transfer projections for one symmetric traceless contraction.  First:
/// <l'|eps(n, dlz) . orbital|l> times <s'|eps(n, dlz)^* . spin|s> with
/// dlz = lpz - lz.  Second: the double contraction of the two component
/// words through the symmetric traceless projector.  The two are equal for
/// every projection assignment.
std::pair<CQSqrt, CQSqrt> symtrace_contract_equiv(const ContractionCase& c);

}  // namespace spincouple
