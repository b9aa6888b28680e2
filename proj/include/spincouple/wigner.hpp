// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <utility>

#include "spincouple/halfint.hpp"
#include "spincouple/qsqrt.hpp"

namespace spincouple {

/// True when j >= 0, |m| <= j, and j - m is an integer.
bool valid_jm(HalfInt j, HalfInt m);

/// True when (a, b, c) satisfies |a - b| <= c <= a + b with integer perimeter.
bool triangle(HalfInt a, HalfInt b, HalfInt c);

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>, exact.
/// Returns zero (not an error) outside the selection rules.
QSqrt cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6}, exact.
/// Returns zero when any of the four triads violates the triangle rules.
QSqrt sixj(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

/// Both sides of the recoupling identity that expands the product
/// <j1 m1; j2 m2 | j' m1+m2><j' m1+m2; j3 m3 | j m> over the complementary
/// intermediate momentum j''.  Returns {lhs, rhs}; they must be equal.
std::pair<QSqrt, QSqrt> recouple_check(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                                       HalfInt j3, HalfInt m3, HalfInt jp,
                                       HalfInt j, HalfInt m);

/// Capacity (entry count) of the bounded memo shared by cg and sixj.
/// 0 disables memoization.  The initial capacity is 2^20 entries, or the
/// value of the SPINCOUPLE_CACHE environment variable when set.
void set_coupling_cache_capacity(std::size_t entries);
std::size_t coupling_cache_capacity();

/// Drops all memoized coupling coefficients; capacity is unchanged.
void clear_coupling_cache();

}  // namespace spincouple
