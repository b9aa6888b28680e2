// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <complex>

#include "spincouple/halfint.hpp"
#include "spincouple/tensor.hpp"

namespace spincouple {

/// Spin operator in the |s, sz> basis, rows and columns ordered by
/// descending projection sz = s, s-1, ..., -s.  comp[k] holds S^{k+1};
/// each component is Hermitian and the triple obeys [S^1, S^2] = i S^3.
struct SpinMatrix {
    HalfInt s;
    std::array<CMat, 3> comp;
};

/// Totally antisymmetric rank-3 tensor with entry +1 at (0,1,2).
const CTensor& levi_civita();

/// Pauli matrices sigma^1, sigma^2, sigma^3 on the spin-1/2 basis.
const std::array<CMat, 3>& pauli_matrices();

/// Standard basis vector of the adjoint representation; zero unless
/// m is one of -1, 0, 1.
CTensor standard_vector(HalfInt m);

/// Standard irreducible rank-n tensor built by maximal coupling of n
/// basis vectors; zero when |m| > n.  Exact entries, n <= 4.
CTensor standard_tensor(int n, HalfInt m);

/// Standard spin-(n+1/2) spinor with n Cartesian axes and a trailing
/// spinor axis; n = 0 gives the bare Pauli spinor.  Exact, n <= 4.
SpinorTensor standard_spinor(int n, HalfInt sz);

/// Orthogonal projector of rank-n tensors onto the completely symmetric
/// traceless subspace, as a rank-2n tensor, 1 <= n <= 4.
CTensor sym_projector(int n);

/// Orthogonal projector of spinor-valued rank-n tensors onto the
/// spin-(n+1/2) subspace; axes are n Cartesian + spinor (row block)
/// followed by n Cartesian + spinor (column block), n >= 1.
CTensor spinor_projector(int n);

/// Spin matrices for arbitrary spin s >= 1/2 in the standard basis.
SpinMatrix spin_operator(HalfInt s);

/// Projection of a Cartesian tensor onto its completely symmetric
/// traceless part, rank <= 4.
CTensor irreducible_part(const CTensor& t);

/// Spherical harmonic evaluated on a unit vector (checked to 1e-12);
/// zero when |m| > l.  Any l >= 0.
std::complex<double> sph_harm(int l, HalfInt m, const std::array<double, 3>& rhat);

/// Numeric variants of the standard bases, usable at ranks where exact
/// entries are not kept.
NTensor standard_tensor_numeric(int n, HalfInt m);
NTensor standard_spinor_numeric(int n, HalfInt sz);
NTensor sym_projector_numeric(int n);

}  // namespace spincouple
