// Copyright 2026 The liouvep authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "liouvep/error.hpp"
#include "liouvep/types.hpp"

namespace liouvep {

/// Square complex matrix acting on a d-dimensional Hilbert space.
struct QOperator {
  CMatrix entries;

  /// Throws DimMismatch unless the matrix is square.
  explicit QOperator(CMatrix m);

  /// Validated constructor for Hermitian operators. The check is relative:
  /// max|M - M^dag| <= tol * max(1, max|M|). Throws NotHermitian.
  static QOperator hermitian(CMatrix m, double tol = 1e-12);

  /// Validated constructor for density matrices: Hermitian, trace one,
  /// eigenvalues >= -tol. Throws InvalidDensity.
  static QOperator density(CMatrix m, double tol = 1e-9);

  Index dim() const { return entries.rows(); }
};

/// Column-stacked operator: column j of the matrix occupies entries
/// [j*d, (j+1)*d). Length is always a perfect square.
struct OpVector {
  CVector entries;

  /// Throws NonSquareLength unless the length is a perfect square.
  explicit OpVector(CVector v);

  Index dim() const;
};

/// Dense d^2 x d^2 matrix acting on stacked operators.
struct Superoperator {
  CMatrix entries;

  /// Throws DimMismatch if not square, NonSquareLength if the side is not a
  /// perfect square.
  explicit Superoperator(CMatrix m);

  /// Hilbert-space dimension d (side is d^2).
  Index dim() const;
  Index vec_dim() const { return entries.rows(); }
};

/// Stack columns: vec(A)[i + j*d] = A(i, j).
OpVector vectorize(const QOperator& a);

/// Inverse of vectorize.
QOperator devectorize(const OpVector& v);

/// s applied to v. Throws DimMismatch on length disagreement.
OpVector apply(const Superoperator& s, const OpVector& v);

/// Kronecker product, row-major block convention: (A kron B)(i*p+k, j*q+l)
/// = A(i,j) B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Superoperator for X -> A X, i.e. I kron A under column stacking.
Superoperator left_mult(const QOperator& a);

/// Superoperator for X -> X B, i.e. B^T kron I under column stacking.
Superoperator right_mult(const QOperator& b);

/// Hilbert-Schmidt inner product tr(A^dag B); conjugation on the first
/// argument.
Complex hs_inner(const QOperator& a, const QOperator& b);

/// vec of the d x d identity.
CVector vectorized_identity(Index d);

// Single-qubit building blocks. Basis convention: |0> is the ground state,
// |1> the excited state; sigma_z = diag(1, -1), sigma_minus = |0><1|.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix sigma_plus();
CMatrix sigma_minus();

/// local (2x2) acting on `site` of an n-site qubit register, identity
/// elsewhere. Site 0 is the leftmost Kronecker factor, so a basis index
/// reads as the bit string q_0 q_1 ... q_{n-1}. Throws DimMismatch on a
/// non-2x2 local operator, a site out of range, or n_sites outside [1, 14].
CMatrix site_operator(int n_sites, int site, const CMatrix& local);

}  // namespace liouvep
