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

#include <optional>
#include <utility>
#include <vector>

#include "liouvep/opspace.hpp"

namespace liouvep {

struct SpectralOptions {
  /// Relative singular-value threshold for kernel-rank decisions.
  double rank_tol = 1e-8;
  /// Cluster radius as a fraction of the Frobenius norm of the generator.
  double cluster_radius_rel = 1e-6;
  /// Skip the per-cluster defectiveness tests (they cost one SVD pair per
  /// multi-member cluster).
  bool compute_clusters = true;
};

/// Group of eigenvalues closer than the cluster radius (single linkage).
struct EigCluster {
  Complex center = 0.0;      // mean of the members
  std::vector<int> members;  // indices into SpectralReport::eigvals
  int delta1 = 1;            // dim ker (L - center)
  int delta2 = 1;            // dim ker (L - center)^2
  bool defective = false;    // delta2 > delta1
};

struct SpectralReport {
  CVector eigvals;   // sorted by (Re, Im) ascending
  CMatrix eigvecs;   // unit columns matching eigvals
  double sigma_min = 0.0;     // smallest singular value of the eigvec matrix
  double ep_strength = 0.0;   // 1 / sigma_min; +inf when sigma_min underflows
  bool ep_overflow = false;
  double max_residual = 0.0;  // max_k |L v_k - lambda_k v_k|_2 (absolute)
  std::vector<EigCluster> clusters;
};

/// Dense eigendecomposition plus eigenvector-conditioning diagnostics.
/// Throws EigFailure if the QR iteration does not converge.
SpectralReport decompose(const Superoperator& s, const SpectralOptions& opts = {});

/// 1 / sigma_min of the column-normalized eigenvector matrix. Equals 1 for
/// an orthonormal basis (normal generator) and diverges as eigenvectors
/// coalesce. May return +inf.
double ep_strength_of(const CMatrix& eigvecs);

/// Single-linkage grouping of eigenvalues with the given absolute radius.
/// Each group is sorted; groups are ordered by their smallest member index.
std::vector<std::vector<int>> cluster_indices(const CVector& eigvals, double radius);

struct DefectReport {
  int delta1 = 0;  // dim ker (L - lambda)
  int delta2 = 0;  // dim ker (L - lambda)^2
  bool defective = false;
};

/// Kernel ranks of (L - lambda I) and its square, via SVD with relative
/// threshold rank_tol. delta2 > delta1 signals a nontrivial Jordan block.
DefectReport defectiveness_test(const CMatrix& l, Complex lambda, double rank_tol = 1e-8);

/// |L^dag applied to the identity| / (sqrt(d) |L|_F): zero for any
/// trace-preserving generator.
double trace_preservation_residual(const Superoperator& s);

/// Relative norm of the block mapping traceless operators onto the trace
/// component; zero when the trace direction is a left eigenvector.
double traceless_block_residual(const Superoperator& s);

/// First two links of a Jordan chain at lambda: returns (x0, x1) with
/// L x1 = lambda x1 + x0 and L x0 = lambda x0, x1 unit norm. Returns
/// nullopt when the eigenvalue is not defective at this tolerance.
std::optional<std::pair<CVector, CVector>> jordan_chain_from(const CMatrix& l, Complex lambda,
                                                             double rank_tol = 1e-8);

}  // namespace liouvep
