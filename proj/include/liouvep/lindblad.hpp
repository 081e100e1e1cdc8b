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

#include <vector>

#include "liouvep/noise_graph.hpp"
#include "liouvep/opspace.hpp"

namespace liouvep {

enum class JumpKind { Dephasing, Relaxation, Custom };

/// One jump operator per graph site, all living in the full Hilbert space.
struct JumpFamily {
  JumpKind kind = JumpKind::Custom;
  std::vector<CMatrix> ops;

  /// sigma_z on each of n_sites qubits.
  static JumpFamily dephasing(int n_sites);
  /// sigma_minus on each of n_sites qubits.
  static JumpFamily relaxation(int n_sites);
  /// Caller-supplied operators; must be non-empty, square, equal dims.
  static JumpFamily custom(std::vector<CMatrix> ops);

  int n() const { return static_cast<int>(ops.size()); }
  Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

/// Hamiltonian + jump family + correlated-noise model. One graph site per
/// jump operator.
struct LindbladModel {
  CMatrix hamiltonian;
  JumpFamily jumps;
  CorrelationModel correlation;

  Index dim() const { return hamiltonian.rows(); }
};

/// Validates: H Hermitian (NotHermitian), jump dims match H (DimMismatch),
/// jump count matches graph size (DimMismatch), rates admissible
/// (PositivityViolated).
LindbladModel make_model(CMatrix hamiltonian, JumpFamily jumps, CorrelationModel correlation,
                         double herm_tol = 1e-12);

/// A decoupled decay channel: rate plus collective jump operator.
struct CollectiveChannel {
  double rate;
  CMatrix op;
};

/// Rotate the site jumps into the graph eigenbasis: channel k carries
/// rate gamma0 (1 + c lambda_k) and operator sum_j U(j,k) L_j, ordered by
/// ascending adjacency eigenvalue. At c == 0 the site jumps are returned
/// unchanged (each with rate gamma0).
std::vector<CollectiveChannel> collective_jumps(const LindbladModel& m);

/// -i (I kron H - H^T kron I). Throws NotHermitian.
Superoperator hamiltonian_superop(const CMatrix& h, double herm_tol = 1e-12);

/// rate * (conj(L) kron L - 1/2 I kron L^dag L - 1/2 (L^dag L)^T kron I).
Superoperator dissipator_superop(double rate, const CMatrix& l);

/// Full generator of d rho / dt, assembled channel by channel from
/// collective_jumps.
Superoperator assemble_liouvillian(const LindbladModel& m);

/// Same generator assembled directly from the pairwise rate matrix
/// gamma0 (I + c A) without diagonalizing the graph. Agrees with
/// assemble_liouvillian to rounding; useful as a cross-check.
Superoperator assemble_pairwise(const LindbladModel& m);

/// Generator of Heisenberg-picture observable flow: Hamiltonian sign
/// flipped, sandwich term L^T kron L^dag.
Superoperator adjoint_liouvillian(const LindbladModel& m);

}  // namespace liouvep
