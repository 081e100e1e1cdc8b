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

#include <array>
#include <string>

#include "liouvep/lindblad.hpp"

namespace liouvep {

enum class DimerChannel { Dephasing, Relaxation };

/// Two-site benchmark model. The Hamiltonian is
///   H = j (sp_1 sm_2 + sm_1 sp_2) + (delta/2)(sz_1 - sz_2),
/// the jumps are sigma_z (dephasing) or sigma_minus (relaxation) on each
/// site, and the two sites share correlated noise with strength c in
/// [-1, 1]. `gamma` is the rate that appears in the closed-form reduced
/// generators below; internally the dephasing channel uses a base rate
/// gamma/2 and the relaxation channel uses gamma.
struct DimerParams {
  DimerChannel channel = DimerChannel::Dephasing;
  double gamma = 1.0;
  double c = 0.0;
  double j = 0.0;      // tunneling, used by the dephasing formulas
  double delta = 0.0;  // on-site splitting, used by the relaxation formulas
};

/// Full-space model (16x16 generator). Throws on invalid rates/correlation.
LindbladModel build_dimer_model(const DimerParams& p);

/// Convenience: assemble_liouvillian(build_dimer_model(p)).
Superoperator full_dimer_liouvillian(const DimerParams& p);

/// Closed 2x2 generator plus the labels of its operator basis.
struct ReducedGenerator {
  Eigen::Matrix2d matrix;
  std::array<std::string, 2> basis;
};

/// Heisenberg flow of the coherence pair (tau_y, tau_z) in the
/// single-excitation manifold:
///   [[-2 gamma (1-c), -2 j], [2 j, 0]].
/// Exact: the pair closes with zero leakage. Throws WrongChannel unless
/// p.channel is Dephasing.
ReducedGenerator reduced_dephasing(const DimerParams& p);

/// Closed-form branch pair for the relaxation channel,
///   [[0, -delta], [delta, -gamma (1-2c)]],
/// chosen so its eigenvalues match relaxation_eigs. Note: unlike the
/// dephasing pair this is a two-mode model, not an exact reduction; see
/// relaxation_sector for the subspace that actually closes. Throws
/// WrongChannel unless p.channel is Relaxation.
ReducedGenerator reduced_relaxation(const DimerParams& p);

/// Eigenvalues -gamma(1-c) +- sqrt(gamma^2 (1-c)^2 - 4 j^2).
std::pair<Complex, Complex> dephasing_eigs(const DimerParams& p);

/// Eigenvalues of the branch pair:
/// (-b +- sqrt(b^2 - 4 delta^2))/2 with b = gamma (1-2c).
std::pair<Complex, Complex> relaxation_eigs(const DimerParams& p);

struct EpLocation {
  double c_crit = 0.0;
  bool in_range = false;  // inside the open interval (-1, 1)
};

/// Correlation strength where the dephasing pair coalesces:
/// c* = 1 - 2|j|/gamma.
EpLocation ep_condition_dephasing(double gamma, double j);

/// Splitting at which the branch-pair discriminant vanishes:
/// |delta| = gamma |1 - 2c| / 2.
double ep_condition_relaxation(double gamma, double c);

/// Splitting at which the exact relaxation sector coalesces:
/// |delta| = gamma |c| / 2. The coalescence is third order.
double ep_condition_relaxation_sector(double gamma, double c);

/// Quotient flow of (y, z, p) = (Im rho_SA, rho_SS - rho_AA,
/// rho_SS + rho_AA) over the stationary ground component:
///   [[-g, 4 delta, 0], [-delta, -g, -g c], [0, -g c, -g]].
Eigen::Matrix3d relaxation_sector_matrix(const DimerParams& p);

/// Its eigenvalues {-g, -g +- sqrt(g^2 c^2 - 4 delta^2)}.
std::array<Complex, 3> relaxation_sector_eigs(const DimerParams& p);

/// Exactly invariant subspace: L * basis = basis * flow to rounding.
struct InvariantSector {
  CMatrix basis;  // d^2 x k stacked operators, columns
  RMatrix flow;   // k x k
  std::array<std::string, 4> labels;
};

/// The 4-dim invariant span {|gg><gg|, y, z, p} of the relaxation dimer,
/// with block-triangular flow [[0, feed], [0, sector]].
InvariantSector relaxation_sector(const DimerParams& p);

/// Stacked operator pair used by validate_reduction: (tau_y, tau_z) for
/// dephasing, (Y, Z) in the symmetric/antisymmetric basis for relaxation.
std::array<CMatrix, 2> reduction_basis(DimerChannel channel);

/// Compare the measured Heisenberg flow on reduction_basis with the
/// closed-form reduced generator.
struct ReductionReport {
  Eigen::Matrix2d projected;     // least-squares coefficient matrix
  Eigen::Matrix2d reference;     // reduced_dephasing / reduced_relaxation
  double max_entry_deviation = 0.0;
  double leakage = 0.0;          // |L^dag B - B M|_F, absolute
  double leakage_rel = 0.0;      // leakage / |L^dag|_F
  bool closure_ok = false;       // leakage_rel <= tol
};

ReductionReport validate_reduction(const DimerParams& p, double tol = 1e-10);

}  // namespace liouvep
