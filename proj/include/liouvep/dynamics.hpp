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
#include <string>
#include <utility>
#include <vector>

#include "liouvep/opspace.hpp"

namespace liouvep {

/// Dense matrix exponential (scaling-and-squaring Pade).
CMatrix matrix_exp(const CMatrix& m);

/// Time series of states plus derived real observables.
struct Trajectory {
  RVector times;
  std::vector<CVector> states;               // stacked density matrix per time
  std::vector<std::string> observable_names; // column labels
  RMatrix observables;                       // one row per time
};

/// Evolve rho0 through exp(L t) on the given time grid. Times must be
/// non-negative and strictly increasing (ConfigError); rho0 must pass the
/// density checks (InvalidDensity). Repeated time steps reuse the cached
/// exponential, so uniform grids cost a single Pade call.
///
/// Observables: trace (real part), purity tr(rho^2), every population, and
/// re/im of each requested coherence (i, j).
Trajectory propagate(const Superoperator& l, const QOperator& rho0, const RVector& times,
                     const std::vector<std::pair<int, int>>& coherences = {});

/// Verify the closed-form propagation of a length-2 Jordan chain:
/// exp(L t) x1 = exp(lambda t)(x1 + t x0). Returns the worst relative
/// deviation over the time grid. Throws NotAChain if the chain relations
/// L x1 = lambda x1 + x0, L x0 = lambda x0 fail the algebraic precheck.
double jordan_chain_residual(const CMatrix& l, Complex lambda, const CVector& x0,
                             const CVector& x1, const RVector& times, double chain_tol = 1e-8);

struct LimitCycleReport {
  bool is_limit_cycle = false;       // marginal pairs present, the rest decays
  int n_zero_modes = 0;              // |lambda| below tolerance
  std::vector<double> frequencies;   // positive frequencies of marginal modes
  std::optional<double> period;      // 2 pi / min frequency
};

/// Classify the asymptotic motion from the spectrum. `tol` is relative to
/// the Frobenius norm of the generator.
LimitCycleReport detect_limit_cycle(const Superoperator& l, double tol = 1e-9);

/// One persistent oscillating component exp(i omega t) a R.
struct AsymptoticComponent {
  double omega = 0.0;
  Complex amplitude;
  CMatrix op;
};

/// Long-time decomposition: rho(t) -> stationary + sum of components.
struct AsymptoticState {
  CMatrix stationary;
  std::vector<AsymptoticComponent> oscillatory;
};

/// Project the initial state onto the slow subspace (|Re lambda| <= tol
/// relative). Throws IllConditionedProjection when the eigenbasis condition
/// number exceeds cond_cap, InvalidDensity for a bad initial state.
AsymptoticState asymptotic_decompose(const Superoperator& l, const QOperator& rho0,
                                     double tol = 1e-9, double cond_cap = 1e8);

}  // namespace liouvep
