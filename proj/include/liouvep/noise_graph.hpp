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

#include "liouvep/error.hpp"
#include "liouvep/types.hpp"

namespace liouvep {

/// Undirected weighted graph describing which sites share noise, together
/// with the spectral data of its adjacency matrix.
struct NoiseGraph {
  RMatrix adjacency;                 // symmetric, zero diagonal, weights >= 0
  RVector eigvals;                   // ascending
  RMatrix eigvecs;                   // orthonormal columns, matching eigvals
  std::optional<int> regular_degree; // set when every row sums to the same integer
  std::string kind;                  // "dimer", "cycle" or "custom"

  int n() const { return static_cast<int>(adjacency.rows()); }
};

/// Two sites joined by one edge. Adjacency eigenvalues are -1 and +1.
NoiseGraph build_dimer();

/// Ring of n_sites >= 3 sites. Throws TooSmall below that.
NoiseGraph build_cycle(int n_sites);

/// Arbitrary adjacency matrix, n >= 2. Structural violations (non-square,
/// asymmetric, nonzero diagonal, negative weight) throw NotSymmetric with a
/// specific message; n < 2 throws TooSmall.
NoiseGraph build_custom(const RMatrix& adjacency);

/// Columns are the complex Fourier modes u_k(j) = exp(2 pi i j k / n)/sqrt(n).
/// They diagonalize any circulant adjacency; for the plain cycle the
/// eigenvalue of column k is 2 cos(2 pi k / n).
CMatrix cycle_fourier_modes(int n_sites);

/// Closed interval of correlation strengths c for which every collective
/// rate gamma0 (1 + c lambda) stays non-negative. Directions without a
/// constraint return +-infinity.
std::pair<double, double> positivity_range(const NoiseGraph& g);

/// Correlated-noise model: pairwise rate matrix gamma0 (I + c A).
struct CorrelationModel {
  double gamma0 = 1.0;
  double c = 0.0;
  NoiseGraph graph;
};

/// Validates gamma0 > 0 (ConfigError) and c within the positivity range
/// (PositivityViolated).
CorrelationModel make_correlation(double gamma0, double c, NoiseGraph graph);

/// Collective rates gamma0 (1 + c lambda_k), ordered by ascending adjacency
/// eigenvalue. Re-checks positivity.
RVector sector_rates(const CorrelationModel& m);

/// Indices (into the ascending eigenvalue order) of modes whose rate
/// vanishes: |1 + c lambda_k| <= rel_tol.
std::vector<int> protected_modes(const CorrelationModel& m, double rel_tol = 1e-12);

/// Parse a whitespace-separated matrix from a text file. Lines starting
/// with '#' and blank lines are skipped. Throws ConfigError on I/O or parse
/// problems (including ragged rows).
RMatrix load_adjacency(const std::string& path);

}  // namespace liouvep
