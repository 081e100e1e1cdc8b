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

#include "liouvep/noise_graph.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace liouvep {

namespace {

// Shared validation + spectral decomposition for all graph constructors.
NoiseGraph finalize(RMatrix adj, std::string kind) {
  if (adj.rows() != adj.cols()) {
    throw NotSymmetric("adjacency must be square, got " + std::to_string(adj.rows()) + "x" +
                       std::to_string(adj.cols()));
  }
  const int n = static_cast<int>(adj.rows());
  if (n < 2) throw TooSmall("graph needs at least 2 sites, got " + std::to_string(n));

  const double scale = std::max(1.0, adj.cwiseAbs().maxCoeff());
  if ((adj - adj.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NotSymmetric("adjacency is not symmetric");
  }
  if (adj.diagonal().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NotSymmetric("adjacency diagonal must be zero");
  }
  if (adj.minCoeff() < -1e-12 * scale) {
    throw NotSymmetric("adjacency weights must be non-negative");
  }

  NoiseGraph g;
  g.adjacency = (adj + adj.transpose()) / 2.0;  // kill rounding asymmetry
  g.kind = std::move(kind);

  Eigen::SelfAdjointEigenSolver<RMatrix> es(g.adjacency);
  g.eigvals = es.eigenvalues();  // ascending
  g.eigvecs = es.eigenvectors();

  // Deterministic sign: first component above threshold is positive.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double v = g.eigvecs(i, k);
      if (std::abs(v) > 1e-12) {
        if (v < 0) g.eigvecs.col(k) = -g.eigvecs.col(k);
        break;
      }
    }
  }

  const RVector row_sums = g.adjacency.rowwise().sum();
  const double spread = row_sums.maxCoeff() - row_sums.minCoeff();
  if (spread <= 1e-10 * std::max(1.0, row_sums.cwiseAbs().maxCoeff())) {
    const double s = row_sums(0);
    const double rounded = std::round(s);
    if (std::abs(s - rounded) <= 1e-8) {
      g.regular_degree = static_cast<int>(rounded);
    }
  }
  return g;
}

}  // namespace

NoiseGraph build_dimer() {
  RMatrix adj(2, 2);
  adj << 0, 1, 1, 0;
  return finalize(adj, "dimer");
}

NoiseGraph build_cycle(int n_sites) {
  if (n_sites < 3) {
    throw TooSmall("cycle needs at least 3 sites, got " + std::to_string(n_sites));
  }
  RMatrix adj = RMatrix::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i) {
    const int j = (i + 1) % n_sites;
    adj(i, j) = 1.0;
    adj(j, i) = 1.0;
  }
  return finalize(adj, "cycle");
}

NoiseGraph build_custom(const RMatrix& adjacency) { return finalize(adjacency, "custom"); }

CMatrix cycle_fourier_modes(int n_sites) {
  if (n_sites < 3) {
    throw TooSmall("cycle needs at least 3 sites, got " + std::to_string(n_sites));
  }
  const double n = static_cast<double>(n_sites);
  CMatrix u(n_sites, n_sites);
  for (int j = 0; j < n_sites; ++j) {
    for (int k = 0; k < n_sites; ++k) {
      const double phase = 2.0 * std::numbers::pi * j * k / n;
      u(j, k) = Complex(std::cos(phase), std::sin(phase)) / std::sqrt(n);
    }
  }
  return u;
}

std::pair<double, double> positivity_range(const NoiseGraph& g) {
  const double inf = std::numeric_limits<double>::infinity();
  const double lam_min = g.eigvals.minCoeff();
  const double lam_max = g.eigvals.maxCoeff();
  const double tol = 1e-12 * std::max(1.0, std::max(std::abs(lam_min), std::abs(lam_max)));
  // 1 + c*lam >= 0 for all lam: positive eigenvalues bound c from below,
  // negative ones from above.
  const double lo = lam_max > tol ? -1.0 / lam_max : -inf;
  const double hi = lam_min < -tol ? -1.0 / lam_min : inf;
  return {lo, hi};
}

CorrelationModel make_correlation(double gamma0, double c, NoiseGraph graph) {
  if (!(gamma0 > 0.0)) {
    throw ConfigError("base rate gamma0 must be positive, got " + std::to_string(gamma0));
  }
  const auto [lo, hi] = positivity_range(graph);
  const double slack = 1e-12 * (1.0 + std::abs(c));
  if (c < lo - slack || c > hi + slack) {
    std::ostringstream msg;
    msg << "correlation strength " << c << " outside admissible interval [" << lo << ", " << hi
        << "]";
    throw PositivityViolated(msg.str());
  }
  return CorrelationModel{gamma0, c, std::move(graph)};
}

RVector sector_rates(const CorrelationModel& m) {
  const auto [lo, hi] = positivity_range(m.graph);
  const double slack = 1e-12 * (1.0 + std::abs(m.c));
  if (m.c < lo - slack || m.c > hi + slack) {
    std::ostringstream msg;
    msg << "correlation strength " << m.c << " outside admissible interval [" << lo << ", " << hi
        << "]";
    throw PositivityViolated(msg.str());
  }
  RVector rates = m.gamma0 * (1.0 + m.c * m.graph.eigvals.array());
  // Clamp the rounding dust so downstream sqrt() calls stay real.
  return rates.cwiseMax(0.0);
}

std::vector<int> protected_modes(const CorrelationModel& m, double rel_tol) {
  std::vector<int> out;
  for (int k = 0; k < m.graph.n(); ++k) {
    if (std::abs(1.0 + m.c * m.graph.eigvals(k)) <= rel_tol) out.push_back(k);
  }
  return out;
}

RMatrix load_adjacency(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open adjacency file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> row;
    double x;
    while (ls >> x) row.push_back(x);
    if (!ls.eof()) {
      throw ConfigError("parse error in " + path + " line " + std::to_string(lineno));
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("adjacency file is empty: " + path);

  const size_t n = rows.size();
  RMatrix adj(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ConfigError("adjacency file must be square: row " + std::to_string(i + 1) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(n));
    }
    for (size_t j = 0; j < n; ++j) adj(i, j) = rows[i][j];
  }
  return adj;
}

}  // namespace liouvep
