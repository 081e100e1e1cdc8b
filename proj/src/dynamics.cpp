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

#include "liouvep/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "liouvep/spectral.hpp"

namespace liouvep {

CMatrix matrix_exp(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimMismatch("matrix exponential needs a square matrix");
  return m.exp();
}

Trajectory propagate(const Superoperator& l, const QOperator& rho0, const RVector& times,
                     const std::vector<std::pair<int, int>>& coherences) {
  const Index d = l.dim();
  if (rho0.dim() != d) {
    throw DimMismatch("initial state dimension " + std::to_string(rho0.dim()) +
                      " does not match generator dimension " + std::to_string(d));
  }
  QOperator::density(rho0.entries);  // InvalidDensity on violation
  if (times.size() == 0) throw ConfigError("time grid is empty");
  for (Index k = 0; k < times.size(); ++k) {
    if (times(k) < 0.0) throw ConfigError("times must be non-negative");
    if (k > 0 && times(k) <= times(k - 1)) throw ConfigError("times must be strictly increasing");
  }
  for (const auto& [i, j] : coherences) {
    if (i < 0 || j < 0 || i >= d || j >= d) throw ConfigError("coherence index out of range");
  }

  Trajectory traj;
  traj.times = times;
  traj.observable_names = {"trace", "purity"};
  for (Index i = 0; i < d; ++i) traj.observable_names.push_back("pop_" + std::to_string(i));
  for (const auto& [i, j] : coherences) {
    traj.observable_names.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
    traj.observable_names.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
  }
  traj.observables.resize(times.size(), static_cast<Index>(traj.observable_names.size()));
  traj.states.reserve(times.size());

  // Key the cache on the exact bit pattern so equal steps never recompute.
  std::map<double, CMatrix> step_cache;
  auto step_for = [&](double dt) -> const CMatrix& {
    auto it = step_cache.find(dt);
    if (it == step_cache.end()) {
      it = step_cache.emplace(dt, matrix_exp((l.entries * dt).eval())).first;
    }
    return it->second;
  };

  CVector state = vectorize(rho0).entries;
  double t_prev = 0.0;
  for (Index k = 0; k < times.size(); ++k) {
    const double dt = times(k) - t_prev;
    if (dt > 0.0) state = step_for(dt) * state;
    t_prev = times(k);

    const CMatrix rho = Eigen::Map<const CMatrix>(state.data(), d, d);
    Index col = 0;
    traj.observables(k, col++) = rho.trace().real();
    traj.observables(k, col++) = (rho * rho).trace().real();
    for (Index i = 0; i < d; ++i) traj.observables(k, col++) = rho(i, i).real();
    for (const auto& [i, j] : coherences) {
      traj.observables(k, col++) = rho(i, j).real();
      traj.observables(k, col++) = rho(i, j).imag();
    }
    traj.states.push_back(state);
  }
  return traj;
}

double jordan_chain_residual(const CMatrix& l, Complex lambda, const CVector& x0,
                             const CVector& x1, const RVector& times, double chain_tol) {
  if (l.rows() != l.cols() || l.rows() != x0.size() || l.rows() != x1.size()) {
    throw DimMismatch("jordan chain vectors do not match the matrix dimension");
  }
  const double scale = std::max(1.0, l.norm());
  const double r1 = (l * x1 - lambda * x1 - x0).norm() / (scale * x1.norm());
  const double r0 = x0.norm() > 0.0 ? (l * x0 - lambda * x0).norm() / (scale * x0.norm()) : 1.0;
  if (r1 > chain_tol || r0 > chain_tol) {
    throw NotAChain("chain relations violated: generalized residual " + std::to_string(r1) +
                    ", eigenvector residual " + std::to_string(r0));
  }

  double worst = 0.0;
  for (Index k = 0; k < times.size(); ++k) {
    const double t = times(k);
    const CMatrix u = matrix_exp((l * t).eval());
    const CVector analytic = std::exp(lambda * t) * (x1 + t * x0);
    const double denom = std::max(analytic.norm(), 1e-300);
    worst = std::max(worst, (u * x1 - analytic).norm() / denom);
  }
  return worst;
}

LimitCycleReport detect_limit_cycle(const Superoperator& l, double tol) {
  Eigen::ComplexEigenSolver<CMatrix> ces(l.entries, /*computeEigenvectors=*/false);
  if (ces.info() != Eigen::Success) throw EigFailure("eigensolver did not converge");
  const CVector ev = ces.eigenvalues();
  const double abs_tol = tol * std::max(1.0, l.entries.norm());

  LimitCycleReport rep;
  bool rest_decays = true;
  std::vector<double> freqs;
  for (Index k = 0; k < ev.size(); ++k) {
    const Complex z = ev(k);
    if (std::abs(z) <= abs_tol) {
      ++rep.n_zero_modes;
    } else if (std::abs(z.real()) <= abs_tol) {
      if (z.imag() > 0.0) freqs.push_back(z.imag());
    } else if (z.real() > 0.0) {
      rest_decays = false;  // growth: not a generator of a physical semigroup
    }
  }
  std::sort(freqs.begin(), freqs.end());
  rep.frequencies = std::move(freqs);
  rep.is_limit_cycle = rest_decays && !rep.frequencies.empty();
  if (rep.is_limit_cycle) {
    rep.period = 2.0 * std::numbers::pi / rep.frequencies.front();
  }
  return rep;
}

AsymptoticState asymptotic_decompose(const Superoperator& l, const QOperator& rho0, double tol,
                                     double cond_cap) {
  const Index d = l.dim();
  if (rho0.dim() != d) throw DimMismatch("initial state does not match generator dimension");
  QOperator::density(rho0.entries);

  SpectralOptions opts;
  opts.compute_clusters = false;
  const SpectralReport rep = decompose(l, opts);
  const double abs_tol = tol * std::max(1.0, l.entries.norm());

  // The projection uses the full dual basis V^{-1}; refuse when V is too
  // ill-conditioned for its rows to mean anything.
  Eigen::JacobiSVD<CMatrix> svd(rep.eigvecs);
  const RVector sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || sv(0) / smin > cond_cap) {
    throw IllConditionedProjection("eigenbasis condition number exceeds cap");
  }
  const CMatrix dual = rep.eigvecs.inverse();  // rows are left eigenvectors

  const CVector r0 = vectorize(rho0).entries;
  AsymptoticState out;
  CVector stat = CVector::Zero(d * d);
  for (Index k = 0; k < rep.eigvals.size(); ++k) {
    const Complex lam = rep.eigvals(k);
    if (std::abs(lam.real()) > abs_tol) continue;  // decaying (or unphysical) mode
    const Complex a = (dual.row(k) * r0)(0, 0);
    if (std::abs(lam) <= abs_tol) {
      stat += a * rep.eigvecs.col(k);
    } else {
      AsymptoticComponent comp;
      comp.omega = lam.imag();
      comp.amplitude = a;
      comp.op = Eigen::Map<const CMatrix>(rep.eigvecs.col(k).data(), d, d);
      out.oscillatory.push_back(std::move(comp));
    }
  }
  out.stationary = Eigen::Map<const CMatrix>(stat.data(), d, d);
  return out;
}

}  // namespace liouvep
