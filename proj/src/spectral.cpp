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

#include "liouvep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace liouvep {

namespace {

RVector singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues();
}

// Kernel ranks of (L - center) and its square. `spread` widens the
// threshold so that members of a numerically resolved cluster still count
// toward the kernel; with spread = 0 this is the plain rank_tol test.
std::pair<int, int> kernel_dims(const CMatrix& l, Complex center, double rank_tol,
                                double spread) {
  const Index n = l.rows();
  CMatrix k = l;
  k.diagonal().array() -= center;

  const RVector s1 = singular_values(k);
  const double smax1 = s1(0);
  int delta1 = 0;
  if (smax1 == 0.0) {
    delta1 = static_cast<int>(n);
  } else {
    const double thr1 = std::max(rank_tol * smax1, 3.0 * spread);
    delta1 = static_cast<int>((s1.array() < thr1).count());
  }

  const CMatrix k2 = k * k;
  const RVector s2 = singular_values(k2);
  const double smax2 = s2(0);
  int delta2 = 0;
  if (smax2 == 0.0) {
    delta2 = static_cast<int>(n);
  } else {
    const double thr2 = std::max(rank_tol * smax2, 9.0 * spread * spread);
    delta2 = static_cast<int>((s2.array() < thr2).count());
  }
  return {delta1, delta2};
}

}  // namespace

double ep_strength_of(const CMatrix& eigvecs) {
  CMatrix v = eigvecs;
  for (Index k = 0; k < v.cols(); ++k) {
    const double nrm = v.col(k).norm();
    if (nrm > 0.0) v.col(k) /= nrm;
  }
  const RVector s = singular_values(v);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / smin;
}

std::vector<std::vector<int>> cluster_indices(const CVector& eigvals, double radius) {
  const int n = static_cast<int>(eigvals.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(eigvals(i) - eigvals(j)) <= radius) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> root_to_group(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_group[r] < 0) {
      root_to_group[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_to_group[r]].push_back(i);
  }
  return groups;
}

DefectReport defectiveness_test(const CMatrix& l, Complex lambda, double rank_tol) {
  if (l.rows() != l.cols()) throw DimMismatch("defectiveness test needs a square matrix");
  const auto [d1, d2] = kernel_dims(l, lambda, rank_tol, 0.0);
  return DefectReport{d1, d2, d2 > d1};
}

SpectralReport decompose(const Superoperator& s, const SpectralOptions& opts) {
  Eigen::ComplexEigenSolver<CMatrix> ces(s.entries, /*computeEigenvectors=*/true);
  if (ces.info() != Eigen::Success) {
    throw EigFailure("complex eigensolver did not converge");
  }

  const Index n = s.vec_dim();
  // Deterministic ordering: ascending real part, then imaginary part.
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  const CVector raw = ces.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (raw(a).real() != raw(b).real()) return raw(a).real() < raw(b).real();
    return raw(a).imag() < raw(b).imag();
  });

  SpectralReport rep;
  rep.eigvals.resize(n);
  rep.eigvecs.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    rep.eigvals(k) = raw(order[k]);
    rep.eigvecs.col(k) = ces.eigenvectors().col(order[k]);
    const double nrm = rep.eigvecs.col(k).norm();
    if (nrm > 0.0) rep.eigvecs.col(k) /= nrm;
  }

  rep.max_residual =
      (s.entries * rep.eigvecs - rep.eigvecs * rep.eigvals.asDiagonal()).colwise().norm().maxCoeff();

  const RVector sv = singular_values(rep.eigvecs);
  rep.sigma_min = sv(sv.size() - 1);
  if (rep.sigma_min < 1e-300) {
    rep.ep_strength = std::numeric_limits<double>::infinity();
    rep.ep_overflow = true;
  } else {
    rep.ep_strength = 1.0 / rep.sigma_min;
    rep.ep_overflow = !std::isfinite(rep.ep_strength);
  }

  if (opts.compute_clusters) {
    const double radius = opts.cluster_radius_rel * s.entries.norm();
    for (auto& group : cluster_indices(rep.eigvals, radius)) {
      EigCluster cl;
      cl.members = std::move(group);
      Complex sum = 0.0;
      for (int idx : cl.members) sum += rep.eigvals(idx);
      cl.center = sum / static_cast<double>(cl.members.size());
      if (cl.members.size() >= 2) {
        double spread = 0.0;
        for (int idx : cl.members) spread = std::max(spread, std::abs(rep.eigvals(idx) - cl.center));
        const auto [d1, d2] = kernel_dims(s.entries, cl.center, opts.rank_tol, spread);
        cl.delta1 = d1;
        cl.delta2 = d2;
        cl.defective = d2 > d1;
      }
      rep.clusters.push_back(std::move(cl));
    }
  }
  return rep;
}

double trace_preservation_residual(const Superoperator& s) {
  const Index d = s.dim();
  const CVector e = vectorized_identity(d);
  const Eigen::RowVectorXcd w = e.adjoint() * s.entries;
  const double denom = std::sqrt(static_cast<double>(d)) * s.entries.norm();
  if (denom == 0.0) return 0.0;
  return w.norm() / denom;
}

double traceless_block_residual(const Superoperator& s) {
  const Index d = s.dim();
  const CVector e = vectorized_identity(d);
  const Eigen::RowVectorXcd w = e.adjoint() * s.entries;
  // Component of the trace row acting on the traceless subspace.
  const Eigen::RowVectorXcd w_perp =
      w - (w * e)(0, 0) / static_cast<double>(d) * e.adjoint();
  const double denom = std::sqrt(static_cast<double>(d)) * s.entries.norm();
  if (denom == 0.0) return 0.0;
  return w_perp.norm() / denom;
}

std::optional<std::pair<CVector, CVector>> jordan_chain_from(const CMatrix& l, Complex lambda,
                                                             double rank_tol) {
  if (l.rows() != l.cols()) throw DimMismatch("jordan chain needs a square matrix");
  const Index n = l.rows();
  CMatrix k = l;
  k.diagonal().array() -= lambda;

  Eigen::JacobiSVD<CMatrix> svd1(k, Eigen::ComputeFullV);
  const RVector s1 = svd1.singularValues();
  const double smax1 = s1(0);
  if (smax1 == 0.0) return std::nullopt;  // scalar matrix: semisimple
  const int d1 = static_cast<int>((s1.array() < rank_tol * smax1).count());
  if (d1 == 0) return std::nullopt;  // lambda is not an eigenvalue at this tolerance

  const CMatrix k2 = k * k;
  Eigen::JacobiSVD<CMatrix> svd2(k2, Eigen::ComputeFullV);
  const RVector s2 = svd2.singularValues();
  const double smax2 = s2(0);
  const int d2 = smax2 == 0.0 ? static_cast<int>(n)
                              : static_cast<int>((s2.array() < rank_tol * smax2).count());
  if (d2 <= d1) return std::nullopt;  // semisimple: no chain to extract

  const CMatrix ker1 = svd1.matrixV().rightCols(d1);
  const CMatrix ker2 = svd2.matrixV().rightCols(d2);

  // Generalized eigenvector: the ker(K^2) direction farthest from ker(K).
  CVector best;
  double best_norm = -1.0;
  for (int j = 0; j < d2; ++j) {
    const CVector v = ker2.col(j);
    const CVector r = v - ker1 * (ker1.adjoint() * v);
    if (r.norm() > best_norm) {
      best_norm = r.norm();
      best = r;
    }
  }
  if (best_norm <= 0.0) return std::nullopt;
  const CVector x1 = best / best.norm();
  const CVector x0 = k * x1;
  return std::make_pair(x0, x1);
}

}  // namespace liouvep
