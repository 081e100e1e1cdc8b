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

#include "liouvep/opspace.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace liouvep {

namespace {

Index isqrt_exact(Index n) {
  const auto root = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (root * root != n) return -1;
  return root;
}

}  // namespace

QOperator::QOperator(CMatrix m) : entries(std::move(m)) {
  if (entries.rows() != entries.cols()) {
    throw DimMismatch("operator must be square, got " + std::to_string(entries.rows()) +
                      "x" + std::to_string(entries.cols()));
  }
}

QOperator QOperator::hermitian(CMatrix m, double tol) {
  QOperator op(std::move(m));
  const double scale = std::max(1.0, op.entries.cwiseAbs().maxCoeff());
  const double dev = (op.entries - op.entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol * scale) {
    throw NotHermitian("max |M - M^dag| = " + std::to_string(dev) + " exceeds tolerance");
  }
  return op;
}

QOperator QOperator::density(CMatrix m, double tol) {
  if (m.rows() != m.cols()) throw InvalidDensity("density matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
    throw InvalidDensity("density matrix is not Hermitian");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    throw InvalidDensity("density matrix trace deviates from one by " +
                         std::to_string(std::abs(tr - Complex(1.0, 0.0))));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint().eval()) / 2.0);
  if (es.info() != Eigen::Success) throw InvalidDensity("eigenvalue check failed");
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    throw InvalidDensity("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
  return QOperator(std::move(m));
}

OpVector::OpVector(CVector v) : entries(std::move(v)) {
  if (isqrt_exact(entries.size()) < 0) {
    throw NonSquareLength("stacked operator length " + std::to_string(entries.size()) +
                          " is not a perfect square");
  }
}

Index OpVector::dim() const { return isqrt_exact(entries.size()); }

Superoperator::Superoperator(CMatrix m) : entries(std::move(m)) {
  if (entries.rows() != entries.cols()) {
    throw DimMismatch("superoperator must be square");
  }
  if (isqrt_exact(entries.rows()) < 0) {
    throw NonSquareLength("superoperator side " + std::to_string(entries.rows()) +
                          " is not a perfect square");
  }
}

Index Superoperator::dim() const { return isqrt_exact(entries.rows()); }

OpVector vectorize(const QOperator& a) {
  // Eigen matrices are column-major, so the stacked layout is the raw buffer.
  return OpVector(Eigen::Map<const CVector>(a.entries.data(), a.entries.size()));
}

QOperator devectorize(const OpVector& v) {
  const Index d = v.dim();
  return QOperator(Eigen::Map<const CMatrix>(v.entries.data(), d, d));
}

OpVector apply(const Superoperator& s, const OpVector& v) {
  if (s.vec_dim() != v.entries.size()) {
    throw DimMismatch("superoperator side " + std::to_string(s.vec_dim()) +
                      " vs stacked length " + std::to_string(v.entries.size()));
  }
  return OpVector(s.entries * v.entries);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Superoperator left_mult(const QOperator& a) {
  const Index d = a.dim();
  return Superoperator(kron(CMatrix::Identity(d, d), a.entries));
}

Superoperator right_mult(const QOperator& b) {
  const Index d = b.dim();
  return Superoperator(kron(b.entries.transpose(), CMatrix::Identity(d, d)));
}

Complex hs_inner(const QOperator& a, const QOperator& b) {
  if (a.dim() != b.dim()) throw DimMismatch("hs_inner operands differ in dimension");
  return (a.entries.conjugate().cwiseProduct(b.entries)).sum();
}

CVector vectorized_identity(Index d) {
  CVector e = CVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) e(i + i * d) = 1.0;
  return e;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

CMatrix sigma_plus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

CMatrix site_operator(int n_sites, int site, const CMatrix& local) {
  if (local.rows() != 2 || local.cols() != 2) {
    throw DimMismatch("site operator must be 2x2");
  }
  if (n_sites < 1 || n_sites > 14) {
    throw DimMismatch("site count " + std::to_string(n_sites) + " outside [1, 14]");
  }
  if (site < 0 || site >= n_sites) {
    throw DimMismatch("site index " + std::to_string(site) + " out of range");
  }
  CMatrix out = CMatrix::Identity(1, 1);
  const CMatrix eye = CMatrix::Identity(2, 2);
  for (int k = 0; k < n_sites; ++k) {
    out = kron(out, k == site ? local : eye);
  }
  return out;
}

}  // namespace liouvep
