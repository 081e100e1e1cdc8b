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

#include "liouvep/dimer.hpp"

#include <cmath>

namespace liouvep {

namespace {

Complex csqrt(double x) {
  // Principal square root of a real discriminant.
  if (x >= 0.0) return Complex(std::sqrt(x), 0.0);
  return Complex(0.0, std::sqrt(-x));
}

void require_channel(const DimerParams& p, DimerChannel want, const char* fn) {
  if (p.channel != want) {
    throw WrongChannel(std::string(fn) + " called with the wrong dimer channel");
  }
}

// Two-qubit basis order: |q1 q2> with site 1 leftmost, so indices
// 0=|00>, 1=|01>, 2=|10>, 3=|11>.
constexpr Index kGG = 0, kO1 = 1, kO2 = 2;

CVector ket_sym() {
  CVector v = CVector::Zero(4);
  v(kO1) = 1.0 / std::sqrt(2.0);
  v(kO2) = 1.0 / std::sqrt(2.0);
  return v;
}

CVector ket_asym() {
  CVector v = CVector::Zero(4);
  v(kO2) = 1.0 / std::sqrt(2.0);
  v(kO1) = -1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

LindbladModel build_dimer_model(const DimerParams& p) {
  const CMatrix sp1 = site_operator(2, 0, sigma_plus());
  const CMatrix sm1 = site_operator(2, 0, sigma_minus());
  const CMatrix sp2 = site_operator(2, 1, sigma_plus());
  const CMatrix sm2 = site_operator(2, 1, sigma_minus());
  const CMatrix sz1 = site_operator(2, 0, pauli_z());
  const CMatrix sz2 = site_operator(2, 1, pauli_z());

  CMatrix h = p.j * (sp1 * sm2 + sm1 * sp2) + 0.5 * p.delta * (sz1 - sz2);

  const bool deph = p.channel == DimerChannel::Dephasing;
  JumpFamily jumps = deph ? JumpFamily::dephasing(2) : JumpFamily::relaxation(2);
  // The closed-form generators are written in terms of `gamma`; for the
  // dephasing channel that corresponds to a base rate gamma/2.
  const double gamma0 = deph ? p.gamma / 2.0 : p.gamma;
  return make_model(std::move(h), std::move(jumps), make_correlation(gamma0, p.c, build_dimer()));
}

Superoperator full_dimer_liouvillian(const DimerParams& p) {
  return assemble_liouvillian(build_dimer_model(p));
}

ReducedGenerator reduced_dephasing(const DimerParams& p) {
  require_channel(p, DimerChannel::Dephasing, "reduced_dephasing");
  Eigen::Matrix2d m;
  m << -2.0 * p.gamma * (1.0 - p.c), -2.0 * p.j, 2.0 * p.j, 0.0;
  return ReducedGenerator{m, {"tau_y", "tau_z"}};
}

ReducedGenerator reduced_relaxation(const DimerParams& p) {
  require_channel(p, DimerChannel::Relaxation, "reduced_relaxation");
  // Candidate closed form for the (Y, Z) pair. Unlike the dephasing pair this
  // candidate does not reproduce the measured projection; validate_reduction
  // reports the deviation and the leakage out of the pair.
  Eigen::Matrix2d m;
  m << 0.0, -p.delta, -p.delta, -p.gamma * (1.0 - 2.0 * p.c);
  return ReducedGenerator{m, {"Y", "Z"}};
}

std::pair<Complex, Complex> dephasing_eigs(const DimerParams& p) {
  require_channel(p, DimerChannel::Dephasing, "dephasing_eigs");
  const double a = p.gamma * (1.0 - p.c);
  const Complex root = csqrt(a * a - 4.0 * p.j * p.j);
  return {Complex(-a, 0.0) + root, Complex(-a, 0.0) - root};
}

std::pair<Complex, Complex> relaxation_eigs(const DimerParams& p) {
  require_channel(p, DimerChannel::Relaxation, "relaxation_eigs");
  const double b = p.gamma * (1.0 - 2.0 * p.c);
  const Complex root = csqrt(b * b - 4.0 * p.delta * p.delta);
  return {(Complex(-b, 0.0) + root) / 2.0, (Complex(-b, 0.0) - root) / 2.0};
}

EpLocation ep_condition_dephasing(double gamma, double j) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  const double c_crit = 1.0 - 2.0 * std::abs(j) / gamma;
  return EpLocation{c_crit, std::abs(j) > 0.0 && c_crit > -1.0};
}

double ep_condition_relaxation(double gamma, double c) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  return gamma * std::abs(1.0 - 2.0 * c) / 2.0;
}

double ep_condition_relaxation_sector(double gamma, double c) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  return gamma * std::abs(c) / 2.0;
}

Eigen::Matrix3d relaxation_sector_matrix(const DimerParams& p) {
  require_channel(p, DimerChannel::Relaxation, "relaxation_sector_matrix");
  const double g = p.gamma, c = p.c, d = p.delta;
  Eigen::Matrix3d m;
  m << -g, 4.0 * d, 0.0,
       -d, -g, -g * c,
       0.0, -g * c, -g;
  return m;
}

std::array<Complex, 3> relaxation_sector_eigs(const DimerParams& p) {
  require_channel(p, DimerChannel::Relaxation, "relaxation_sector_eigs");
  const double g = p.gamma;
  const Complex root = csqrt(g * g * p.c * p.c - 4.0 * p.delta * p.delta);
  return {Complex(-g, 0.0), Complex(-g, 0.0) + root, Complex(-g, 0.0) - root};
}

InvariantSector relaxation_sector(const DimerParams& p) {
  require_channel(p, DimerChannel::Relaxation, "relaxation_sector");
  const CVector s = ket_sym();
  const CVector a = ket_asym();
  CVector gg = CVector::Zero(4);
  gg(kGG) = 1.0;

  const CMatrix proj_gg = gg * gg.adjoint();
  const CMatrix ss = s * s.adjoint();
  const CMatrix aa = a * a.adjoint();
  const CMatrix sa = s * a.adjoint();
  const CMatrix as = a * s.adjoint();

  const CMatrix y_op = (sa - as) / Complex(0.0, 2.0);
  const CMatrix z_op = ss - aa;
  const CMatrix p_op = ss + aa;

  InvariantSector sec;
  sec.basis.resize(16, 4);
  sec.basis.col(0) = vectorize(QOperator(proj_gg)).entries;
  sec.basis.col(1) = vectorize(QOperator(y_op)).entries;
  sec.basis.col(2) = vectorize(QOperator(z_op)).entries;
  sec.basis.col(3) = vectorize(QOperator(p_op)).entries;

  const double g = p.gamma, c = p.c;
  sec.flow = RMatrix::Zero(4, 4);
  sec.flow(0, 2) = 2.0 * g * c;  // ground-state feed from the imbalance
  sec.flow(0, 3) = 2.0 * g;      // ground-state feed from the population
  sec.flow.block<3, 3>(1, 1) = relaxation_sector_matrix(p);
  sec.labels = {"gg", "y", "z", "p"};
  return sec;
}

std::array<CMatrix, 2> reduction_basis(DimerChannel channel) {
  if (channel == DimerChannel::Dephasing) {
    CMatrix ty = CMatrix::Zero(4, 4);
    ty(kO2, kO1) = Complex(0.0, -1.0);
    ty(kO1, kO2) = Complex(0.0, 1.0);
    CMatrix tz = CMatrix::Zero(4, 4);
    tz(kO2, kO2) = 1.0;
    tz(kO1, kO1) = -1.0;
    return {ty, tz};
  }
  const CVector s = ket_sym();
  const CVector a = ket_asym();
  const CMatrix y = (s * a.adjoint() - a * s.adjoint()) / Complex(0.0, 2.0);
  const CMatrix z = s * s.adjoint() - a * a.adjoint();
  return {y, z};
}

ReductionReport validate_reduction(const DimerParams& p, double tol) {
  const Superoperator adj = adjoint_liouvillian(build_dimer_model(p));
  const auto ops = reduction_basis(p.channel);

  CMatrix b(16, 2);
  b.col(0) = vectorize(QOperator(ops[0])).entries;
  b.col(1) = vectorize(QOperator(ops[1])).entries;

  // Least-squares coefficient matrix of the flow restricted to span(b).
  const CMatrix gram = b.adjoint() * b;
  const CMatrix image = adj.entries * b;
  const CMatrix coeff = gram.ldlt().solve(b.adjoint() * image);

  ReductionReport rep;
  // coeff is in basis-expansion orientation (image column = basis * column);
  // the closed forms are written as coordinate flows, i.e. its transpose.
  rep.projected = coeff.real().transpose();
  rep.reference = p.channel == DimerChannel::Dephasing ? reduced_dephasing(p).matrix
                                                       : reduced_relaxation(p).matrix;
  rep.max_entry_deviation =
      (coeff.transpose() - rep.reference.cast<Complex>()).cwiseAbs().maxCoeff();
  rep.leakage = (image - b * coeff).colwise().norm().maxCoeff();
  const double scale = adj.entries.norm();
  rep.leakage_rel = scale > 0.0 ? rep.leakage / scale : 0.0;
  rep.closure_ok = rep.leakage_rel <= tol;
  return rep;
}

}  // namespace liouvep
