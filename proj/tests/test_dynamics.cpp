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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liouvep/dimer.hpp"
#include "liouvep/dynamics.hpp"
#include "liouvep/lindblad.hpp"

using namespace liouvep;

namespace {

QOperator excited_qubit() {
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(1, 1) = 1.0;
  return QOperator(rho);
}

QOperator plus_qubit() {
  CMatrix rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;
  return QOperator(rho);
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("matrix_exp on diagonal and nilpotent input") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = Complex(1.0, 0.0);
  d(1, 1) = Complex(0.0, std::numbers::pi);
  const CMatrix e = matrix_exp(d);
  CHECK(std::abs(e(0, 0) - Complex(std::exp(1.0), 0.0)) < 1e-12);
  CHECK(std::abs(e(1, 1) - Complex(-1.0, 0.0)) < 1e-12);

  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  const CMatrix en = matrix_exp(n);
  CHECK(std::abs(en(0, 0) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(en(0, 1) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(en(1, 0)) < 1e-14);

  CHECK_THROWS_AS(matrix_exp(CMatrix::Zero(2, 3)), DimMismatch);
}

TEST_CASE("amplitude damping: excited population decays as exp(-gamma t)") {
  const double gamma = 0.8;
  const Superoperator l = dissipator_superop(gamma, sigma_minus());
  RVector times(5);
  times << 0.0, 0.5, 1.0, 2.0, 4.0;
  const Trajectory traj = propagate(l, excited_qubit(), times);

  REQUIRE(traj.observable_names.size() >= 4);
  CHECK(traj.observable_names[0] == "trace");
  CHECK(traj.observable_names[1] == "purity");
  CHECK(traj.observable_names[2] == "pop_0");
  CHECK(traj.observable_names[3] == "pop_1");
  for (Index i = 0; i < times.size(); ++i) {
    CHECK(traj.observables(i, 0) == doctest::Approx(1.0).epsilon(1e-12));  // trace
    CHECK(traj.observables(i, 3) ==
          doctest::Approx(std::exp(-gamma * times(i))).epsilon(1e-10));
  }
}

TEST_CASE("pure dephasing: coherence decays as exp(-2 gamma t)") {
  const double gamma = 0.3;
  const Superoperator l = dissipator_superop(gamma, pauli_z());
  RVector times(4);
  times << 0.0, 1.0, 2.0, 3.0;
  const Trajectory traj = propagate(l, plus_qubit(), times, {{0, 1}});
  // trailing columns: re_0_1, im_0_1
  const Index re_col = static_cast<Index>(traj.observable_names.size()) - 2;
  REQUIRE(traj.observable_names[re_col] == "re_0_1");
  for (Index i = 0; i < times.size(); ++i) {
    CHECK(traj.observables(i, re_col) ==
          doctest::Approx(0.5 * std::exp(-2.0 * gamma * times(i))).epsilon(1e-10));
  }
}

TEST_CASE("propagate validates its inputs") {
  const Superoperator l = dissipator_superop(1.0, sigma_minus());
  RVector bad(2);
  bad << 1.0, 0.5;  // not increasing
  CHECK_THROWS_AS(propagate(l, excited_qubit(), bad), ConfigError);
  RVector neg(2);
  neg << -1.0, 0.5;
  CHECK_THROWS_AS(propagate(l, excited_qubit(), neg), ConfigError);
  RVector ok(2);
  ok << 0.0, 1.0;
  CHECK_THROWS_AS(propagate(l, excited_qubit(), ok, {{0, 5}}), ConfigError);
  CMatrix not_density = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(propagate(l, QOperator(not_density), ok), InvalidDensity);
}

TEST_CASE("jordan chain residual on an exact J2 block") {
  const Complex lam(-0.5, 0.0);
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = m(1, 1) = lam;
  m(0, 1) = 1.0;
  CVector x0(2), x1(2);
  x0 << 1.0, 0.0;
  x1 << 0.0, 1.0;
  RVector times(6);
  times << 0.5, 1.0, 2.0, 3.0, 4.0, 5.0;
  const double r = jordan_chain_residual(m, lam, x0, x1, times);
  CHECK(r < 1e-12);

  // garbage chain is rejected up front
  CVector junk(2);
  junk << 0.3, -0.7;
  CHECK_THROWS_AS(jordan_chain_residual(m, lam, junk, x1, times), NotAChain);
}

TEST_CASE("fully correlated dephasing dimer sustains a limit cycle") {
  DimerParams p;
  p.channel = DimerChannel::Dephasing;
  p.gamma = 1.0;
  p.c = 1.0;
  p.j = 0.5;
  const Superoperator l = full_dimer_liouvillian(p);
  const LimitCycleReport rep = detect_limit_cycle(l);
  CHECK(rep.is_limit_cycle);
  CHECK(rep.n_zero_modes == 4);
  REQUIRE(!rep.frequencies.empty());
  // marginal pair at omega = 2 j
  CHECK(rep.frequencies.front() == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(rep.period.has_value());
  CHECK(*rep.period == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-9));

  // below full correlation every coherence decays: no limit cycle
  p.c = 0.9;
  const LimitCycleReport off = detect_limit_cycle(full_dimer_liouvillian(p));
  CHECK(!off.is_limit_cycle);
  CHECK(off.frequencies.empty());
}

TEST_CASE("asymptotic decomposition reconstructs the late-time state") {
  DimerParams p;
  p.channel = DimerChannel::Dephasing;
  p.gamma = 1.0;
  p.c = 1.0;
  p.j = 0.5;
  const Superoperator l = full_dimer_liouvillian(p);

  CVector v = CVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = 1.0 / std::sqrt(2.0);
  const QOperator rho0((v * v.adjoint()).eval());

  const AsymptoticState asym = asymptotic_decompose(l, rho0);
  CHECK(std::abs(asym.stationary.trace() - Complex(1.0, 0.0)) < 1e-10);
  CHECK(!asym.oscillatory.empty());

  const double t = 40.0;
  RVector times(2);
  times << 0.0, t;
  const Trajectory traj = propagate(l, rho0, times);
  const CMatrix rho_t =
      Eigen::Map<const CMatrix>(traj.states[1].data(), 4, 4);
  CMatrix predicted = asym.stationary;
  for (const auto& comp : asym.oscillatory) {
    predicted += comp.amplitude * std::exp(Complex(0.0, comp.omega * t)) * comp.op;
  }
  CHECK((rho_t - predicted).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("asymptotic decomposition refuses a nearly defective basis") {
  DimerParams p;
  p.channel = DimerChannel::Dephasing;
  p.gamma = 1.0;
  p.c = 0.0;
  p.j = 0.5;  // exactly at the coalescence
  const Superoperator l = full_dimer_liouvillian(p);
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  CHECK_THROWS_AS(asymptotic_decompose(l, QOperator(rho), 1e-9, 1e6),
                  IllConditionedProjection);
}

}  // TEST_SUITE
