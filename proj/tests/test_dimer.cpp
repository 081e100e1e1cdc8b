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

#include "liouvep/dimer.hpp"
#include "liouvep/spectral.hpp"

using namespace liouvep;

namespace {

DimerParams deph(double gamma, double c, double j) {
  DimerParams p;
  p.channel = DimerChannel::Dephasing;
  p.gamma = gamma;
  p.c = c;
  p.j = j;
  return p;
}

DimerParams relax(double gamma, double c, double delta) {
  DimerParams p;
  p.channel = DimerChannel::Relaxation;
  p.gamma = gamma;
  p.c = c;
  p.delta = delta;
  return p;
}

// distance from z to the closest eigenvalue of l
double spectral_distance(const Superoperator& l, Complex z) {
  const SpectralReport rep = decompose(l, SpectralOptions{1e-8, 1e-6, false});
  double best = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < rep.eigvals.size(); ++k) {
    best = std::min(best, std::abs(rep.eigvals(k) - z));
  }
  return best;
}

}  // namespace

TEST_SUITE("dimer") {

TEST_CASE("hamiltonian entries and base rates") {
  const LindbladModel md = build_dimer_model(deph(1.0, 0.2, 0.25));
  // dephasing closed forms use gamma = 2 gamma0
  CHECK(md.correlation.gamma0 == doctest::Approx(0.5));
  CHECK(md.hamiltonian(1, 2) == Complex(0.25, 0.0));
  CHECK(md.hamiltonian(2, 1) == Complex(0.25, 0.0));

  DimerParams pr = relax(1.0, 0.2, 0.3);
  pr.j = 0.0;
  const LindbladModel mr = build_dimer_model(pr);
  CHECK(mr.correlation.gamma0 == doctest::Approx(1.0));
  // staggered splitting: +delta on |01>, -delta on |10>
  CHECK(mr.hamiltonian(1, 1) == Complex(0.3, 0.0));
  CHECK(mr.hamiltonian(2, 2) == Complex(-0.3, 0.0));
  CHECK(mr.hamiltonian(0, 0) == Complex(0.0, 0.0));
  CHECK(mr.hamiltonian(3, 3) == Complex(0.0, 0.0));
}

TEST_CASE("dephasing pair flow matrix and eigenvalues") {
  const DimerParams p = deph(1.0, 0.3, 0.25);
  const ReducedGenerator rg = reduced_dephasing(p);
  CHECK(rg.matrix(0, 0) == doctest::Approx(-1.4));  // -2 gamma (1 - c)
  CHECK(rg.matrix(0, 1) == doctest::Approx(-0.5));  // -2 j
  CHECK(rg.matrix(1, 0) == doctest::Approx(0.5));
  CHECK(rg.matrix(1, 1) == doctest::Approx(0.0));
  CHECK(rg.basis[0] == "tau_y");

  const auto [e1, e2] = dephasing_eigs(p);
  // -gamma (1 - c) +- sqrt(gamma^2 (1 - c)^2 - 4 j^2), real before coalescence
  const double a = 0.7;
  const double root = std::sqrt(a * a - 0.25);
  CHECK(e1.real() == doctest::Approx(-a + root));
  CHECK(e2.real() == doctest::Approx(-a - root));
  CHECK(e1.imag() == doctest::Approx(0.0));

  // eigenvalues of the 2x2 flow agree with the closed form
  Eigen::EigenSolver<Eigen::Matrix2d> es(rg.matrix);
  std::array<double, 2> got{es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(e2.real()));
  CHECK(got[1] == doctest::Approx(e1.real()));
}

TEST_CASE("dephasing pair eigenvalues embed in the full spectrum") {
  for (double c : {0.0, 0.3, 0.7}) {
    const DimerParams p = deph(1.0, c, 0.25);
    const Superoperator l = full_dimer_liouvillian(p);
    const auto [e1, e2] = dephasing_eigs(p);
    CHECK(spectral_distance(l, e1) < 1e-10);
    CHECK(spectral_distance(l, e2) < 1e-10);
  }
}

TEST_CASE("dephasing pair closes exactly under the adjoint") {
  const ReductionReport rep = validate_reduction(deph(1.0, 0.3, 0.25));
  CHECK(rep.closure_ok);
  CHECK(rep.leakage_rel < 1e-13);
  CHECK(rep.max_entry_deviation < 1e-12);
}

TEST_CASE("dephasing coalescence location") {
  const EpLocation loc = ep_condition_dephasing(1.0, 0.25);
  CHECK(loc.c_crit == doctest::Approx(0.5));
  CHECK(loc.in_range);
  const EpLocation wide = ep_condition_dephasing(1.0, 1.5);
  CHECK(wide.c_crit == doctest::Approx(-2.0));
  CHECK(!wide.in_range);
  CHECK(!ep_condition_dephasing(1.0, 0.0).in_range);
  CHECK_THROWS_AS(ep_condition_dephasing(0.0, 0.5), ConfigError);
}

TEST_CASE("full dimer is defective exactly at the pair coalescence") {
  // gamma=1, j=0.5 puts the coalescence at c=0, eigenvalue -1
  const Superoperator l = full_dimer_liouvillian(deph(1.0, 0.0, 0.5));
  const DefectReport at_ep = defectiveness_test(l.entries, Complex(-1.0, 0.0));
  CHECK(at_ep.delta1 == 1);
  CHECK(at_ep.delta2 == 2);
  CHECK(at_ep.defective);

  const Superoperator off = full_dimer_liouvillian(deph(1.0, 0.05, 0.5));
  const SpectralReport rep = decompose(off);
  for (const auto& cl : rep.clusters) CHECK(!cl.defective);
}

TEST_CASE("relaxation candidate pair and its stated eigenvalues") {
  const DimerParams p = relax(1.0, 0.3, 0.15);
  const ReducedGenerator rg = reduced_relaxation(p);
  CHECK(rg.matrix(0, 0) == doctest::Approx(0.0));
  CHECK(rg.matrix(0, 1) == doctest::Approx(-0.15));
  CHECK(rg.matrix(1, 0) == doctest::Approx(-0.15));
  CHECK(rg.matrix(1, 1) == doctest::Approx(-0.4));  // -gamma (1 - 2c)
  CHECK(rg.basis[0] == "Y");

  // closed form: -(gamma (1-2c))/2 +- sqrt(gamma^2 (1-2c)^2 - 4 delta^2)/2,
  // away from the degenerate root so both branches are well separated
  const auto [e1, e2] = relaxation_eigs(p);
  const double b = 0.4;
  const Complex root = std::sqrt(Complex(b * b - 4.0 * 0.15 * 0.15, 0.0));
  CHECK(std::abs(e1 - (Complex(-b, 0) + root) / 2.0) < 1e-14);
  CHECK(std::abs(e2 - (Complex(-b, 0) - root) / 2.0) < 1e-14);

  // underdamped side: the pair turns into a conjugate pair
  const auto [f1, f2] = relaxation_eigs(relax(1.0, 0.45, 0.2));
  CHECK(f1.imag() != 0.0);
  CHECK(std::abs(f1 - std::conj(f2)) < 1e-14);
}

TEST_CASE("relaxation pair does not close: leakage is gamma |c| sqrt(6)") {
  const DimerParams p = relax(1.0, 0.4, 0.15);
  const ReductionReport rep = validate_reduction(p);
  CHECK(!rep.closure_ok);
  CHECK(rep.leakage == doctest::Approx(1.0 * 0.4 * std::sqrt(6.0)).epsilon(1e-10));
  // measured projection of the adjoint onto (Y, Z) is [[-g, d], [-4d, -g]]
  CHECK(rep.projected(0, 0) == doctest::Approx(-1.0));
  CHECK(rep.projected(0, 1) == doctest::Approx(0.15));
  CHECK(rep.projected(1, 0) == doctest::Approx(-0.6));
  CHECK(rep.projected(1, 1) == doctest::Approx(-1.0));
  CHECK(rep.max_entry_deviation > 0.1);

  // zero correlation removes the leakage channel
  const ReductionReport uncorr = validate_reduction(relax(1.0, 0.0, 0.15));
  CHECK(uncorr.leakage < 1e-12);
}

TEST_CASE("four-operator relaxation sector is exactly invariant") {
  const DimerParams p = relax(1.0, 0.4, 0.15);
  const Superoperator l = full_dimer_liouvillian(p);
  const InvariantSector sec = relaxation_sector(p);
  REQUIRE(sec.basis.cols() == 4);
  const CMatrix resid = l.entries * sec.basis - sec.basis * sec.flow.cast<Complex>();
  CHECK(resid.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(sec.labels[0] == "gg");
}

TEST_CASE("relaxation sector flow matrix and eigenvalues") {
  const DimerParams p = relax(1.0, 0.5, 0.2);
  const Eigen::Matrix3d m = relaxation_sector_matrix(p);
  Eigen::Matrix3d expect;
  expect << -1.0, 0.8, 0.0, -0.2, -1.0, -0.5, 0.0, -0.5, -1.0;
  CHECK((m - expect).cwiseAbs().maxCoeff() < 1e-14);

  // eigenvalues: -g and -g +- sqrt(g^2 c^2 - 4 delta^2)
  const auto eigs = relaxation_sector_eigs(p);
  const double root = std::sqrt(0.25 - 0.16);
  CHECK(std::abs(eigs[0] - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(eigs[1] - Complex(-1.0 + root, 0.0)) < 1e-14);
  CHECK(std::abs(eigs[2] - Complex(-1.0 - root, 0.0)) < 1e-14);

  Eigen::EigenSolver<Eigen::Matrix3d> es(m);
  for (const auto& z : eigs) {
    double best = 1e9;
    for (Index k = 0; k < 3; ++k) best = std::min(best, std::abs(es.eigenvalues()(k) - z));
    CHECK(best < 1e-12);
  }
}

TEST_CASE("relaxation sector eigenvalues embed in the full spectrum") {
  for (double c : {0.0, 0.3, 0.55}) {
    const DimerParams p = relax(1.0, c, 0.2);
    const Superoperator l = full_dimer_liouvillian(p);
    for (const auto& z : relaxation_sector_eigs(p)) {
      CHECK(spectral_distance(l, z) < 1e-9);
    }
  }
}

TEST_CASE("relaxation sector triple coalescence at |c| = 2 delta / gamma") {
  const DimerParams p = relax(1.0, 0.4, 0.2);
  const Eigen::Matrix3d n = relaxation_sector_matrix(p) + Eigen::Matrix3d::Identity();
  CHECK((n * n).norm() > 1e-6);
  CHECK((n * n * n).norm() < 1e-12);  // nilpotent of index 3

  CHECK(ep_condition_relaxation_sector(1.0, 0.4) == doctest::Approx(0.2));
  // the full generator is defective there; 5 percent away it is not
  const Superoperator l = full_dimer_liouvillian(p);
  const DefectReport at_ep = defectiveness_test(l.entries, Complex(-1.0, 0.0));
  CHECK(at_ep.defective);
  const Superoperator off = full_dimer_liouvillian(relax(1.0, 0.42, 0.2));
  const DefectReport away = defectiveness_test(off.entries, Complex(-1.0, 0.0));
  CHECK(!away.defective);
}

TEST_CASE("stated relaxation coalescence condition value") {
  // |delta| = gamma |1 - 2c| / 2 is the candidate condition carried by the
  // closed-form eigenvalues; the sector theory places the actual seam at
  // |c| = 2 delta / gamma.
  CHECK(ep_condition_relaxation(1.0, 0.25) == doctest::Approx(0.25));
  CHECK(ep_condition_relaxation(1.0, 0.75) == doctest::Approx(0.25));
  CHECK(ep_condition_relaxation(2.0, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("channel guards") {
  CHECK_THROWS_AS(reduced_dephasing(relax(1.0, 0.0, 0.1)), WrongChannel);
  CHECK_THROWS_AS(reduced_relaxation(deph(1.0, 0.0, 0.1)), WrongChannel);
  CHECK_THROWS_AS(relaxation_sector(deph(1.0, 0.0, 0.1)), WrongChannel);
  CHECK_THROWS_AS(dephasing_eigs(relax(1.0, 0.0, 0.1)), WrongChannel);
}

}  // TEST_SUITE
