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
#include <cstdio>
#include <fstream>
#include <numbers>

#include "liouvep/noise_graph.hpp"

using namespace liouvep;

TEST_SUITE("noise_graph") {

TEST_CASE("dimer graph spectrum") {
  const NoiseGraph g = build_dimer();
  REQUIRE(g.n() == 2);
  CHECK(g.adjacency(0, 1) == 1.0);
  CHECK(g.adjacency(0, 0) == 0.0);
  CHECK(g.eigvals(0) == doctest::Approx(-1.0));
  CHECK(g.eigvals(1) == doctest::Approx(1.0));
  REQUIRE(g.regular_degree.has_value());
  CHECK(*g.regular_degree == 1);
  CHECK(g.kind == "dimer");
}

TEST_CASE("cycle graph spectrum matches 2 cos(2 pi k / n)") {
  for (int n : {3, 4, 5, 6}) {
    const NoiseGraph g = build_cycle(n);
    REQUIRE(g.n() == n);
    REQUIRE(g.regular_degree.has_value());
    CHECK(*g.regular_degree == 2);
    std::vector<double> expect;
    for (int k = 0; k < n; ++k) expect.push_back(2.0 * std::cos(2.0 * std::numbers::pi * k / n));
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < n; ++k) CHECK(g.eigvals(k) == doctest::Approx(expect[k]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(build_cycle(2), TooSmall);
}

TEST_CASE("eigenvectors diagonalize the adjacency") {
  const NoiseGraph g = build_cycle(5);
  const RMatrix resid = g.adjacency * g.eigvecs - g.eigvecs * g.eigvals.asDiagonal();
  CHECK(resid.cwiseAbs().maxCoeff() < 1e-12);
  const RMatrix gram = g.eigvecs.transpose() * g.eigvecs;
  CHECK((gram - RMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fourier modes diagonalize the cycle") {
  const int n = 4;
  const CMatrix f = cycle_fourier_modes(n);
  const CMatrix gram = f.adjoint() * f;
  CHECK((gram - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  const NoiseGraph g = build_cycle(n);
  for (int k = 0; k < n; ++k) {
    const double lam = 2.0 * std::cos(2.0 * std::numbers::pi * k / n);
    const CVector resid = g.adjacency.cast<Complex>() * f.col(k) - lam * f.col(k);
    CHECK(resid.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("positivity interval from the extreme eigenvalues") {
  const auto [lo, hi] = positivity_range(build_dimer());
  CHECK(lo == doctest::Approx(-1.0));
  CHECK(hi == doctest::Approx(1.0));
  const auto [lo4, hi4] = positivity_range(build_cycle(4));
  CHECK(lo4 == doctest::Approx(-0.5));
  CHECK(hi4 == doctest::Approx(0.5));
}

TEST_CASE("make_correlation accepts the admissible interval and rejects outside") {
  CHECK_NOTHROW(make_correlation(1.0, 0.99, build_dimer()));
  CHECK_NOTHROW(make_correlation(1.0, 1.0, build_dimer()));  // boundary included
  CHECK_THROWS_AS(make_correlation(1.0, 1.01, build_dimer()), PositivityViolated);
  CHECK_THROWS_AS(make_correlation(1.0, -1.2, build_dimer()), PositivityViolated);
  CHECK_THROWS_AS(make_correlation(0.0, 0.5, build_dimer()), ConfigError);
  CHECK_THROWS_AS(make_correlation(-1.0, 0.5, build_dimer()), ConfigError);
}

TEST_CASE("sector rates are gamma0 (1 + c lambda), ascending") {
  const CorrelationModel m = make_correlation(2.0, 0.5, build_dimer());
  const RVector r = sector_rates(m);
  REQUIRE(r.size() == 2);
  CHECK(r(0) == doctest::Approx(1.0));  // 2 (1 - 0.5)
  CHECK(r(1) == doctest::Approx(3.0));  // 2 (1 + 0.5)
}

TEST_CASE("protected mode at the positivity boundary") {
  const CorrelationModel m = make_correlation(1.0, 1.0, build_dimer());
  const auto prot = protected_modes(m);
  REQUIRE(prot.size() == 1);
  CHECK(prot[0] == 0);  // the lambda = -1 mode
  const CorrelationModel away = make_correlation(1.0, 0.5, build_dimer());
  CHECK(protected_modes(away).empty());
}

TEST_CASE("cycle of 4 at c = -1/2 has exactly one silent sector") {
  const CorrelationModel m = make_correlation(1.0, -0.5, build_cycle(4));
  const RVector r = sector_rates(m);
  int zeros = 0;
  for (Index k = 0; k < r.size(); ++k) {
    if (std::abs(r(k)) <= 1e-12) ++zeros;
  }
  CHECK(zeros == 1);
}

TEST_CASE("custom adjacency validation") {
  RMatrix bad = RMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(build_custom(bad), NotSymmetric);

  RMatrix diag = RMatrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  CHECK_THROWS_AS(build_custom(diag), NotSymmetric);

  RMatrix neg = RMatrix::Zero(2, 2);
  neg(0, 1) = neg(1, 0) = -1.0;
  CHECK_THROWS_AS(build_custom(neg), NotSymmetric);

  CHECK_THROWS_AS(build_custom(RMatrix::Zero(1, 1)), TooSmall);

  RMatrix path = RMatrix::Zero(3, 3);
  path(0, 1) = path(1, 0) = 1.0;
  path(1, 2) = path(2, 1) = 1.0;
  const NoiseGraph g = build_custom(path);
  CHECK(g.kind == "custom");
  CHECK(!g.regular_degree.has_value());
  // path graph spectrum: -sqrt(2), 0, sqrt(2)
  CHECK(g.eigvals(0) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(g.eigvals(1) == doctest::Approx(0.0));
  CHECK(g.eigvals(2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("adjacency files parse with comments and fail on ragged rows") {
  const char* path = "tmp_adjacency_ok.txt";
  {
    std::ofstream f(path);
    f << "# three-site path\n";
    f << "0 1 0\n";
    f << "1 0 1  # middle row\n";
    f << "0 1 0\n";
  }
  const RMatrix a = load_adjacency(path);
  REQUIRE(a.rows() == 3);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(2, 2) == 0.0);
  std::remove(path);

  const char* ragged = "tmp_adjacency_ragged.txt";
  {
    std::ofstream f(ragged);
    f << "0 1\n1 0 1\n";
  }
  CHECK_THROWS_AS(load_adjacency(ragged), ConfigError);
  std::remove(ragged);

  CHECK_THROWS_AS(load_adjacency("definitely_missing_file.txt"), ConfigError);
}

}  // TEST_SUITE
