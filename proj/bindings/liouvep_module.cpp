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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "liouvep/dimer.hpp"
#include "liouvep/dynamics.hpp"
#include "liouvep/lindblad.hpp"
#include "liouvep/scan.hpp"
#include "liouvep/spectral.hpp"
#include "liouvep/version.hpp"

namespace py = pybind11;
using namespace liouvep;

namespace {

ModelSpec spec_from(const std::string& model, const std::string& channel, int n_sites,
                    double gamma, double c, double j, double delta,
                    const std::optional<RMatrix>& adjacency) {
  ModelSpec s;
  s.kind = model_kind_from(model);
  s.channel = channel_from(channel);
  s.n_sites = n_sites;
  s.gamma = gamma;
  s.c = c;
  s.j = j;
  s.delta = delta;
  if (adjacency) s.adjacency = *adjacency;
  return s;
}

DimerParams dimer_params(const std::string& channel, double gamma, double c, double j,
                         double delta) {
  DimerParams p;
  p.channel = channel_from(channel);
  p.gamma = gamma;
  p.c = c;
  p.j = j;
  p.delta = delta;
  return p;
}

py::dict spectrum_dict(const Superoperator& l, double rank_tol) {
  SpectralOptions so;
  so.rank_tol = rank_tol;
  const SpectralReport rep = decompose(l, so);
  py::dict out;
  out["eigenvalues"] = CVector(rep.eigvals);
  out["sigma_min"] = rep.sigma_min;
  out["ep_strength"] = rep.ep_strength;
  out["ep_overflow"] = rep.ep_overflow;
  out["max_residual"] = rep.max_residual;
  py::list clusters;
  for (const EigCluster& c : rep.clusters) {
    py::dict e;
    e["center"] = c.center;
    e["size"] = static_cast<int>(c.members.size());
    e["delta1"] = c.delta1;
    e["delta2"] = c.delta2;
    e["defective"] = c.defective;
    clusters.append(e);
  }
  out["clusters"] = clusters;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Liouvillian superoperators of graph-correlated open quantum systems: "
      "assembly, spectra, eigenvalue-coalescence diagnostics and parameter scans.";
  m.attr("__version__") = kVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const PositivityViolated& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "liouvillian",
      [](const std::string& model, const std::string& channel, int n_sites, double gamma,
         double c, double j, double delta, const std::optional<RMatrix>& adjacency) -> CMatrix {
        return assemble_liouvillian(model_from_spec(
                   spec_from(model, channel, n_sites, gamma, c, j, delta, adjacency)))
            .entries;
      },
      py::arg("model") = "dimer", py::arg("channel") = "dephasing", py::arg("n_sites") = 2,
      py::arg("gamma") = 1.0, py::arg("c") = 0.0, py::arg("j") = 0.0, py::arg("delta") = 0.0,
      py::arg("adjacency") = std::nullopt,
      "Dense generator of d rho/dt as a (d^2, d^2) complex array (column stacking).");

  m.def(
      "spectrum",
      [](const std::string& model, const std::string& channel, int n_sites, double gamma,
         double c, double j, double delta, const std::optional<RMatrix>& adjacency,
         double rank_tol) {
        const Superoperator l = assemble_liouvillian(model_from_spec(
            spec_from(model, channel, n_sites, gamma, c, j, delta, adjacency)));
        return spectrum_dict(l, rank_tol);
      },
      py::arg("model") = "dimer", py::arg("channel") = "dephasing", py::arg("n_sites") = 2,
      py::arg("gamma") = 1.0, py::arg("c") = 0.0, py::arg("j") = 0.0, py::arg("delta") = 0.0,
      py::arg("adjacency") = std::nullopt, py::arg("rank_tol") = 1e-8,
      "Eigendecomposition with eigenvector-conditioning diagnostics, as a dict.");

  m.def(
      "spectrum_of",
      [](const CMatrix& matrix, double rank_tol) {
        return spectrum_dict(Superoperator(matrix), rank_tol);
      },
      py::arg("matrix"), py::arg("rank_tol") = 1e-8,
      "Same diagnostics for an already-assembled (d^2, d^2) generator.");

  m.def(
      "defectiveness",
      [](const CMatrix& matrix, std::complex<double> eigenvalue, double rank_tol) {
        const DefectReport r = defectiveness_test(matrix, eigenvalue, rank_tol);
        py::dict out;
        out["delta1"] = r.delta1;
        out["delta2"] = r.delta2;
        out["defective"] = r.defective;
        return out;
      },
      py::arg("matrix"), py::arg("eigenvalue"), py::arg("rank_tol") = 1e-8,
      "Kernel ranks of (M - lambda) and its square; delta2 > delta1 flags a Jordan block.");

  m.def(
      "dephasing_eigs",
      [](double gamma, double c, double j) {
        return dephasing_eigs(dimer_params("dephasing", gamma, c, j, 0.0));
      },
      py::arg("gamma"), py::arg("c"), py::arg("j"),
      "Closed-form rates of the coherence pair of the dephasing dimer.");

  m.def(
      "relaxation_eigs",
      [](double gamma, double c, double delta) {
        return relaxation_eigs(dimer_params("relaxation", gamma, c, 0.0, delta));
      },
      py::arg("gamma"), py::arg("c"), py::arg("delta"),
      "Candidate closed-form pair rates of the relaxation dimer.");

  m.def(
      "ep_condition_dephasing",
      [](double gamma, double j) {
        const EpLocation loc = ep_condition_dephasing(gamma, j);
        py::dict out;
        out["c_crit"] = loc.c_crit;
        out["in_range"] = loc.in_range;
        return out;
      },
      py::arg("gamma"), py::arg("j"),
      "Correlation strength where the dephasing pair coalesces.");

  m.def(
      "reduced_dephasing",
      [](double gamma, double c, double j) -> Eigen::Matrix2d {
        return reduced_dephasing(dimer_params("dephasing", gamma, c, j, 0.0)).matrix;
      },
      py::arg("gamma"), py::arg("c"), py::arg("j"),
      "Exact 2x2 flow on the coherence pair of the dephasing dimer.");

  m.def(
      "reduced_relaxation",
      [](double gamma, double c, double delta) -> Eigen::Matrix2d {
        return reduced_relaxation(dimer_params("relaxation", gamma, c, 0.0, delta)).matrix;
      },
      py::arg("gamma"), py::arg("c"), py::arg("delta"),
      "Candidate 2x2 flow on the relaxation pair (see validate_reduction).");

  m.def(
      "validate_reduction",
      [](const std::string& channel, double gamma, double c, double j, double delta) {
        const ReductionReport r =
            validate_reduction(dimer_params(channel, gamma, c, j, delta));
        py::dict out;
        out["projected"] = Eigen::Matrix2d(r.projected);
        out["reference"] = Eigen::Matrix2d(r.reference);
        out["max_entry_deviation"] = r.max_entry_deviation;
        out["leakage"] = r.leakage;
        out["leakage_rel"] = r.leakage_rel;
        out["closure_ok"] = r.closure_ok;
        return out;
      },
      py::arg("channel"), py::arg("gamma") = 1.0, py::arg("c") = 0.0, py::arg("j") = 0.0,
      py::arg("delta") = 0.0,
      "Project the adjoint generator onto the 2x2 candidate block and measure "
      "the deviation and the leakage out of the pair.");

  m.def(
      "scan_1d",
      [](const std::string& param, double lo, double hi, int steps, const std::string& model,
         const std::string& channel, int n_sites, double gamma, double c, double j,
         double delta, const std::optional<RMatrix>& adjacency, int jobs) {
        ScanConfig cfg;
        cfg.base = spec_from(model, channel, n_sites, gamma, c, j, delta, adjacency);
        cfg.axis1 = AxisSpec{param, lo, hi, steps};
        cfg.jobs = jobs;
        const ScanResult r = run_scan(cfg);
        py::list grid, strength, gap, excluded;
        for (size_t i = 0; i < r.points.size(); ++i) {
          grid.append(r.grid1[i]);
          strength.append(r.points[i].ep_strength);
          gap.append(r.points[i].spectral_gap);
          excluded.append(r.points[i].excluded);
        }
        py::dict out;
        out["grid"] = grid;
        out["ep_strength"] = strength;
        out["spectral_gap"] = gap;
        out["excluded"] = excluded;
        out["csv"] = scan_csv_string(r);
        return out;
      },
      py::arg("param"), py::arg("lo"), py::arg("hi"), py::arg("steps"),
      py::arg("model") = "dimer", py::arg("channel") = "dephasing", py::arg("n_sites") = 2,
      py::arg("gamma") = 1.0, py::arg("c") = 0.0, py::arg("j") = 0.0, py::arg("delta") = 0.0,
      py::arg("adjacency") = std::nullopt, py::arg("jobs") = 1,
      "Sweep one parameter; returns per-point observables plus the canonical CSV.");
}
