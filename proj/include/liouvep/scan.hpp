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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liouvep/dimer.hpp"

namespace liouvep {

enum class ModelKind { Dimer, Cycle, Custom };

/// Declarative model description used by scans and the CLI.
/// `gamma` is the closed-form rate for the dimer (the dephasing channel
/// internally halves it) and the plain base rate for cycles and custom
/// graphs. `j` scales the hopping Hamiltonian along graph edges; `delta`
/// adds a staggered on-site splitting (+delta/2, -delta/2 alternating).
struct ModelSpec {
  ModelKind kind = ModelKind::Dimer;
  DimerChannel channel = DimerChannel::Dephasing;
  int n_sites = 2;
  double gamma = 1.0;
  double c = 0.0;
  double j = 0.0;
  double delta = 0.0;
  RMatrix adjacency;  // only read when kind == Custom
};

/// Materialize the spec. Throws ConfigError for structural problems and
/// PositivityViolated for an inadmissible correlation strength. Dense
/// representability caps the register at 6 sites.
LindbladModel model_from_spec(const ModelSpec& spec);

/// Overwrite one scalar parameter ("c", "gamma", "j", "delta") by name.
void set_model_param(ModelSpec& spec, const std::string& name, double value);

struct AxisSpec {
  std::string param;  // one of the set_model_param names
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;      // >= 2, endpoints included
};

struct ScanTolerances {
  double rank_tol = 1e-8;
  double cluster_radius_rel = 1e-6;
  double marginal_tol = 1e-7;  // relative to the model gamma
  double zero_tol_rel = 1e-9;  // spectral-gap zero-mode exclusion
  double ep_cap = 1e15;        // reported ep_strength ceiling
};

struct ScanConfig {
  ModelSpec base;
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  ScanTolerances tol;
  int jobs = 1;  // worker threads; never affects the output bytes
};

struct ScanPoint {
  double axis1 = 0.0;
  double axis2 = 0.0;  // nan for 1D scans
  double ep_strength = 0.0;
  double spectral_gap = 0.0;
  int n_marginal = 0;
  bool defective_any = false;
  bool excluded = false;
  bool overflow = false;
};

struct ScanResult {
  ScanConfig config;
  std::vector<double> grid1;
  std::vector<double> grid2;        // empty for 1D
  std::vector<ScanPoint> points;    // index = i1 * max(1, grid2.size()) + i2
  std::string version;
};

/// Evaluate the grid. Inadmissible points are marked excluded rather than
/// aborting the scan; if every point is excluded, throws AllPointsExcluded.
/// Results are bit-identical for any jobs value.
ScanResult run_scan(const ScanConfig& cfg);

/// Deterministic CSV: two comment lines (tool+version, config as one-line
/// JSON), fixed column schema, %.17g floats, LF endings, no timestamps.
void write_scan_csv(const ScanResult& r, std::ostream& out);
std::string scan_csv_string(const ScanResult& r);

/// Parse a CSV produced by write_scan_csv. Grids are rebuilt from the rows;
/// the config line is carried along verbatim when present.
struct LoadedScan {
  ScanResult result;
  std::string config_json;  // raw config echo, may be empty
};
LoadedScan read_scan_csv(std::istream& in);

struct SeamPoint {
  int i1 = 0;
  int i2 = 0;      // 0 for 1D scans
  double axis1 = 0.0;
  double axis2 = 0.0;
  double value = 0.0;
};

/// Ridge extraction: strict local maxima of the observable along axis1 (1D)
/// or along axis2 within each axis1 row (2D), kept only when the value
/// exceeds prominence times the median of the finite samples.
/// observable is "ep_strength" or "spectral_gap".
std::vector<SeamPoint> extract_seam(const ScanResult& r,
                                    const std::string& observable = "ep_strength",
                                    double prominence = 10.0);

struct ScalingFit {
  double exponent = 0.0;        // slope of log10(value) vs log10(distance)
  double log10_prefactor = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

/// Least-squares power-law fit of a 1D scan observable against the distance
/// |axis1 - center|, restricted to distances in [dist_lo, dist_hi]. Throws
/// InsufficientPoints below 3 usable samples.
ScalingFit fit_scaling(const ScanResult& r, double center, double dist_lo, double dist_hi,
                       const std::string& observable = "ep_strength");

std::string to_string(ModelKind k);
std::string to_string(DimerChannel ch);
ModelKind model_kind_from(const std::string& s);
DimerChannel channel_from(const std::string& s);

}  // namespace liouvep
