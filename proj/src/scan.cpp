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

#include "liouvep/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "liouvep/spectral.hpp"
#include "liouvep/version.hpp"

namespace liouvep {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CMatrix hopping_hamiltonian(const RMatrix& adj, double j, double delta) {
  const int n = static_cast<int>(adj.rows());
  const Index d = Index{1} << n;
  CMatrix h = CMatrix::Zero(d, d);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double w = adj(u, v);
      if (w == 0.0) continue;
      const CMatrix spu_smv =
          site_operator(n, u, sigma_plus()) * site_operator(n, v, sigma_minus());
      h += j * w * (spu_smv + spu_smv.adjoint());
    }
  }
  if (delta != 0.0) {
    for (int k = 0; k < n; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      h += 0.5 * delta * sign * site_operator(n, k, pauli_z());
    }
  }
  return h;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) {
    g[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
  return g;
}

void validate_axis(const AxisSpec& ax) {
  if (ax.steps < 2) throw ConfigError("axis needs at least 2 steps");
  if (!(ax.lo < ax.hi)) throw ConfigError("axis requires lo < hi");
  // membership check
  ModelSpec probe;
  set_model_param(probe, ax.param, 0.0);
}

ScanPoint evaluate_point(const ScanConfig& cfg, double a1, double a2, bool is2d) {
  ScanPoint p;
  p.axis1 = a1;
  p.axis2 = is2d ? a2 : kNan;

  ModelSpec spec = cfg.base;
  try {
    set_model_param(spec, cfg.axis1.param, a1);
    if (is2d) set_model_param(spec, cfg.axis2->param, a2);
    const LindbladModel model = model_from_spec(spec);
    const Superoperator l = assemble_liouvillian(model);

    SpectralOptions so;
    so.rank_tol = cfg.tol.rank_tol;
    so.cluster_radius_rel = cfg.tol.cluster_radius_rel;
    const SpectralReport rep = decompose(l, so);

    p.overflow = rep.ep_overflow || rep.ep_strength >= cfg.tol.ep_cap;
    p.ep_strength = std::min(rep.ep_strength, cfg.tol.ep_cap);

    const double scale = std::max(1.0, l.entries.norm());
    const double ztol = cfg.tol.zero_tol_rel * scale;
    const double marg = cfg.tol.marginal_tol * std::abs(spec.gamma);
    double gap = std::numeric_limits<double>::infinity();
    bool any_nonzero = false;
    for (Index k = 0; k < rep.eigvals.size(); ++k) {
      const Complex z = rep.eigvals(k);
      if (std::abs(z) <= ztol) continue;
      any_nonzero = true;
      gap = std::min(gap, -z.real());
      if (std::abs(z.real()) <= marg) ++p.n_marginal;
    }
    p.spectral_gap = any_nonzero ? gap : 0.0;

    for (const auto& cl : rep.clusters) {
      if (cl.defective) {
        p.defective_any = true;
        break;
      }
    }
  } catch (const Error&) {
    p.excluded = true;
    p.ep_strength = kNan;
    p.spectral_gap = kNan;
    p.n_marginal = 0;
    p.defective_any = false;
    p.overflow = false;
  }
  return p;
}

nlohmann::ordered_json config_json(const ScanConfig& cfg) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(cfg.base.kind);
  j["channel"] = to_string(cfg.base.channel);
  j["n_sites"] = cfg.base.n_sites;
  j["gamma"] = cfg.base.gamma;
  j["c"] = cfg.base.c;
  j["j"] = cfg.base.j;
  j["delta"] = cfg.base.delta;
  if (cfg.base.kind == ModelKind::Custom) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Index r = 0; r < cfg.base.adjacency.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Index s = 0; s < cfg.base.adjacency.cols(); ++s) row.push_back(cfg.base.adjacency(r, s));
      rows.push_back(row);
    }
    j["adjacency"] = rows;
  }
  auto axis = [](const AxisSpec& ax) {
    nlohmann::ordered_json a;
    a["param"] = ax.param;
    a["lo"] = ax.lo;
    a["hi"] = ax.hi;
    a["steps"] = ax.steps;
    return a;
  };
  j["axis1"] = axis(cfg.axis1);
  j["axis2"] = cfg.axis2 ? axis(*cfg.axis2) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json t;
  t["rank_tol"] = cfg.tol.rank_tol;
  t["cluster_radius_rel"] = cfg.tol.cluster_radius_rel;
  t["marginal_tol"] = cfg.tol.marginal_tol;
  t["zero_tol_rel"] = cfg.tol.zero_tol_rel;
  t["ep_cap"] = cfg.tol.ep_cap;
  j["tol"] = t;
  // jobs intentionally omitted: worker count must not change the bytes.
  return j;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return kNan;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Dimer: return "dimer";
    case ModelKind::Cycle: return "cycle";
    case ModelKind::Custom: return "custom";
  }
  return "unknown";
}

std::string to_string(DimerChannel ch) {
  return ch == DimerChannel::Dephasing ? "dephasing" : "relaxation";
}

ModelKind model_kind_from(const std::string& s) {
  if (s == "dimer") return ModelKind::Dimer;
  if (s == "cycle") return ModelKind::Cycle;
  if (s == "custom") return ModelKind::Custom;
  throw ConfigError("unknown model kind: " + s);
}

DimerChannel channel_from(const std::string& s) {
  if (s == "dephasing") return DimerChannel::Dephasing;
  if (s == "relaxation") return DimerChannel::Relaxation;
  throw ConfigError("unknown channel: " + s);
}

void set_model_param(ModelSpec& spec, const std::string& name, double value) {
  if (name == "c") {
    spec.c = value;
  } else if (name == "gamma") {
    spec.gamma = value;
  } else if (name == "j") {
    spec.j = value;
  } else if (name == "delta") {
    spec.delta = value;
  } else {
    throw ConfigError("unknown scan parameter: " + name +
                      " (expected c, gamma, j or delta)");
  }
}

LindbladModel model_from_spec(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::Dimer: {
      if (spec.n_sites != 2) {
        throw ConfigError("dimer model has exactly 2 sites");
      }
      DimerParams p;
      p.channel = spec.channel;
      p.gamma = spec.gamma;
      p.c = spec.c;
      p.j = spec.j;
      p.delta = spec.delta;
      return build_dimer_model(p);
    }
    case ModelKind::Cycle: {
      if (spec.n_sites < 3) throw ConfigError("cycle needs at least 3 sites");
      if (spec.n_sites > 6) throw ConfigError("dense representation caps cycles at 6 sites");
      NoiseGraph g = build_cycle(spec.n_sites);
      CMatrix h = hopping_hamiltonian(g.adjacency, spec.j, spec.delta);
      JumpFamily jumps = spec.channel == DimerChannel::Dephasing
                             ? JumpFamily::dephasing(spec.n_sites)
                             : JumpFamily::relaxation(spec.n_sites);
      return make_model(std::move(h), std::move(jumps),
                        make_correlation(spec.gamma, spec.c, std::move(g)));
    }
    case ModelKind::Custom: {
      if (spec.adjacency.rows() == 0) throw ConfigError("custom model needs an adjacency matrix");
      if (spec.adjacency.rows() > 6) {
        throw ConfigError("dense representation caps custom graphs at 6 sites");
      }
      NoiseGraph g = build_custom(spec.adjacency);
      const int n = g.n();
      CMatrix h = hopping_hamiltonian(g.adjacency, spec.j, spec.delta);
      JumpFamily jumps = spec.channel == DimerChannel::Dephasing ? JumpFamily::dephasing(n)
                                                                 : JumpFamily::relaxation(n);
      return make_model(std::move(h), std::move(jumps),
                        make_correlation(spec.gamma, spec.c, std::move(g)));
    }
  }
  throw ConfigError("unknown model kind");
}

ScanResult run_scan(const ScanConfig& cfg) {
  validate_axis(cfg.axis1);
  if (cfg.axis2) {
    validate_axis(*cfg.axis2);
    if (cfg.axis2->param == cfg.axis1.param) {
      throw ConfigError("axis1 and axis2 scan the same parameter");
    }
  }
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");

  ScanResult res;
  res.config = cfg;
  res.version = kVersion;
  res.grid1 = linspace(cfg.axis1.lo, cfg.axis1.hi, cfg.axis1.steps);
  if (cfg.axis2) res.grid2 = linspace(cfg.axis2->lo, cfg.axis2->hi, cfg.axis2->steps);

  const bool is2d = cfg.axis2.has_value();
  const int n1 = static_cast<int>(res.grid1.size());
  const int n2 = is2d ? static_cast<int>(res.grid2.size()) : 1;
  const int total = n1 * n2;
  res.points.resize(total);

  auto work = [&](int start, int stride) {
    for (int idx = start; idx < total; idx += stride) {
      const int i1 = idx / n2;
      const int i2 = idx % n2;
      res.points[idx] =
          evaluate_point(cfg, res.grid1[i1], is2d ? res.grid2[i2] : kNan, is2d);
    }
  };

  const int jobs = std::min(cfg.jobs, total);
  if (jobs <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }

  const bool all_excluded =
      std::all_of(res.points.begin(), res.points.end(), [](const ScanPoint& p) { return p.excluded; });
  if (all_excluded) throw AllPointsExcluded("every grid point was excluded");
  return res;
}

void write_scan_csv(const ScanResult& r, std::ostream& out) {
  out << "# liouvep scan " << r.version << "\n";
  out << "# config: " << config_json(r.config).dump() << "\n";
  out << "axis1,axis2,ep_strength,spectral_gap,n_marginal,defective_any,excluded,overflow\n";
  for (const auto& p : r.points) {
    out << fmt17(p.axis1) << ',' << fmt17(p.axis2) << ',' << fmt17(p.ep_strength) << ','
        << fmt17(p.spectral_gap) << ',' << p.n_marginal << ',' << (p.defective_any ? 1 : 0) << ','
        << (p.excluded ? 1 : 0) << ',' << (p.overflow ? 1 : 0) << "\n";
  }
}

std::string scan_csv_string(const ScanResult& r) {
  std::ostringstream os;
  write_scan_csv(r, os);
  return os.str();
}

LoadedScan read_scan_csv(std::istream& in) {
  LoadedScan loaded;
  ScanResult& res = loaded.result;

  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# config: ";
      if (line.rfind(key, 0) == 0) loaded.config_json = line.substr(key.size());
      const std::string tool = "# liouvep scan ";
      if (line.rfind(tool, 0) == 0) res.version = line.substr(tool.size());
      continue;
    }
    if (!header_seen) {
      if (line.rfind("axis1,axis2,", 0) != 0) {
        throw ConfigError("unrecognized scan CSV header at line " + std::to_string(lineno));
      }
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) {
      throw ConfigError("scan CSV row has " + std::to_string(cells.size()) +
                        " columns at line " + std::to_string(lineno));
    }
    ScanPoint p;
    try {
      p.axis1 = std::stod(cells[0]);
      p.axis2 = std::stod(cells[1]);
      p.ep_strength = std::stod(cells[2]);
      p.spectral_gap = std::stod(cells[3]);
      p.n_marginal = std::stoi(cells[4]);
      p.defective_any = std::stoi(cells[5]) != 0;
      p.excluded = std::stoi(cells[6]) != 0;
      p.overflow = std::stoi(cells[7]) != 0;
    } catch (const std::exception&) {
      throw ConfigError("scan CSV parse error at line " + std::to_string(lineno));
    }
    res.points.push_back(p);
  }
  if (!header_seen || res.points.empty()) throw ConfigError("scan CSV contains no data rows");

  // Rebuild the grids from the row coordinates (written axis1-major).
  for (const auto& p : res.points) {
    if (res.grid1.empty() || res.grid1.back() != p.axis1) {
      if (std::find(res.grid1.begin(), res.grid1.end(), p.axis1) == res.grid1.end()) {
        res.grid1.push_back(p.axis1);
      }
    }
  }
  const bool is2d = !std::isnan(res.points.front().axis2);
  if (is2d) {
    for (const auto& p : res.points) {
      if (std::find(res.grid2.begin(), res.grid2.end(), p.axis2) == res.grid2.end()) {
        res.grid2.push_back(p.axis2);
      }
    }
  }
  const size_t expect = res.grid1.size() * std::max<size_t>(1, res.grid2.size());
  if (expect != res.points.size()) {
    throw ConfigError("scan CSV grid is incomplete: " + std::to_string(res.points.size()) +
                      " rows for " + std::to_string(expect) + " grid points");
  }

  if (!loaded.config_json.empty()) {
    try {
      const auto j = nlohmann::json::parse(loaded.config_json);
      res.config.base.kind = model_kind_from(j.value("kind", "dimer"));
      res.config.base.channel = channel_from(j.value("channel", "dephasing"));
      res.config.base.n_sites = j.value("n_sites", 2);
      res.config.base.gamma = j.value("gamma", 1.0);
      res.config.base.c = j.value("c", 0.0);
      res.config.base.j = j.value("j", 0.0);
      res.config.base.delta = j.value("delta", 0.0);
      if (j.contains("axis1")) {
        res.config.axis1.param = j["axis1"].value("param", "c");
        res.config.axis1.lo = j["axis1"].value("lo", 0.0);
        res.config.axis1.hi = j["axis1"].value("hi", 0.0);
        res.config.axis1.steps = j["axis1"].value("steps", 0);
      }
      if (j.contains("axis2") && !j["axis2"].is_null()) {
        AxisSpec a2;
        a2.param = j["axis2"].value("param", "");
        a2.lo = j["axis2"].value("lo", 0.0);
        a2.hi = j["axis2"].value("hi", 0.0);
        a2.steps = j["axis2"].value("steps", 0);
        res.config.axis2 = a2;
      }
    } catch (const nlohmann::json::exception&) {
      // Config echo is advisory; rows alone are sufficient downstream.
    }
  }
  return loaded;
}

std::vector<SeamPoint> extract_seam(const ScanResult& r, const std::string& observable,
                                    double prominence) {
  const bool use_gap = observable == "spectral_gap";
  if (!use_gap && observable != "ep_strength") {
    throw ConfigError("seam observable must be ep_strength or spectral_gap");
  }
  auto value_of = [&](const ScanPoint& p) { return use_gap ? p.spectral_gap : p.ep_strength; };

  std::vector<double> finite;
  for (const auto& p : r.points) {
    const double v = value_of(p);
    if (!p.excluded && std::isfinite(v)) finite.push_back(v);
  }
  if (finite.empty()) throw AllPointsExcluded("no finite values to extract a seam from");
  const double floor = prominence * median_of(finite);

  const int n2 = std::max<size_t>(1, r.grid2.size());
  const int n1 = static_cast<int>(r.points.size()) / n2;
  const int row_len = r.grid2.empty() ? n1 : n2;
  const int n_rows = r.grid2.empty() ? 1 : n1;

  std::vector<SeamPoint> seam;
  for (int row = 0; row < n_rows; ++row) {
    auto at = [&](int k) -> const ScanPoint& {
      return r.grid2.empty() ? r.points[k] : r.points[row * n2 + k];
    };
    auto usable = [&](int k) {
      return !at(k).excluded && std::isfinite(value_of(at(k)));
    };
    // Plateau-aware strict local maxima; runs touching the boundary are
    // discarded (capped values at a seam can tie exactly).
    int k = 0;
    while (k < row_len) {
      if (!usable(k)) {
        ++k;
        continue;
      }
      int end = k;
      while (end + 1 < row_len && usable(end + 1) &&
             value_of(at(end + 1)) == value_of(at(k))) {
        ++end;
      }
      const double v = value_of(at(k));
      const bool left_ok = k > 0 && usable(k - 1) && value_of(at(k - 1)) < v;
      const bool right_ok = end + 1 < row_len && usable(end + 1) && value_of(at(end + 1)) < v;
      if (left_ok && right_ok && v > floor) {
        const int mid = (k + end) / 2;
        SeamPoint sp;
        if (r.grid2.empty()) {
          sp.i1 = mid;
          sp.i2 = 0;
          sp.axis1 = at(mid).axis1;
          sp.axis2 = kNan;
        } else {
          sp.i1 = row;
          sp.i2 = mid;
          sp.axis1 = at(mid).axis1;
          sp.axis2 = at(mid).axis2;
        }
        sp.value = v;
        seam.push_back(sp);
      }
      k = end + 1;
    }
  }
  return seam;
}

ScalingFit fit_scaling(const ScanResult& r, double center, double dist_lo, double dist_hi,
                       const std::string& observable) {
  if (!r.grid2.empty()) throw ConfigError("scaling fit needs a 1D scan");
  const bool use_gap = observable == "spectral_gap";
  if (!use_gap && observable != "ep_strength") {
    throw ConfigError("fit observable must be ep_strength or spectral_gap");
  }
  if (!(dist_lo >= 0.0) || !(dist_hi > dist_lo)) {
    throw ConfigError("fit window requires 0 <= dist_lo < dist_hi");
  }

  std::vector<double> lx, ly;
  for (const auto& p : r.points) {
    if (p.excluded || p.overflow) continue;  // saturated values would bias the fit
    const double v = use_gap ? p.spectral_gap : p.ep_strength;
    if (!std::isfinite(v) || v <= 0.0) continue;
    const double dist = std::abs(p.axis1 - center);
    if (dist < dist_lo || dist > dist_hi || dist == 0.0) continue;
    lx.push_back(std::log10(dist));
    ly.push_back(std::log10(v));
  }
  const int n = static_cast<int>(lx.size());
  if (n < 3) {
    throw InsufficientPoints("scaling fit window holds " + std::to_string(n) +
                             " usable points, need at least 3");
  }

  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InsufficientPoints("fit window has no spread in distance");

  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.log10_prefactor = my - fit.exponent * mx;
  fit.n_points = n;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
      const double pred = fit.log10_prefactor + fit.exponent * lx[i];
      ss_res += (ly[i] - pred) * (ly[i] - pred);
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace liouvep
