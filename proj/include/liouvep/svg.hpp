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

#include <string>
#include <vector>

namespace liouvep {

/// Styling knobs shared by both plot kinds. Output is deterministic: no
/// timestamps, no randomized ids, fixed float formatting.
struct SvgOptions {
  int width = 800;
  int height = 520;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_y = false;      // line plot: plot log10 of positive values
  bool log_color = false;  // heatmap: color by log10 of positive values
};

/// Polyline plot of y against x. Non-finite samples (and non-positive ones in
/// log mode) break the path instead of being interpolated over.
std::string svg_line_plot(const std::vector<double>& x, const std::vector<double>& y,
                          const SvgOptions& opts);

/// Cell heatmap over the tensor grid x × y with values indexed row-major as
/// values[ix * y.size() + iy]. Non-finite cells are drawn in grey.
std::string svg_heatmap(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& values, const SvgOptions& opts);

}  // namespace liouvep
