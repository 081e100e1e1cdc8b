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

#include "liouvep/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "liouvep/error.hpp"

namespace liouvep {

namespace {

std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Frame {
  double x0, y0, x1, y1;  // plot rectangle in pixel coordinates
};

Frame frame_of(const SvgOptions& o) {
  return Frame{64.0, o.title.empty() ? 20.0 : 40.0, o.width - 20.0, o.height - 48.0};
}

void open_svg(std::ostringstream& s, const SvgOptions& o) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\""
    << o.height << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\">\n";
  s << "<rect width=\"" << o.width << "\" height=\"" << o.height << "\" fill=\"white\"/>\n";
  if (!o.title.empty()) {
    s << "<text x=\"" << o.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(o.title) << "</text>\n";
  }
}

void draw_axes(std::ostringstream& s, const SvgOptions& o, const Frame& f, double xmin,
               double xmax, double ymin, double ymax, bool log_y) {
  s << "<rect x=\"" << fmt6(f.x0) << "\" y=\"" << fmt6(f.y0) << "\" width=\""
    << fmt6(f.x1 - f.x0) << "\" height=\"" << fmt6(f.y1 - f.y0)
    << "\" fill=\"none\" stroke=\"#333\"/>\n";
  auto label_y = [&](double v, double py) {
    s << "<text x=\"" << fmt6(f.x0 - 6) << "\" y=\"" << fmt6(py + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << (log_y ? "1e" + fmt6(v) : fmt6(v)) << "</text>\n";
  };
  auto label_x = [&](double v, double px) {
    s << "<text x=\"" << fmt6(px) << "\" y=\"" << fmt6(f.y1 + 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt6(v)
      << "</text>\n";
  };
  label_x(xmin, f.x0);
  label_x(xmax, f.x1);
  label_x(0.5 * (xmin + xmax), 0.5 * (f.x0 + f.x1));
  label_y(ymax, f.y0);
  label_y(ymin, f.y1);
  label_y(0.5 * (ymin + ymax), 0.5 * (f.y0 + f.y1));
  if (!o.xlabel.empty()) {
    s << "<text x=\"" << fmt6(0.5 * (f.x0 + f.x1)) << "\" y=\"" << fmt6(f.y1 + 36)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(o.xlabel) << "</text>\n";
  }
  if (!o.ylabel.empty()) {
    s << "<text x=\"16\" y=\"" << fmt6(0.5 * (f.y0 + f.y1))
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 16 " << fmt6(0.5 * (f.y0 + f.y1)) << ")\">" << escape(o.ylabel)
      << "</text>\n";
  }
}

// Three-stop blue -> teal -> yellow ramp on t in [0, 1].
std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double stops[3][3] = {{48, 18, 89}, {33, 144, 140}, {249, 231, 37}};
  const double u = t < 0.5 ? t * 2.0 : (t - 0.5) * 2.0;
  const int a = t < 0.5 ? 0 : 1;
  int rgb[3];
  for (int k = 0; k < 3; ++k) {
    rgb[k] = static_cast<int>(std::lround(stops[a][k] + u * (stops[a + 1][k] - stops[a][k])));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

std::string svg_line_plot(const std::vector<double>& x, const std::vector<double>& y,
                          const SvgOptions& opts) {
  if (x.size() != y.size()) throw DimMismatch("line plot needs matching x/y lengths");
  if (x.empty()) throw TooSmall("line plot needs at least one sample");

  auto transform = [&](double v) -> double {
    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
    if (opts.log_y) return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
    return v;
  };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  bool any = false;
  for (size_t i = 0; i < x.size(); ++i) {
    const double ty = transform(y[i]);
    if (!std::isfinite(x[i]) || !std::isfinite(ty)) continue;
    any = true;
    xmin = std::min(xmin, x[i]);
    xmax = std::max(xmax, x[i]);
    ymin = std::min(ymin, ty);
    ymax = std::max(ymax, ty);
  }
  if (!any) throw TooSmall("line plot has no finite samples");
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const Frame f = frame_of(opts);
  auto px = [&](double v) { return f.x0 + (v - xmin) / (xmax - xmin) * (f.x1 - f.x0); };
  auto py = [&](double v) { return f.y1 - (v - ymin) / (ymax - ymin) * (f.y1 - f.y0); };

  std::ostringstream s;
  open_svg(s, opts);
  draw_axes(s, opts, f, xmin, xmax, ymin, ymax, opts.log_y);

  std::ostringstream path;
  bool pen_down = false;
  for (size_t i = 0; i < x.size(); ++i) {
    const double ty = transform(y[i]);
    if (!std::isfinite(x[i]) || !std::isfinite(ty)) {
      pen_down = false;
      continue;
    }
    path << (pen_down ? " L " : " M ") << fmt6(px(x[i])) << ' ' << fmt6(py(ty));
    pen_down = true;
  }
  s << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string svg_heatmap(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& values, const SvgOptions& opts) {
  if (x.size() < 2 || y.size() < 2) throw TooSmall("heatmap needs a 2D grid");
  if (values.size() != x.size() * y.size()) {
    throw DimMismatch("heatmap value count does not match grid");
  }

  auto transform = [&](double v) -> double {
    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
    if (opts.log_color) return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
    return v;
  };

  double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
  for (double v : values) {
    const double tv = transform(v);
    if (!std::isfinite(tv)) continue;
    vmin = std::min(vmin, tv);
    vmax = std::max(vmax, tv);
  }
  if (!std::isfinite(vmin)) throw TooSmall("heatmap has no finite cells");
  if (vmax == vmin) vmax = vmin + 1.0;

  const Frame f = frame_of(opts);
  const size_t nx = x.size(), ny = y.size();
  const double cw = (f.x1 - f.x0) / static_cast<double>(nx);
  const double ch = (f.y1 - f.y0) / static_cast<double>(ny);

  std::ostringstream s;
  open_svg(s, opts);
  for (size_t ix = 0; ix < nx; ++ix) {
    for (size_t iy = 0; iy < ny; ++iy) {
      const double tv = transform(values[ix * ny + iy]);
      const std::string color =
          std::isfinite(tv) ? ramp_color((tv - vmin) / (vmax - vmin)) : "#bbbbbb";
      const double cx = f.x0 + static_cast<double>(ix) * cw;
      const double cy = f.y1 - static_cast<double>(iy + 1) * ch;
      s << "<rect x=\"" << fmt6(cx) << "\" y=\"" << fmt6(cy) << "\" width=\"" << fmt6(cw + 0.5)
        << "\" height=\"" << fmt6(ch + 0.5) << "\" fill=\"" << color << "\"/>\n";
    }
  }
  draw_axes(s, opts, f, x.front(), x.back(), y.front(), y.back(), false);
  s << "</svg>\n";
  return s.str();
}

}  // namespace liouvep
