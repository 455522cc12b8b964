// Copyright 2026 The qwit authors
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

#include "qwit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qwit {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Five-stop blue -> yellow color ramp.
std::string color_for(double unit) {
  static const double stops[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  const double x = std::clamp(unit, 0.0, 1.0) * 4.0;
  const int lo = std::min(3, static_cast<int>(x));
  const double f = x - lo;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(stops[lo][0] + f * (stops[lo + 1][0] - stops[lo][0])),
                static_cast<int>(stops[lo][1] + f * (stops[lo + 1][1] - stops[lo][1])),
                static_cast<int>(stops[lo][2] + f * (stops[lo + 1][2] - stops[lo][2])));
  return buf;
}

}  // namespace

std::string render_grid_svg(const std::vector<double>& xs, const std::vector<double>& ys,
                            const std::vector<std::vector<double>>& values,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label) {
  if (xs.empty() || ys.empty() || values.size() != ys.size()) {
    throw std::invalid_argument("render_grid_svg: grid/value shape mismatch");
  }
  const int width = 640, height = 480;
  const int left = 70, right = 90, top = 40, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  double vmin = values[0][0], vmax = values[0][0];
  for (const auto& row : values) {
    for (const double v : row) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }
  const double span = (vmax > vmin) ? (vmax - vmin) : 1.0;

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "' font-family='sans-serif' font-size='12'>\n";
  svg << "<text x='" << width / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";

  if (xs.size() == 1 || ys.size() == 1) {
    // Degenerate grid: line plot along the non-trivial axis.
    const bool along_x = ys.size() == 1;
    const auto& axis = along_x ? xs : ys;
    std::vector<double> line(axis.size());
    for (std::size_t i = 0; i < axis.size(); ++i) {
      line[i] = along_x ? values[0][i] : values[i][0];
    }
    const double amin = axis.front(), amax = axis.back();
    const double aspan = (amax > amin) ? amax - amin : 1.0;
    svg << "<polyline fill='none' stroke='#2166ac' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < axis.size(); ++i) {
      const double px = left + (axis[i] - amin) / aspan * plot_w;
      const double py = top + plot_h - (line[i] - vmin) / span * plot_h;
      svg << fmt(px) << "," << fmt(py) << " ";
    }
    svg << "'/>\n";
    svg << "<text x='" << left + plot_w / 2 << "' y='" << height - 12
        << "' text-anchor='middle'>" << (along_x ? x_label : y_label) << "</text>\n";
    svg << "<text x='18' y='" << top + plot_h / 2 << "' transform='rotate(-90 18 "
        << top + plot_h / 2 << ")' text-anchor='middle'>witness value</text>\n";
    svg << "<text x='" << left << "' y='" << height - 30 << "'>" << fmt(amin) << "</text>\n";
    svg << "<text x='" << left + plot_w << "' y='" << height - 30 << "' text-anchor='end'>"
        << fmt(amax) << "</text>\n";
    svg << "<text x='" << left - 6 << "' y='" << top + plot_h << "' text-anchor='end'>"
        << fmt(vmin) << "</text>\n";
    svg << "<text x='" << left - 6 << "' y='" << top + 10 << "' text-anchor='end'>" << fmt(vmax)
        << "</text>\n";
  } else {
    const double cell_w = plot_w / static_cast<double>(xs.size());
    const double cell_h = plot_h / static_cast<double>(ys.size());
    for (std::size_t r = 0; r < ys.size(); ++r) {
      for (std::size_t c = 0; c < xs.size(); ++c) {
        const double unit = (values[r][c] - vmin) / span;
        const double px = left + c * cell_w;
        const double py = top + plot_h - (r + 1) * cell_h;  // y grows upward
        svg << "<rect x='" << fmt(px) << "' y='" << fmt(py) << "' width='" << fmt(cell_w + 0.5)
            << "' height='" << fmt(cell_h + 0.5) << "' fill='" << color_for(unit) << "'/>\n";
      }
    }
    svg << "<text x='" << left + plot_w / 2 << "' y='" << height - 12
        << "' text-anchor='middle'>" << x_label << "</text>\n";
    svg << "<text x='18' y='" << top + plot_h / 2 << "' transform='rotate(-90 18 "
        << top + plot_h / 2 << ")' text-anchor='middle'>" << y_label << "</text>\n";
    svg << "<text x='" << left << "' y='" << height - 30 << "'>" << fmt(xs.front())
        << "</text>\n";
    svg << "<text x='" << left + plot_w << "' y='" << height - 30 << "' text-anchor='end'>"
        << fmt(xs.back()) << "</text>\n";
    svg << "<text x='" << left - 6 << "' y='" << top + plot_h << "' text-anchor='end'>"
        << fmt(ys.front()) << "</text>\n";
    svg << "<text x='" << left - 6 << "' y='" << top + 10 << "' text-anchor='end'>"
        << fmt(ys.back()) << "</text>\n";
    // color bar
    const double bar_x = width - right + 20;
    for (int i = 0; i < 100; ++i) {
      const double py = top + plot_h - (i + 1) * plot_h / 100.0;
      svg << "<rect x='" << fmt(bar_x) << "' y='" << fmt(py) << "' width='16' height='"
          << fmt(plot_h / 100.0 + 0.5) << "' fill='" << color_for(i / 99.0) << "'/>\n";
    }
    svg << "<text x='" << bar_x + 20 << "' y='" << top + plot_h << "'>" << fmt(vmin)
        << "</text>\n";
    svg << "<text x='" << bar_x + 20 << "' y='" << top + 12 << "'>" << fmt(vmax) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace qwit
