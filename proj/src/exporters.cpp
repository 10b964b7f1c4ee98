// Copyright 2026 The netid Authors
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

#include "netid/exporters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace netid {

namespace {

std::string short_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

}  // namespace

std::string to_dot(const Matrix& a, const std::vector<Index>& measured,
                   const std::string& name, double presence_threshold) {
  require(a.rows() == a.cols(), ErrorCode::invalid_input,
          "to_dot: matrix must be square");
  const std::set<Index> dashed(measured.begin(), measured.end());
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (Index i = 0; i < a.rows(); ++i) {
    out << "  " << (i + 1);
    if (dashed.count(i)) out << " [style=dashed, color=blue]";
    out << ";\n";
  }
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (std::abs(a(i, j)) > presence_threshold) {
        out << "  " << (j + 1) << " -> " << (i + 1) << " [label=\""
            << short_number(a(i, j)) << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

struct AxisScale {
  double lo = 0.0;
  double hi = 1.0;

  double map(double v, double pixel_lo, double pixel_hi) const {
    const double span = hi - lo;
    const double unit = span > 0.0 ? (v - lo) / span : 0.5;
    return pixel_lo + unit * (pixel_hi - pixel_lo);
  }
};

AxisScale fit_axis(double lo, double hi) {
  if (!(hi > lo)) {
    hi = lo + 1.0;
    lo -= 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<double>& x,
                          const std::vector<PlotSeries>& series) {
  require(!x.empty(), ErrorCode::invalid_input, "svg_line_plot: empty x axis");
  for (const auto& s : series) {
    require(s.y.size() == x.size(), ErrorCode::invalid_input,
            "svg_line_plot: series length mismatch");
  }

  double ylo = series.empty() ? 0.0 : series.front().y.front();
  double yhi = ylo;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double err = i < s.y_err.size() ? s.y_err[i] : 0.0;
      ylo = std::min(ylo, s.y[i] - err);
      yhi = std::max(yhi, s.y[i] + err);
    }
  }
  const AxisScale xs = fit_axis(*std::min_element(x.begin(), x.end()),
                                *std::max_element(x.begin(), x.end()));
  const AxisScale ys = fit_axis(ylo, yhi);

  const double px_lo = kMarginLeft;
  const double px_hi = kWidth - kMarginRight;
  const double py_lo = kHeight - kMarginBottom;  // y axis grows upward
  const double py_hi = kMarginTop;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth
      << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << title << "</text>\n";

  // Axes and ticks.
  svg << "<line x1=\"" << px_lo << "\" y1=\"" << py_lo << "\" x2=\"" << px_hi
      << "\" y2=\"" << py_lo << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << px_lo << "\" y1=\"" << py_lo << "\" x2=\"" << px_lo
      << "\" y2=\"" << py_hi << "\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int k = 0; k <= ticks; ++k) {
    const double fx = xs.lo + (xs.hi - xs.lo) * k / ticks;
    const double px = xs.map(fx, px_lo, px_hi);
    svg << "<line x1=\"" << px << "\" y1=\"" << py_lo << "\" x2=\"" << px
        << "\" y2=\"" << py_lo + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px << "\" y=\"" << py_lo + 18
        << "\" text-anchor=\"middle\">" << short_number(fx) << "</text>\n";
    const double fy = ys.lo + (ys.hi - ys.lo) * k / ticks;
    const double py = ys.map(fy, py_lo, py_hi);
    svg << "<line x1=\"" << px_lo - 5 << "\" y1=\"" << py << "\" x2=\""
        << px_lo << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px_lo - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << short_number(fy) << "</text>\n";
  }
  svg << "<text x=\"" << (px_lo + px_hi) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (py_lo + py_hi) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (py_lo + py_hi) / 2 << ")\">" << ylabel << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      svg << xs.map(x[i], px_lo, px_hi) << ',' << ys.map(s.y[i], py_lo, py_hi)
          << ' ';
    }
    svg << "\"/>\n";
    for (std::size_t i = 0; i < s.y_err.size(); ++i) {
      if (s.y_err[i] <= 0.0) continue;
      const double px = xs.map(x[i], px_lo, px_hi);
      svg << "<line x1=\"" << px << "\" y1=\""
          << ys.map(s.y[i] - s.y_err[i], py_lo, py_hi) << "\" x2=\"" << px
          << "\" y2=\"" << ys.map(s.y[i] + s.y_err[i], py_lo, py_hi)
          << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
    }
    const double legend_y = kMarginTop + 16.0 * static_cast<double>(si);
    svg << "<line x1=\"" << px_hi - 110 << "\" y1=\"" << legend_y << "\" x2=\""
        << px_hi - 90 << "\" y2=\"" << legend_y << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << px_hi - 84 << "\" y=\"" << legend_y + 4 << "\">"
        << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string trajectory_svg(const TrajectoryTable& table) {
  std::vector<double> x(table.t.data(), table.t.data() + table.t.size());
  std::vector<PlotSeries> series;
  const Index p = table.y.cols();
  for (Index k = 0; k < p; ++k) {
    PlotSeries s;
    s.label = p == 1 ? "y" : "y" + std::to_string(k + 1);
    for (Index i = 0; i < table.t.size(); ++i) s.y.push_back(table.y(i, k));
    series.push_back(std::move(s));
  }
  for (Index k = 0; k < p; ++k) {
    PlotSeries s;
    s.label = p == 1 ? "ytilde" : "ytilde" + std::to_string(k + 1);
    for (Index i = 0; i < table.t.size(); ++i) {
      s.y.push_back(table.ytilde(i, k));
    }
    series.push_back(std::move(s));
  }
  for (Index k = 0; k < p; ++k) {
    PlotSeries s;
    s.label = p == 1 ? "e" : "e" + std::to_string(k + 1);
    for (Index i = 0; i < table.t.size(); ++i) s.y.push_back(table.e(i, k));
    series.push_back(std::move(s));
  }
  return svg_line_plot("Observed trajectories and error", "t", "output", x,
                       series);
}

std::string experiment_svg(const std::vector<ExperimentRow>& rows,
                           const std::string& ensemble) {
  std::vector<double> x;
  PlotSeries mean;
  mean.label = ensemble;
  for (const auto& row : rows) {
    if (row.ensemble != ensemble) continue;
    x.push_back(static_cast<double>(row.measured));
    mean.y.push_back(row.mean_flip_pct);
    mean.y_err.push_back(row.std_flip_pct);
  }
  require(!x.empty(), ErrorCode::invalid_input,
          "experiment_svg: no rows for ensemble " + ensemble);
  return svg_line_plot("Edges flipped vs sensors measured", "measured nodes",
                       "flipped edges [% of n^2]", x, {mean});
}

}  // namespace netid
