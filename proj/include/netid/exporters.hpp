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

#ifndef NETID_EXPORTERS_HPP
#define NETID_EXPORTERS_HPP

#include <string>
#include <vector>

#include "netid/epsclose.hpp"
#include "netid/experiment.hpp"

namespace netid {

/// Graphviz digraph of a weight matrix. Nodes are numbered 1..n; measured
/// nodes are drawn dashed (and blue). A(i, j) becomes edge j -> i.
std::string to_dot(const Matrix& a, const std::vector<Index>& measured,
                   const std::string& name,
                   double presence_threshold = kPresenceThreshold);

struct PlotSeries {
  std::string label;
  std::vector<double> y;
  std::vector<double> y_err;  // optional, same length as y
};

/// Self-contained SVG line plot (inline axes, no external assets).
std::string svg_line_plot(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<double>& x,
                          const std::vector<PlotSeries>& series);

std::string trajectory_svg(const TrajectoryTable& table);

std::string experiment_svg(const std::vector<ExperimentRow>& rows,
                           const std::string& ensemble);

}  // namespace netid

#endif  // NETID_EXPORTERS_HPP
