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

#ifndef NETID_DISSIMILAR_HPP
#define NETID_DISSIMILAR_HPP

#include <optional>
#include <vector>

#include "netid/observability.hpp"

namespace netid {

struct FlippedEdge {
  Index i = 0;  // target node (row)
  Index j = 0;  // source node (column)
  bool added = false;
};

struct FlipMetric {
  std::vector<FlippedEdge> flipped;
  double percentage = 0.0;  // 100 * |flipped| / n^2
};

/// Presence changes between two weight matrices of equal size.
FlipMetric flip_metric(const Matrix& a, const Matrix& anew,
                       double presence_threshold = kPresenceThreshold);

struct Certificate {
  bool l2_equals_l1 = false;
  double residual = 0.0;  // ||Phi^T (Z o sgn(A + Z o (Phi V*)))||_F
};

struct DissimilarResult {
  Matrix delta;     // Phi * V
  Matrix network;   // A + delta
  double objective = 0.0;  // masked l1 value sum |Z o (A + delta)|
  FlipMetric flips;
  std::optional<Certificate> certificate;
  double feasibility_residual = 0.0;       // ||O * delta||_F
  std::optional<double> lyapunov_residual; // set by the fixed-Gramian path
};

struct SolveOptions {
  double presence_threshold = kPresenceThreshold;
  int workers = 1;
  bool with_certificate = true;
};

/// Masked-l1 minimization min ||vec(Z o (A + Delta))||_1 over O Delta = 0,
/// solved one column at a time as an epigraph LP over the nullspace
/// coordinates (the constraint is column-wise, so the subproblems are
/// independent). Ties among l1-optimal solutions are broken by removing the
/// component of v that the masked objective cannot see, which selects the
/// minimum-l2 coefficient vector in those directions.
DissimilarResult solve_l1(const NetworkSystem& sys,
                          const ObservabilityAnalysis& an,
                          const SparsityMask& z,
                          const SolveOptions& options = {});

struct L2Solution {
  Matrix vstar;  // (n - r) x n
  Matrix delta;  // Phi * V*
};

/// l2 relaxation: solves the stationarity system
/// Phi^T (A + Z o (Phi V*)) = 0 column-wise, minimum-norm when singular.
L2Solution solve_l2(const NetworkSystem& sys, const ObservabilityAnalysis& an,
                    const SparsityMask& z);

/// Certificate that the l2 solution also solves the l1 program:
/// Phi^T (Z o sgn(A + Z o (Phi V*))) = 0, with sgn treated as 0 inside the
/// presence band.
Certificate check_equivalence(const NetworkSystem& sys,
                              const ObservabilityAnalysis& an,
                              const SparsityMask& z, const Matrix& vstar,
                              double presence_threshold = kPresenceThreshold);

}  // namespace netid

#endif  // NETID_DISSIMILAR_HPP
