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

#ifndef NETID_MODEL_HPP
#define NETID_MODEL_HPP

#include <string>
#include <vector>

#include "netid/common.hpp"

namespace netid {

/// A linear network system xdot = A x, y = C x. A(i, j) is the weight of
/// the edge from node j into node i; C selects the measured states.
struct NetworkSystem {
  Matrix A;
  Matrix C;

  Index n() const { return A.rows(); }
  Index p() const { return C.rows(); }

  /// Checks squareness, finiteness and full row rank of C.
  void validate() const;
};

/// p x n selector whose row k is the standard basis vector of the k-th
/// measured node (ascending node order).
Matrix sensor_matrix(Index n, const std::vector<Index>& measured);

/// Nodes measured by C (columns hit by a near-unit row), ascending.
std::vector<Index> measured_nodes(const Matrix& c, double tol = 1e-9);

struct SparsityMask {
  Matrix Z;  // entries in {0, 1}
};

/// Z(i,j) = 1 exactly when |A(i,j)| > presence_threshold.
SparsityMask sparsity_mask(const Matrix& a,
                           double presence_threshold = kPresenceThreshold);

enum class GraphModel { erdos_renyi, watts_strogatz };

struct GraphEnsembleConfig {
  GraphModel model = GraphModel::erdos_renyi;
  Index n = 0;
  double p_edge = 0.0;     // ER: independent presence probability per entry
  Index k_neighbors = 0;   // WS: clockwise out-neighbors per node
  double beta = 0.0;       // WS: per-edge rewiring probability
  std::uint64_t seed = 0;
  std::string label;       // optional name used in experiment outputs

  std::string name() const;
  void validate() const;
};

/// Directed Erdos-Renyi weight matrix: every entry (diagonal included) is
/// present independently with probability p_edge, weighted by a standard
/// normal draw. Deterministic for a fixed seed.
Matrix generate_er(const GraphEnsembleConfig& cfg);

struct WsStats {
  Index rewired_edges = 0;
};

/// Directed Watts-Strogatz weight matrix: ring lattice where node i feeds
/// its K clockwise successors, each edge rewired with probability beta to a
/// uniform non-self target not already used by that node. Weights are drawn
/// when the lattice edge is created and kept through rewiring.
Matrix generate_ws(const GraphEnsembleConfig& cfg, WsStats* stats = nullptr);

}  // namespace netid

#endif  // NETID_MODEL_HPP
