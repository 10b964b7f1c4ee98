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

#include "netid/model.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <set>

#include "netid/numerics.hpp"

namespace netid {

void NetworkSystem::validate() const {
  require(A.rows() > 0 && A.rows() == A.cols(), ErrorCode::invalid_input,
          "NetworkSystem: A must be square and non-empty");
  require(C.rows() > 0 && C.cols() == A.rows(), ErrorCode::invalid_input,
          "NetworkSystem: C must be p x n with p >= 1");
  require(C.rows() <= A.rows(), ErrorCode::invalid_input,
          "NetworkSystem: more sensors than nodes");
  require_finite(A, "NetworkSystem A");
  require_finite(C, "NetworkSystem C");
  Eigen::BDCSVD<Matrix> svd(C);
  const Vector& sigma = svd.singularValues();
  const double tol = static_cast<double>(std::max(C.rows(), C.cols())) *
                     std::numeric_limits<double>::epsilon() * sigma(0);
  require(sigma(sigma.size() - 1) > tol, ErrorCode::invalid_input,
          "NetworkSystem: C must have full row rank");
}

Matrix sensor_matrix(Index n, const std::vector<Index>& measured) {
  require(n > 0, ErrorCode::invalid_input, "sensor_matrix: n must be positive");
  require(!measured.empty(), ErrorCode::invalid_input,
          "sensor_matrix: at least one measured node required");
  std::set<Index> unique;
  for (Index node : measured) {
    require(node >= 0 && node < n, ErrorCode::invalid_input,
            "sensor_matrix: node index out of range");
    require(unique.insert(node).second, ErrorCode::invalid_input,
            "sensor_matrix: duplicate node index");
  }
  Matrix c = Matrix::Zero(static_cast<Index>(unique.size()), n);
  Index row = 0;
  for (Index node : unique) c(row++, node) = 1.0;
  return c;
}

std::vector<Index> measured_nodes(const Matrix& c, double tol) {
  std::vector<Index> nodes;
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) {
      if (std::abs(c(i, j) - 1.0) <= tol) {
        nodes.push_back(j);
        break;
      }
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

SparsityMask sparsity_mask(const Matrix& a, double presence_threshold) {
  require(presence_threshold >= 0.0, ErrorCode::invalid_input,
          "sparsity_mask: threshold must be >= 0");
  require_finite(a, "sparsity_mask input");
  SparsityMask mask;
  mask.Z = (a.cwiseAbs().array() > presence_threshold).cast<double>();
  return mask;
}

std::string GraphEnsembleConfig::name() const {
  if (!label.empty()) return label;
  return model == GraphModel::erdos_renyi ? "erdos-renyi" : "watts-strogatz";
}

void GraphEnsembleConfig::validate() const {
  require(n > 0, ErrorCode::invalid_input, "ensemble: n must be positive");
  if (model == GraphModel::erdos_renyi) {
    require(p_edge >= 0.0 && p_edge <= 1.0, ErrorCode::invalid_input,
            "ensemble: p_edge must lie in [0, 1]");
  } else {
    require(k_neighbors >= 1 && k_neighbors < n, ErrorCode::invalid_input,
            "ensemble: K must satisfy 1 <= K < n");
    require(beta >= 0.0 && beta <= 1.0, ErrorCode::invalid_input,
            "ensemble: beta must lie in [0, 1]");
  }
}

Matrix generate_er(const GraphEnsembleConfig& cfg) {
  cfg.validate();
  require(cfg.model == GraphModel::erdos_renyi, ErrorCode::invalid_input,
          "generate_er: config is not an ER ensemble");
  Rng rng(cfg.seed);
  Matrix a = Matrix::Zero(cfg.n, cfg.n);
  for (Index i = 0; i < cfg.n; ++i) {
    for (Index j = 0; j < cfg.n; ++j) {
      if (rng.uniform() < cfg.p_edge) a(i, j) = rng.normal();
    }
  }
  return a;
}

Matrix generate_ws(const GraphEnsembleConfig& cfg, WsStats* stats) {
  cfg.validate();
  require(cfg.model == GraphModel::watts_strogatz, ErrorCode::invalid_input,
          "generate_ws: config is not a WS ensemble");
  Rng rng(cfg.seed);
  const Index n = cfg.n;
  const Index k = cfg.k_neighbors;
  Index rewired = 0;
  Matrix a = Matrix::Zero(n, n);

  std::vector<Index> targets(static_cast<std::size_t>(k));
  std::vector<double> weights(static_cast<std::size_t>(k));
  for (Index i = 0; i < n; ++i) {
    for (Index s = 0; s < k; ++s) {
      targets[s] = (i + 1 + s) % n;
      weights[s] = rng.normal();
    }
    for (Index s = 0; s < k; ++s) {
      if (rng.uniform() < cfg.beta) {
        Index candidate = 0;
        bool taken = true;
        while (taken) {
          candidate = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
          taken = candidate == i;
          for (Index s2 = 0; s2 < k && !taken; ++s2) {
            taken = s2 != s && targets[s2] == candidate;
          }
        }
        targets[s] = candidate;
        ++rewired;
      }
    }
    // Edge i -> t sits at A(t, i): column i holds the out-edges of node i.
    for (Index s = 0; s < k; ++s) a(targets[s], i) = weights[s];
  }
  if (stats != nullptr) stats->rewired_edges = rewired;
  return a;
}

}  // namespace netid
