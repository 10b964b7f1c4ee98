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

#ifndef NETID_EXPERIMENT_HPP
#define NETID_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "netid/dissimilar.hpp"

namespace netid {

/// Random-network observability sweep: for growing sensor counts, generate
/// networks, pick sensors uniformly, solve the maximally dissimilar network
/// and record how many edges flipped.
struct ExperimentConfig {
  std::vector<GraphEnsembleConfig> ensembles;
  std::vector<Index> measured_counts;
  int trials = 1;
  std::uint64_t seed = 0;
  double presence_threshold = kPresenceThreshold;
  double rank_tol = 0.0;

  void validate() const;
};

struct ExperimentRow {
  std::string ensemble;
  Index measured = 0;
  double mean_flip_pct = 0.0;
  double std_flip_pct = 0.0;  // sample standard deviation
  int trials = 0;
  int failures = 0;
};

/// Runs all (ensemble, sensor count, trial) cells. Per-cell seeds derive
/// from the master seed and the cell counter, so results do not depend on
/// scheduling or worker count. Failed trials are excluded and counted.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          int workers = 1);

/// Flip percentages are normalized by n^2 (all directed edges, diagonal
/// included); the column names record this so alternate normalizations can
/// be recomputed.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

/// Worker-count default: NETID_WORKERS env var, else 1.
int default_workers();

}  // namespace netid

#endif  // NETID_EXPERIMENT_HPP
