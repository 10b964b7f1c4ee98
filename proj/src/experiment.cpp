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

#include "netid/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "netid/io.hpp"

namespace netid {

void ExperimentConfig::validate() const {
  require(!ensembles.empty(), ErrorCode::invalid_input,
          "experiment: at least one ensemble required");
  for (const auto& ensemble : ensembles) ensemble.validate();
  require(!measured_counts.empty(), ErrorCode::invalid_input,
          "experiment: at least one sensor count required");
  for (const auto& ensemble : ensembles) {
    for (Index count : measured_counts) {
      require(count >= 1 && count <= ensemble.n, ErrorCode::invalid_input,
              "experiment: sensor counts must lie in [1, n]");
    }
  }
  require(trials >= 1, ErrorCode::invalid_input,
          "experiment: trials must be >= 1");
  require(presence_threshold >= 0.0 && rank_tol >= 0.0,
          ErrorCode::invalid_input, "experiment: thresholds must be >= 0");
}

namespace {

struct Cell {
  std::size_t ensemble = 0;
  std::size_t count_idx = 0;
  int trial = 0;
  std::uint64_t id = 0;
};

double run_cell(const ExperimentConfig& cfg, const Cell& cell) {
  const GraphEnsembleConfig& base = cfg.ensembles[cell.ensemble];
  GraphEnsembleConfig ensemble = base;
  ensemble.seed = derive_seed(cfg.seed, cell.id);

  const Matrix a = ensemble.model == GraphModel::erdos_renyi
                       ? generate_er(ensemble)
                       : generate_ws(ensemble);

  // Sensors: partial Fisher-Yates over [0, n) with the trial's own stream.
  Rng rng(derive_seed(ensemble.seed, 0x5e25ULL));
  const Index n = ensemble.n;
  const Index count = cfg.measured_counts[cell.count_idx];
  std::vector<Index> nodes(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < count; ++i) {
    const Index j = i + static_cast<Index>(
                            rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(nodes[static_cast<std::size_t>(i)],
              nodes[static_cast<std::size_t>(j)]);
  }
  std::vector<Index> measured(nodes.begin(), nodes.begin() + count);

  NetworkSystem sys{a, sensor_matrix(n, measured)};
  const ObservabilityAnalysis an = analyze(sys, cfg.rank_tol);
  const SparsityMask z = sparsity_mask(a, cfg.presence_threshold);
  SolveOptions options;
  options.presence_threshold = cfg.presence_threshold;
  options.with_certificate = false;
  const DissimilarResult result = solve_l1(sys, an, z, options);
  return result.flips.percentage;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& cfg,
                                          int workers) {
  cfg.validate();
  const std::size_t num_counts = cfg.measured_counts.size();
  const std::size_t cells_total =
      cfg.ensembles.size() * num_counts * static_cast<std::size_t>(cfg.trials);

  std::vector<Cell> cells;
  cells.reserve(cells_total);
  std::uint64_t id = 0;
  for (std::size_t e = 0; e < cfg.ensembles.size(); ++e) {
    for (std::size_t c = 0; c < num_counts; ++c) {
      for (int t = 0; t < cfg.trials; ++t) {
        cells.push_back({e, c, t, id++});
      }
    }
  }

  std::vector<double> flip_pct(cells_total, 0.0);
  std::vector<char> ok(cells_total, 0);
  std::mutex log_mutex;

  auto process = [&](std::size_t idx) {
    try {
      flip_pct[idx] = run_cell(cfg, cells[idx]);
      ok[idx] = 1;
    } catch (const std::exception& ex) {
      std::scoped_lock lock(log_mutex);
      std::cerr << "trial failed (ensemble "
                << cfg.ensembles[cells[idx].ensemble].name() << ", measured "
                << cfg.measured_counts[cells[idx].count_idx] << ", trial "
                << cells[idx].trial << "): " << ex.what() << "\n";
    }
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < cells_total; ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells_total) return;
        process(i);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
  }

  // Aggregation in (ensemble, count) order, independent of scheduling.
  std::vector<ExperimentRow> rows;
  std::size_t cell = 0;
  for (std::size_t e = 0; e < cfg.ensembles.size(); ++e) {
    for (std::size_t c = 0; c < num_counts; ++c) {
      double sum = 0.0;
      double sum_sq = 0.0;
      int used = 0;
      int failures = 0;
      for (int t = 0; t < cfg.trials; ++t, ++cell) {
        if (ok[cell]) {
          sum += flip_pct[cell];
          sum_sq += flip_pct[cell] * flip_pct[cell];
          ++used;
        } else {
          ++failures;
        }
      }
      ExperimentRow row;
      row.ensemble = cfg.ensembles[e].name();
      row.measured = cfg.measured_counts[c];
      row.trials = used;
      row.failures = failures;
      if (used > 0) {
        row.mean_flip_pct = sum / used;
        if (used > 1) {
          const double var =
              std::max(0.0, (sum_sq - sum * sum / used) / (used - 1));
          row.std_flip_pct = std::sqrt(var);
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "ensemble,measured,trials,failures,mean_flip_pct_of_n2,"
         "std_flip_pct_of_n2\n";
  for (const auto& row : rows) {
    out << row.ensemble << ',' << row.measured << ',' << row.trials << ','
        << row.failures << ',' << format_double(row.mean_flip_pct) << ','
        << format_double(row.std_flip_pct) << '\n';
  }
  return out.str();
}

int default_workers() {
  const char* env = std::getenv("NETID_WORKERS");
  if (env == nullptr) return 1;
  const int value = std::atoi(env);
  return value >= 1 ? value : 1;
}

}  // namespace netid
