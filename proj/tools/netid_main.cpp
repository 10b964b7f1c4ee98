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

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "netid/exporters.hpp"
#include "netid/io.hpp"

namespace {

using namespace netid;

std::filesystem::path ensure_output_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  require(!ec, ErrorCode::io_error, "cannot create output dir " + dir);
  return path;
}

Vector parse_vector(const std::string& text, Index expected,
                    const std::string& what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string field =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse_error,
                  what + ": cannot parse \"" + field + "\"");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  require(static_cast<Index>(values.size()) == expected,
          ErrorCode::invalid_input,
          what + " needs exactly " + std::to_string(expected) + " entries");
  return Eigen::Map<Vector>(values.data(), expected);
}

struct CommonFlags {
  std::string input;
  std::string output_dir;
  double threshold = kPresenceThreshold;
  double tol = 0.0;  // rank tolerance, 0 = default
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool input_required = true) {
  auto* opt = cmd->add_option("--input,-i", flags.input, "input file");
  if (input_required) opt->required();
  cmd->add_option("--output-dir,-o", flags.output_dir,
                  "directory for generated files");
  cmd->add_option("--threshold", flags.threshold,
                  "edge presence threshold (default 1e-5)");
  cmd->add_option("--tol", flags.tol,
                  "numerical rank tolerance (0 = automatic)");
}

int cmd_analyze(const CommonFlags& flags, Index max_enum) {
  const NetworkSystem sys = load_system(flags.input);
  const ObservabilityAnalysis an = analyze(sys, flags.tol);
  Json report;
  report["n"] = sys.n();
  report["p"] = sys.p();
  report["rank"] = an.rank;
  report["nullity"] = an.nullity();
  report["rank_tol"] = an.rank_tol;
  report["Phi"] = matrix_to_json(an.Phi);
  report["rows"] = classification_to_json(classify_edges(an));
  if (an.nullity() == 0) {
    report["note"] = "fully observable, ambiguity set = {A}";
  }
  if (sys.n() <= max_enum) {
    Json columns = Json::array();
    double count = 1.0;
    for (Index j = 0; j < sys.n(); ++j) {
      const ColumnVariantSet variants =
          enumerate_column_variants(an, sys.A, j, flags.threshold, max_enum);
      count *= static_cast<double>(variants.count());
      columns.push_back(variants_to_json(variants));
    }
    report["column_variants"] = std::move(columns);
    report["structural_network_count"] = count;
  } else {
    report["column_variants_skipped"] =
        "n exceeds the enumeration guard (" + std::to_string(max_enum) +
        "); raise --max-enum to force";
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_dissimilar(const CommonFlags& flags, const std::string& format,
                   int workers) {
  const NetworkSystem sys = load_system(flags.input);
  const ObservabilityAnalysis an = analyze(sys, flags.tol);
  const SparsityMask z = sparsity_mask(sys.A, flags.threshold);
  SolveOptions options;
  options.presence_threshold = flags.threshold;
  options.workers = workers;
  const DissimilarResult result = solve_l1(sys, an, z, options);
  const Json payload = dissimilar_result_to_json(result);
  if (!flags.output_dir.empty()) {
    const auto dir = ensure_output_dir(flags.output_dir);
    write_text_file((dir / "dissimilar.json").string(),
                    payload.dump(2) + "\n");
    if (format == "dot") {
      const auto measured = measured_nodes(sys.C);
      write_text_file((dir / "original.dot").string(),
                      to_dot(sys.A, measured, "original", flags.threshold));
      write_text_file(
          (dir / "dissimilar.dot").string(),
          to_dot(result.network, measured, "dissimilar", flags.threshold));
    }
  }
  std::cout << payload.dump(2) << "\n";
  return 0;
}

int cmd_epsclose(const CommonFlags& flags, const std::string& delta_file,
                 bool nullspace_witness, std::uint64_t seed, double scale,
                 const std::string& x0_text, std::optional<double> eps,
                 double horizon, double dt) {
  const NetworkSystem sys = load_system(flags.input);
  Matrix delta;
  if (!delta_file.empty()) {
    delta = load_matrix_json(delta_file);
    require(delta.rows() == sys.n() && delta.cols() == sys.n(),
            ErrorCode::invalid_input, "delta must be n x n");
  } else if (nullspace_witness) {
    const ObservabilityAnalysis an = analyze(sys, flags.tol);
    Rng rng(seed);
    Matrix coeffs(an.nullity(), sys.n());
    for (Index i = 0; i < coeffs.size(); ++i) {
      coeffs(i % coeffs.rows(), i / coeffs.rows()) = scale * rng.normal();
    }
    delta = an.nullity() > 0 ? Matrix(an.Phi * coeffs)
                             : Matrix::Zero(sys.n(), sys.n());
  } else {
    delta = Matrix::Zero(sys.n(), sys.n());
  }

  const GramianDecomposition gd = gramian(augment(sys, delta));
  const double sqrt_lambda_max = std::sqrt(gd.lambda_max());
  const ErrorNormBracket bracket = error_norm_bracket(gd);

  Vector x0;
  if (!x0_text.empty()) {
    x0 = parse_vector(x0_text, sys.n(), "--x0");
  } else {
    // Unit direction attaining the lower end of the error bracket.
    const Index n = sys.n();
    const Matrix m = gd.wbar.topLeftCorner(n, n) +
                     gd.wbar.topRightCorner(n, n) +
                     gd.wbar.bottomLeftCorner(n, n) +
                     gd.wbar.bottomRightCorner(n, n);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
    x0 = es.eigenvectors().col(0);
  }

  Json report;
  report["lambda_max"] = gd.lambda_max();
  report["sqrt_lambda_max"] = sqrt_lambda_max;
  report["nullity"] = gd.nullity;
  report["lyapunov_residual"] = gd.lyapunov_residual;
  report["x0"] = std::vector<double>(x0.data(), x0.data() + x0.size());
  report["error_norm"] = error_norm(gd, x0);
  report["error_norm_bracket"] = {{"lo", bracket.lo}, {"hi", bracket.hi}};
  report["inequality"] = {
      {"error_norm_bracket_hi", bracket.hi},
      {"sqrt_lambda_max_times_sqrt2", sqrt_lambda_max * std::sqrt(2.0)},
      {"holds", bracket.hi < sqrt_lambda_max * std::sqrt(2.0) +
                    1e-12}};
  if (eps.has_value()) {
    const EpsBound bound = check_eps_bound(gd, x0, *eps);
    report["eps_certificate"] = {{"eps", *eps},
                                 {"certified", bound.certified},
                                 {"margin", bound.margin}};
  }

  const TrajectoryTable table = simulate_pair(sys, delta, x0, horizon, dt);
  report["cumulative_error_norm"] = table.cumulative_error_norm;
  if (!flags.output_dir.empty()) {
    const auto dir = ensure_output_dir(flags.output_dir);
    write_text_file((dir / "trajectory.csv").string(), trajectory_csv(table));
    write_text_file((dir / "trajectory.svg").string(), trajectory_svg(table));
    write_text_file((dir / "epsclose.json").string(), report.dump(2) + "\n");
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_experiment(const CommonFlags& flags, int workers) {
  const ExperimentConfig cfg = load_experiment_config(flags.input);
  const auto rows = run_experiment(cfg, workers);
  const std::string csv = experiment_csv(rows);
  if (!flags.output_dir.empty()) {
    const auto dir = ensure_output_dir(flags.output_dir);
    write_text_file((dir / "experiment.csv").string(), csv);
    for (const auto& ensemble : cfg.ensembles) {
      write_text_file((dir / ("experiment-" + ensemble.name() + ".svg")).string(),
                      experiment_svg(rows, ensemble.name()));
    }
  }
  std::cout << csv;
  return 0;
}

int cmd_simulate(const CommonFlags& flags, const std::string& delta_file,
                 const std::string& x0_text, double horizon, double dt) {
  const NetworkSystem sys = load_system(flags.input);
  Matrix delta = Matrix::Zero(sys.n(), sys.n());
  if (!delta_file.empty()) {
    delta = load_matrix_json(delta_file);
    require(delta.rows() == sys.n() && delta.cols() == sys.n(),
            ErrorCode::invalid_input, "delta must be n x n");
  }
  Vector x0 = Vector::Unit(sys.n(), 0);
  if (!x0_text.empty()) x0 = parse_vector(x0_text, sys.n(), "--x0");
  const TrajectoryTable table = simulate_pair(sys, delta, x0, horizon, dt);
  const std::string csv = trajectory_csv(table);
  if (!flags.output_dir.empty()) {
    const auto dir = ensure_output_dir(flags.output_dir);
    write_text_file((dir / "trajectory.csv").string(), csv);
  }
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "netid - identifiability analysis of partially measured linear "
      "networks"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  Index max_enum = 16;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "rank, nullspace, row classes, variants");
  add_common(analyze_cmd, analyze_flags);
  analyze_cmd->add_option("--max-enum", max_enum,
                          "variant enumeration guard (default 16)");

  CommonFlags dissimilar_flags;
  std::string dissimilar_format = "json";
  int dissimilar_workers = default_workers();
  auto* dissimilar_cmd = app.add_subcommand(
      "dissimilar", "maximally dissimilar consistent network");
  add_common(dissimilar_cmd, dissimilar_flags);
  dissimilar_cmd->add_option("--format", dissimilar_format,
                             "json or dot (dot also writes graphs)")
      ->check(CLI::IsMember({"json", "dot"}));
  dissimilar_cmd->add_option("--workers", dissimilar_workers,
                             "parallel column subproblems");

  CommonFlags eps_flags;
  std::string eps_delta;
  bool eps_witness = false;
  std::uint64_t eps_seed = 1;
  double eps_scale = 0.5;
  std::string eps_x0;
  double eps_value = 0.0;
  bool eps_given = false;
  double eps_horizon = 10.0;
  double eps_dt = 0.01;
  auto* eps_cmd = app.add_subcommand(
      "epsclose", "augmented Gramian, eps certificate, trajectories");
  add_common(eps_cmd, eps_flags);
  eps_cmd->add_option("--delta", eps_delta, "perturbation matrix JSON file");
  eps_cmd->add_flag("--nullspace-witness", eps_witness,
                    "generate Delta from the observability nullspace");
  eps_cmd->add_option("--seed", eps_seed, "witness seed");
  eps_cmd->add_option("--delta-scale", eps_scale, "witness scale");
  eps_cmd->add_option("--x0", eps_x0, "initial condition, comma separated");
  eps_cmd->add_option("--eps", eps_value, "epsilon for the spectral certificate")
      ->each([&](const std::string&) { eps_given = true; });
  eps_cmd->add_option("--horizon", eps_horizon, "simulation horizon");
  eps_cmd->add_option("--dt", eps_dt, "simulation step");

  CommonFlags experiment_flags;
  int experiment_workers = default_workers();
  auto* experiment_cmd = app.add_subcommand(
      "experiment", "random-network flip-percentage sweep");
  add_common(experiment_cmd, experiment_flags);
  experiment_cmd->add_option("--workers", experiment_workers,
                             "parallel trials (default NETID_WORKERS)");

  CommonFlags simulate_flags;
  std::string simulate_delta;
  std::string simulate_x0;
  double simulate_horizon = 10.0;
  double simulate_dt = 0.01;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "output trajectories as CSV");
  add_common(simulate_cmd, simulate_flags);
  simulate_cmd->add_option("--delta", simulate_delta,
                           "perturbation matrix JSON file");
  simulate_cmd->add_option("--x0", simulate_x0,
                           "initial condition, comma separated");
  simulate_cmd->add_option("--horizon", simulate_horizon, "horizon");
  simulate_cmd->add_option("--dt", simulate_dt, "step");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(analyze_flags, max_enum);
    if (dissimilar_cmd->parsed()) {
      return cmd_dissimilar(dissimilar_flags, dissimilar_format,
                            dissimilar_workers);
    }
    if (eps_cmd->parsed()) {
      return cmd_epsclose(eps_flags, eps_delta, eps_witness, eps_seed,
                          eps_scale, eps_x0,
                          eps_given ? std::optional<double>(eps_value)
                                    : std::nullopt,
                          eps_horizon, eps_dt);
    }
    if (experiment_cmd->parsed()) {
      return cmd_experiment(experiment_flags, experiment_workers);
    }
    if (simulate_cmd->parsed()) {
      return cmd_simulate(simulate_flags, simulate_delta, simulate_x0,
                          simulate_horizon, simulate_dt);
    }
  } catch (const netid::Error& e) {
    std::cerr << "netid-error: " << to_string(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "netid-error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
