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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netid/epsclose.hpp"
#include "netid/exporters.hpp"
#include "netid/experiment.hpp"

namespace py = pybind11;
using namespace netid;

namespace {

NetworkSystem make_system(const Matrix& a, const Matrix& c) {
  NetworkSystem sys{a, c};
  sys.validate();
  return sys;
}

GraphEnsembleConfig ensemble_config(const std::string& model, Index n,
                                    double p_edge, Index k, double beta,
                                    std::uint64_t seed) {
  GraphEnsembleConfig cfg;
  if (model == "ER" || model == "er") {
    cfg.model = GraphModel::erdos_renyi;
  } else if (model == "WS" || model == "ws") {
    cfg.model = GraphModel::watts_strogatz;
  } else {
    throw Error(ErrorCode::invalid_input, "model must be ER or WS");
  }
  cfg.n = n;
  cfg.p_edge = p_edge;
  cfg.k_neighbors = k;
  cfg.beta = beta;
  cfg.seed = seed;
  return cfg;
}

py::dict analysis_to_dict(const ObservabilityAnalysis& an) {
  py::dict d;
  d["O"] = an.O;
  d["rank"] = an.rank;
  d["Phi"] = an.Phi;
  d["rank_tol"] = an.rank_tol;
  return d;
}

py::dict dissimilar_to_dict(const DissimilarResult& result) {
  py::dict d;
  d["Delta"] = result.delta;
  d["network"] = result.network;
  d["objective"] = result.objective;
  py::list flips;
  for (const auto& edge : result.flips.flipped) {
    flips.append(py::make_tuple(edge.i, edge.j,
                                edge.added ? "added" : "removed"));
  }
  d["flipped_edges"] = flips;
  d["flip_percentage"] = result.flips.percentage;
  if (result.certificate) {
    py::dict cert;
    cert["l2_equals_l1"] = result.certificate->l2_equals_l1;
    cert["certificate_residual"] = result.certificate->residual;
    d["certificate"] = cert;
  }
  d["feasibility_residual"] = result.feasibility_residual;
  if (result.lyapunov_residual) {
    d["lyapunov_residual"] = *result.lyapunov_residual;
  }
  return d;
}

py::dict gramian_to_dict(const GramianDecomposition& gd) {
  py::dict d;
  d["Wbar"] = gd.wbar;
  d["V"] = gd.v;
  d["Lambda"] = gd.lambda;
  d["nullity"] = gd.nullity;
  d["lambda_max"] = gd.lambda_max();
  d["A_obs"] = gd.a_obs;
  d["A_cross"] = gd.a_cross;
  d["A_unobs"] = gd.a_unobs;
  d["C_obs"] = gd.c_obs;
  d["lyapunov_residual"] = gd.lyapunov_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_netid, m) {
  m.doc() = "Identifiability analysis of partially measured linear networks";

  py::register_exception<Error>(m, "NetidError");

  // numerics
  m.def(
      "svd_nullspace",
      [](const Matrix& a, double rank_tol) {
        const NullspaceResult ns = svd_nullspace(a, rank_tol);
        return py::make_tuple(ns.rank, ns.basis);
      },
      py::arg("m"), py::arg("rank_tol") = 0.0,
      "Numerical rank and orthonormal nullspace basis");
  m.def("solve_lyapunov", &solve_lyapunov, py::arg("abar"), py::arg("cbar"),
        "Solve W A + A^T W = -C^T C (minimum-norm on consistent singular "
        "systems)");
  m.def("expm", &expm, py::arg("m"));
  m.def("expm_apply", &expm_apply, py::arg("m"), py::arg("x"), py::arg("t"));

  // model
  m.def(
      "sensor_matrix",
      [](Index n, const std::vector<Index>& measured) {
        return sensor_matrix(n, measured);
      },
      py::arg("n"), py::arg("measured"));
  m.def(
      "sparsity_mask",
      [](const Matrix& a, double threshold) {
        return sparsity_mask(a, threshold).Z;
      },
      py::arg("a"), py::arg("presence_threshold") = kPresenceThreshold);
  m.def(
      "generate_er",
      [](Index n, double p_edge, std::uint64_t seed) {
        return generate_er(ensemble_config("ER", n, p_edge, 0, 0.0, seed));
      },
      py::arg("n"), py::arg("p_edge"), py::arg("seed"));
  m.def(
      "generate_ws",
      [](Index n, Index k, double beta, std::uint64_t seed) {
        return generate_ws(ensemble_config("WS", n, 0.0, k, beta, seed));
      },
      py::arg("n"), py::arg("k"), py::arg("beta"), py::arg("seed"));

  // observability
  m.def(
      "analyze",
      [](const Matrix& a, const Matrix& c, double rank_tol) {
        return analysis_to_dict(analyze(make_system(a, c), rank_tol));
      },
      py::arg("a"), py::arg("c"), py::arg("rank_tol") = 0.0);
  m.def(
      "classify_edges",
      [](const Matrix& a, const Matrix& c, double rank_tol, double tol) {
        const EdgeClassification classes =
            classify_edges(analyze(make_system(a, c), rank_tol), tol);
        py::list labels;
        for (const EdgeClass label : classes.row_labels) {
          labels.append(std::string(to_string(label)));
        }
        return labels;
      },
      py::arg("a"), py::arg("c"), py::arg("rank_tol") = 0.0,
      py::arg("tol") = 1e-8);
  m.def(
      "verify_indistinguishable",
      [](const Matrix& a, const Matrix& c, const Matrix& delta, int trials,
         double horizon) {
        const IndistinguishabilityReport report = verify_indistinguishable(
            make_system(a, c), delta, trials, horizon);
        py::dict d;
        d["pass"] = report.pass;
        d["algebraic_residual"] = report.algebraic_residual;
        d["trajectory_residual"] = report.trajectory_residual;
        return d;
      },
      py::arg("a"), py::arg("c"), py::arg("delta"), py::arg("trials") = 8,
      py::arg("horizon") = 5.0);
  m.def(
      "column_variants",
      [](const Matrix& a, const Matrix& c, Index column, double threshold,
         Index max_dim) {
        const NetworkSystem sys = make_system(a, c);
        const ColumnVariantSet variants = enumerate_column_variants(
            analyze(sys), a, column, threshold, max_dim);
        py::list supports;
        py::list witnesses;
        for (const auto& variant : variants.variants) {
          py::list bits;
          for (Index i = 0; i < a.rows(); ++i) {
            bits.append(static_cast<int>((variant.support >> i) & 1ULL));
          }
          supports.append(bits);
          witnesses.append(variant.witness);
        }
        py::dict d;
        d["column"] = column;
        d["count"] = variants.count();
        d["supports"] = supports;
        d["witnesses"] = witnesses;
        return d;
      },
      py::arg("a"), py::arg("c"), py::arg("column"),
      py::arg("presence_threshold") = kPresenceThreshold,
      py::arg("max_dim") = 16);
  m.def(
      "count_structural_networks",
      [](const Matrix& a, const Matrix& c, double threshold, Index max_dim) {
        const NetworkSystem sys = make_system(a, c);
        return count_structural_networks(analyze(sys), a, threshold, max_dim);
      },
      py::arg("a"), py::arg("c"),
      py::arg("presence_threshold") = kPresenceThreshold,
      py::arg("max_dim") = 16);

  // dissimilar
  m.def(
      "solve_dissimilar",
      [](const Matrix& a, const Matrix& c, double threshold, int workers) {
        const NetworkSystem sys = make_system(a, c);
        const ObservabilityAnalysis an = analyze(sys);
        SolveOptions options;
        options.presence_threshold = threshold;
        options.workers = workers;
        return dissimilar_to_dict(
            solve_l1(sys, an, sparsity_mask(a, threshold), options));
      },
      py::arg("a"), py::arg("c"),
      py::arg("presence_threshold") = kPresenceThreshold,
      py::arg("workers") = 1,
      "Masked-l1 maximally dissimilar network with certificate and flips");
  m.def(
      "solve_l2",
      [](const Matrix& a, const Matrix& c, double threshold) {
        const NetworkSystem sys = make_system(a, c);
        const L2Solution l2 =
            solve_l2(sys, analyze(sys), sparsity_mask(a, threshold));
        return py::make_tuple(l2.vstar, l2.delta);
      },
      py::arg("a"), py::arg("c"),
      py::arg("presence_threshold") = kPresenceThreshold);
  m.def(
      "flip_metric",
      [](const Matrix& a, const Matrix& anew, double threshold) {
        const FlipMetric flips = flip_metric(a, anew, threshold);
        py::list edges;
        for (const auto& edge : flips.flipped) {
          edges.append(py::make_tuple(edge.i, edge.j,
                                      edge.added ? "added" : "removed"));
        }
        return py::make_tuple(edges, flips.percentage);
      },
      py::arg("a"), py::arg("anew"),
      py::arg("presence_threshold") = kPresenceThreshold);

  // epsclose
  m.def(
      "gramian",
      [](const Matrix& a, const Matrix& c, const Matrix& delta,
         double nullity_tol) {
        return gramian_to_dict(
            gramian(augment(make_system(a, c), delta), nullity_tol));
      },
      py::arg("a"), py::arg("c"), py::arg("delta"),
      py::arg("nullity_tol") = 1e-9);
  m.def(
      "error_norm",
      [](const Matrix& a, const Matrix& c, const Matrix& delta,
         const Vector& x0) {
        return error_norm(gramian(augment(make_system(a, c), delta)), x0);
      },
      py::arg("a"), py::arg("c"), py::arg("delta"), py::arg("x0"));
  m.def(
      "check_eps_bound",
      [](const Matrix& a, const Matrix& c, const Matrix& delta,
         const Vector& x0, double eps) {
        const EpsBound bound =
            check_eps_bound(gramian(augment(make_system(a, c), delta)), x0, eps);
        py::dict d;
        d["certified"] = bound.certified;
        d["margin"] = bound.margin;
        d["lambda_max"] = bound.lambda_max;
        return d;
      },
      py::arg("a"), py::arg("c"), py::arg("delta"), py::arg("x0"),
      py::arg("eps"));
  m.def(
      "solve_fixed_gramian",
      [](const Matrix& a, const Matrix& c, const Matrix& wbar,
         double threshold) {
        const NetworkSystem sys = make_system(a, c);
        return dissimilar_to_dict(solve_fixed_gramian_l1(
            sys, wbar, sparsity_mask(a, threshold), threshold));
      },
      py::arg("a"), py::arg("c"), py::arg("wbar"),
      py::arg("presence_threshold") = kPresenceThreshold,
      "Masked-l1 minimization over the affine set of a fixed feasible "
      "Gramian");
  m.def(
      "simulate_pair",
      [](const Matrix& a, const Matrix& c, const Matrix& delta,
         const Vector& x0, double horizon, double dt) {
        const TrajectoryTable table =
            simulate_pair(make_system(a, c), delta, x0, horizon, dt);
        py::dict d;
        d["t"] = table.t;
        d["y"] = table.y;
        d["ytilde"] = table.ytilde;
        d["e"] = table.e;
        d["cumulative_error_norm"] = table.cumulative_error_norm;
        return d;
      },
      py::arg("a"), py::arg("c"), py::arg("delta"), py::arg("x0"),
      py::arg("horizon"), py::arg("dt"));

  // experiment
  m.def(
      "run_experiment",
      [](const std::string& model, Index n, double p_edge, Index k,
         double beta, const std::vector<Index>& measured_counts, int trials,
         std::uint64_t seed, int workers) {
        ExperimentConfig cfg;
        cfg.ensembles = {ensemble_config(model, n, p_edge, k, beta, 0)};
        cfg.measured_counts = measured_counts;
        cfg.trials = trials;
        cfg.seed = seed;
        py::list rows;
        for (const auto& row : run_experiment(cfg, workers)) {
          py::dict d;
          d["ensemble"] = row.ensemble;
          d["measured"] = row.measured;
          d["mean_flip_pct"] = row.mean_flip_pct;
          d["std_flip_pct"] = row.std_flip_pct;
          d["trials"] = row.trials;
          d["failures"] = row.failures;
          rows.append(d);
        }
        return rows;
      },
      py::arg("model"), py::arg("n"), py::arg("p_edge") = 0.0,
      py::arg("k") = 0, py::arg("beta") = 0.0, py::arg("measured_counts"),
      py::arg("trials") = 1, py::arg("seed") = 0, py::arg("workers") = 1);

  m.attr("PRESENCE_THRESHOLD") = kPresenceThreshold;
  m.attr("__version__") = "0.1.0";
}
