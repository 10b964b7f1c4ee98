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

#include "netid/dissimilar.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace netid {

FlipMetric flip_metric(const Matrix& a, const Matrix& anew,
                       double presence_threshold) {
  require(a.rows() == anew.rows() && a.cols() == anew.cols(),
          ErrorCode::invalid_input, "flip_metric: dimension mismatch");
  require_finite(a, "flip_metric a");
  require_finite(anew, "flip_metric anew");
  FlipMetric metric;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const bool before = std::abs(a(i, j)) > presence_threshold;
      const bool after = std::abs(anew(i, j)) > presence_threshold;
      if (before != after) metric.flipped.push_back({i, j, after});
    }
  }
  metric.percentage = 100.0 * static_cast<double>(metric.flipped.size()) /
                      static_cast<double>(a.rows() * a.cols());
  return metric;
}

namespace {

struct ColumnOutcome {
  Vector coeffs;      // v_j, dimension n - r
  double objective = 0.0;
};

// Masked-l1 subproblem for one column: min sum_i t_i over
// -t_i <= a_i + Phi_i v <= t_i for the masked rows i. The LP vertex is made
// canonical by removing the component of v in the nullspace of the masked
// rows of Phi, which the objective cannot see (minimum-l2 tie-break).
ColumnOutcome solve_column(const Vector& a_col, const Vector& z_col,
                           const Matrix& phi, Index column) {
  const Index n = a_col.size();
  const Index dim = phi.cols();

  std::vector<Index> masked;
  for (Index i = 0; i < n; ++i) {
    if (z_col(i) != 0.0) masked.push_back(i);
  }
  const Index m = static_cast<Index>(masked.size());

  ColumnOutcome outcome;
  outcome.coeffs = Vector::Zero(dim);
  if (m == 0 || dim == 0) {
    for (Index i : masked) outcome.objective += std::abs(a_col(i));
    return outcome;
  }

  LpProblem lp;
  lp.cost = Vector::Zero(dim + m);
  lp.cost.tail(m).setOnes();
  lp.constraints = Matrix::Zero(2 * m, dim + m);
  lp.row_lower = Vector::Constant(2 * m, -kInfinity);
  lp.row_upper = Vector::Zero(2 * m);
  for (Index k = 0; k < m; ++k) {
    const Index i = masked[static_cast<std::size_t>(k)];
    lp.constraints.row(2 * k).head(dim) = phi.row(i);
    lp.constraints(2 * k, dim + k) = -1.0;
    lp.row_upper(2 * k) = -a_col(i);  //  Phi_i v - t_k <= -a_i
    lp.constraints.row(2 * k + 1).head(dim) = -phi.row(i);
    lp.constraints(2 * k + 1, dim + k) = -1.0;
    lp.row_upper(2 * k + 1) = a_col(i);  // -Phi_i v - t_k <= a_i
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw Error(ErrorCode::solver_error,
                "column " + std::to_string(column) +
                    " subproblem ended " + to_string(sol.status));
  }

  Vector v = sol.primal.head(dim);
  Matrix phi_masked(m, dim);
  for (Index k = 0; k < m; ++k) {
    phi_masked.row(k) = phi.row(masked[static_cast<std::size_t>(k)]);
  }
  const Matrix free_dirs =
      svd_nullspace(phi_masked, unit_scale_cutoff(phi_masked)).basis;
  if (free_dirs.cols() > 0) {
    v -= free_dirs * (free_dirs.transpose() * v);
  }

  outcome.coeffs = v;
  for (Index k = 0; k < m; ++k) {
    const Index i = masked[static_cast<std::size_t>(k)];
    outcome.objective += std::abs(a_col(i) + phi.row(i).dot(v));
  }
  return outcome;
}

}  // namespace

DissimilarResult solve_l1(const NetworkSystem& sys,
                          const ObservabilityAnalysis& an,
                          const SparsityMask& z, const SolveOptions& options) {
  sys.validate();
  const Index n = sys.n();
  require(an.n() == n, ErrorCode::invalid_input,
          "solve_l1: analysis does not match system");
  require(z.Z.rows() == n && z.Z.cols() == n, ErrorCode::invalid_input,
          "solve_l1: mask does not match system");

  const Index dim = an.nullity();
  Matrix coeffs = Matrix::Zero(dim, n);
  std::vector<double> objectives(static_cast<std::size_t>(n), 0.0);

  const int workers = std::max(1, options.workers);
  if (workers == 1 || n == 1) {
    for (Index j = 0; j < n; ++j) {
      ColumnOutcome out = solve_column(sys.A.col(j), z.Z.col(j), an.Phi, j);
      coeffs.col(j) = out.coeffs;
      objectives[static_cast<std::size_t>(j)] = out.objective;
    }
  } else {
    std::atomic<Index> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
      while (true) {
        const Index j = next.fetch_add(1);
        if (j >= n) return;
        try {
          ColumnOutcome out =
              solve_column(sys.A.col(j), z.Z.col(j), an.Phi, j);
          coeffs.col(j) = out.coeffs;
          objectives[static_cast<std::size_t>(j)] = out.objective;
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& thread : pool) thread.join();
    if (failure) std::rethrow_exception(failure);
  }

  DissimilarResult result;
  result.delta = dim > 0 ? Matrix(an.Phi * coeffs) : Matrix::Zero(n, n);
  result.network = sys.A + result.delta;
  result.objective = 0.0;
  for (double obj : objectives) result.objective += obj;
  result.flips = flip_metric(sys.A, result.network, options.presence_threshold);
  result.feasibility_residual = (an.O * result.delta).norm();
  if (options.with_certificate) {
    const L2Solution l2 = solve_l2(sys, an, z);
    result.certificate = check_equivalence(sys, an, z, l2.vstar,
                                           options.presence_threshold);
  }
  return result;
}

L2Solution solve_l2(const NetworkSystem& sys, const ObservabilityAnalysis& an,
                    const SparsityMask& z) {
  sys.validate();
  const Index n = sys.n();
  require(an.n() == n && z.Z.rows() == n && z.Z.cols() == n,
          ErrorCode::invalid_input, "solve_l2: dimension mismatch");

  const Index dim = an.nullity();
  L2Solution solution;
  solution.vstar = Matrix::Zero(dim, n);
  if (dim == 0) {
    solution.delta = Matrix::Zero(n, n);
    return solution;
  }
  // Column-wise stationarity Phi^T (a_j + diag(z_j) Phi v_j) = 0, solved as
  // the minimum-norm least-squares fit of the masked residual. The cutoff
  // sits at Phi's unit scale so roundoff-level rows of Phi (essential rows)
  // contribute nothing instead of exploding v.
  for (Index j = 0; j < n; ++j) {
    const Matrix phi_masked = z.Z.col(j).asDiagonal() * an.Phi;
    solution.vstar.col(j) = pinv_solve(phi_masked, Vector(-sys.A.col(j)),
                                       unit_scale_cutoff(phi_masked));
  }
  solution.delta = an.Phi * solution.vstar;
  return solution;
}

Certificate check_equivalence(const NetworkSystem& sys,
                              const ObservabilityAnalysis& an,
                              const SparsityMask& z, const Matrix& vstar,
                              double presence_threshold) {
  const Index n = sys.n();
  require(vstar.rows() == an.nullity() && vstar.cols() == n,
          ErrorCode::invalid_input, "check_equivalence: V* dimension mismatch");

  Certificate cert;
  if (an.nullity() == 0) {
    cert.l2_equals_l1 = true;
    cert.residual = 0.0;
    return cert;
  }
  const Matrix masked_network =
      sys.A + z.Z.cwiseProduct(Matrix(an.Phi * vstar));
  Matrix sign(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double value = masked_network(i, j);
      sign(i, j) = std::abs(value) <= presence_threshold ? 0.0
                   : value > 0.0                         ? 1.0
                                                         : -1.0;
    }
  }
  cert.residual = (an.Phi.transpose() * z.Z.cwiseProduct(sign)).norm();
  cert.l2_equals_l1 = cert.residual <= 1e-8;
  return cert;
}

}  // namespace netid
