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

#include "netid/epsclose.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace netid {

AugmentedSystem augment(const NetworkSystem& sys, const Matrix& delta) {
  sys.validate();
  const Index n = sys.n();
  require(delta.rows() == n && delta.cols() == n, ErrorCode::invalid_input,
          "augment: delta must be n x n");
  require_finite(delta, "augment delta");

  AugmentedSystem aug;
  aug.n = n;
  aug.abar = Matrix::Zero(2 * n, 2 * n);
  aug.abar.topLeftCorner(n, n) = sys.A;
  aug.abar.bottomRightCorner(n, n) = sys.A + delta;
  aug.cbar = Matrix::Zero(sys.p(), 2 * n);
  aug.cbar.leftCols(n) = sys.C;
  aug.cbar.rightCols(n) = -sys.C;
  return aug;
}

GramianDecomposition gramian(const AugmentedSystem& aug, double nullity_tol) {
  require(nullity_tol > 0.0, ErrorCode::invalid_input,
          "gramian: nullity_tol must be positive");
  const Index m = aug.abar.rows();

  GramianDecomposition gd;
  gd.n = aug.n;
  gd.wbar = solve_lyapunov(aug.abar, aug.cbar);
  gd.lyapunov_residual =
      (gd.wbar * aug.abar + aug.abar.transpose() * gd.wbar +
       aug.cbar.transpose() * aug.cbar)
          .norm();

  Eigen::SelfAdjointEigenSolver<Matrix> es(gd.wbar);
  require(es.info() == Eigen::Success, ErrorCode::solver_error,
          "gramian: eigendecomposition failed");
  const Vector evals = es.eigenvalues();  // ascending
  const double lambda_max = std::max(evals(m - 1), 0.0);
  const double cutoff = nullity_tol * std::max(lambda_max, 1e-300);

  Index nullity = 0;
  while (nullity < m && evals(nullity) <= cutoff) ++nullity;

  // Descending observable eigenvalues first, null directions last; fix each
  // eigenvector's sign so repeated runs emit identical output.
  gd.nullity = nullity;
  gd.lambda = Vector(m - nullity);
  gd.v = Matrix(m, m);
  for (Index k = 0; k < m; ++k) {
    const Index src = m - 1 - k;
    Vector column = es.eigenvectors().col(src);
    Index arg_max = 0;
    column.cwiseAbs().maxCoeff(&arg_max);
    if (column(arg_max) < 0.0) column = -column;
    gd.v.col(k) = column;
    if (k < m - nullity) gd.lambda(k) = std::max(evals(src), 0.0);
  }

  const Matrix v_o = gd.v_obs();
  const Matrix v_u = gd.v_unobs();
  gd.a_obs = v_o.transpose() * aug.abar * v_o;
  gd.a_cross = v_u.transpose() * aug.abar * v_o;
  gd.a_unobs = v_u.transpose() * aug.abar * v_u;
  gd.c_obs = aug.cbar * v_o;
  gd.upper_block_residual = (v_o.transpose() * aug.abar * v_u).norm();
  gd.unobs_output_residual = (aug.cbar * v_u).norm();
  return gd;
}

EpsBound check_eps_bound(const GramianDecomposition& gd, const Vector& x0,
                         double eps) {
  require(eps > 0.0, ErrorCode::invalid_input, "check_eps_bound: eps > 0");
  require(x0.size() == gd.n, ErrorCode::invalid_input,
          "check_eps_bound: x0 must have n entries");
  const double x0_sq = x0.squaredNorm();
  require(x0_sq > 0.0, ErrorCode::invalid_input,
          "check_eps_bound: x0 must be nonzero");

  EpsBound bound;
  bound.lambda_max = gd.lambda_max();
  bound.margin = eps * eps / (2.0 * x0_sq) - bound.lambda_max;
  bound.certified = bound.margin > 0.0;
  return bound;
}

double error_norm(const GramianDecomposition& gd, const Vector& x0) {
  require(x0.size() == gd.n, ErrorCode::invalid_input,
          "error_norm: x0 must have n entries");
  Vector stacked(2 * gd.n);
  stacked.head(gd.n) = x0;
  stacked.tail(gd.n) = x0;
  const double quad = stacked.dot(gd.wbar * stacked);
  return std::sqrt(std::max(quad, 0.0));
}

ErrorNormBracket error_norm_bracket(const GramianDecomposition& gd) {
  const Index n = gd.n;
  const Matrix m = gd.wbar.topLeftCorner(n, n) +
                   gd.wbar.topRightCorner(n, n) +
                   gd.wbar.bottomLeftCorner(n, n) +
                   gd.wbar.bottomRightCorner(n, n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  ErrorNormBracket bracket;
  bracket.lo = std::sqrt(std::max(es.eigenvalues()(0), 0.0));
  bracket.hi = std::sqrt(std::max(es.eigenvalues()(n - 1), 0.0));
  return bracket;
}

DissimilarResult solve_fixed_gramian_l1(const NetworkSystem& sys,
                                        const Matrix& wbar,
                                        const SparsityMask& z,
                                        double presence_threshold) {
  sys.validate();
  const Index n = sys.n();
  require(wbar.rows() == 2 * n && wbar.cols() == 2 * n,
          ErrorCode::invalid_input, "solve_fixed_gramian_l1: wbar must be 2n x 2n");
  require_finite(wbar, "solve_fixed_gramian_l1 wbar");
  require(z.Z.rows() == n && z.Z.cols() == n, ErrorCode::invalid_input,
          "solve_fixed_gramian_l1: mask mismatch");

  const Matrix w11 = wbar.topLeftCorner(n, n);
  const Matrix w12 = wbar.topRightCorner(n, n);
  const Matrix w22 = wbar.bottomRightCorner(n, n);
  const Matrix ctc = sys.C.transpose() * sys.C;

  // Constant block of the Lyapunov constraint: if it already fails, no Delta
  // can fix it and Wbar was not feasible.
  const double block11_residual =
      (w11 * sys.A + sys.A.transpose() * w11 + ctc).norm();
  if (block11_residual > 1e-6 * (1.0 + ctc.norm())) {
    throw Error(ErrorCode::infeasible,
                "fixed Gramian is not feasible: constant block residual " +
                    std::to_string(block11_residual));
  }

  const Matrix r12 = ctc - w12 * sys.A - sys.A.transpose() * w12;
  const Matrix r22 = -ctc - w22 * sys.A - sys.A.transpose() * w22;

  std::vector<Index> masked;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (z.Z(i, j) != 0.0) masked.push_back(j * n + i);
    }
  }
  const Index num_masked = static_cast<Index>(masked.size());
  const Index num_delta = n * n;  // vec(Delta), column-major
  const Index num_vars = num_delta + num_masked;
  const Index eq_rows = n * n + n * (n + 1) / 2;

  LpProblem lp;
  lp.cost = Vector::Zero(num_vars);
  lp.cost.tail(num_masked).setOnes();
  lp.constraints = Matrix::Zero(eq_rows + 2 * num_masked, num_vars);
  lp.row_lower = Vector::Zero(lp.constraints.rows());
  lp.row_upper = Vector::Zero(lp.constraints.rows());

  Index row = 0;
  // W12 Delta = R12, entry (r, c): sum_k W12(r, k) Delta(k, c).
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      for (Index k = 0; k < n; ++k) {
        lp.constraints(row, c * n + k) = w12(r, k);
      }
      lp.row_lower(row) = r12(r, c);
      lp.row_upper(row) = r12(r, c);
      ++row;
    }
  }
  // W22 Delta + Delta^T W22 = R22, upper triangle.
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r <= c; ++r) {
      for (Index k = 0; k < n; ++k) {
        lp.constraints(row, c * n + k) += w22(r, k);
        lp.constraints(row, r * n + k) += w22(k, c);
      }
      lp.row_lower(row) = r22(r, c);
      lp.row_upper(row) = r22(r, c);
      ++row;
    }
  }
  // Epigraph rows for the masked entries of A + Delta.
  for (Index k = 0; k < num_masked; ++k) {
    const Index flat = masked[static_cast<std::size_t>(k)];
    const double a_entry = sys.A(flat % n, flat / n);
    lp.constraints(row, flat) = 1.0;
    lp.constraints(row, num_delta + k) = -1.0;
    lp.row_lower(row) = -kInfinity;
    lp.row_upper(row) = -a_entry;
    ++row;
    lp.constraints(row, flat) = -1.0;
    lp.constraints(row, num_delta + k) = -1.0;
    lp.row_lower(row) = -kInfinity;
    lp.row_upper(row) = a_entry;
    ++row;
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::infeasible) {
    throw Error(ErrorCode::infeasible,
                "fixed Gramian affine set is empty: Wbar was not feasible");
  }
  require(sol.status == LpStatus::optimal, ErrorCode::solver_error,
          "solve_fixed_gramian_l1: LP ended " +
              std::string(to_string(sol.status)));

  DissimilarResult result;
  result.delta = Eigen::Map<const Matrix>(sol.primal.data(), n, n);
  result.network = sys.A + result.delta;
  result.objective = z.Z.cwiseProduct(result.network).cwiseAbs().sum();
  result.flips = flip_metric(sys.A, result.network, presence_threshold);

  Matrix abar = Matrix::Zero(2 * n, 2 * n);
  abar.topLeftCorner(n, n) = sys.A;
  abar.bottomRightCorner(n, n) = result.network;
  Matrix cbar(sys.p(), 2 * n);
  cbar.leftCols(n) = sys.C;
  cbar.rightCols(n) = -sys.C;
  result.lyapunov_residual =
      (wbar * abar + abar.transpose() * wbar + cbar.transpose() * cbar).norm();
  result.feasibility_residual = *result.lyapunov_residual;
  return result;
}

FamilyParameters family_extract(const GramianDecomposition& gd) {
  const Index k = gd.lambda.size();
  FamilyParameters fp;
  fp.a_cross = gd.a_cross;
  fp.a_unobs = gd.a_unobs;
  if (k == 0) {
    fp.skew = Matrix::Zero(0, 0);
    return fp;
  }
  const Vector sqrt_l = gd.lambda.cwiseSqrt();
  const Vector inv_sqrt_l = sqrt_l.cwiseInverse();
  const Matrix x = sqrt_l.asDiagonal() * gd.a_obs * inv_sqrt_l.asDiagonal();
  Matrix s = x + 0.5 * (inv_sqrt_l.asDiagonal() * gd.c_obs.transpose() *
                        gd.c_obs * inv_sqrt_l.asDiagonal());
  fp.skew = 0.5 * (s - s.transpose());
  return fp;
}

Matrix family_reconstruct(const GramianDecomposition& gd,
                          const FamilyParameters& fp) {
  const Index k = gd.lambda.size();
  const Index l = gd.nullity;
  require(fp.skew.rows() == k && fp.skew.cols() == k, ErrorCode::invalid_input,
          "family_reconstruct: skew block must be (2n-l) x (2n-l)");
  require(fp.a_cross.rows() == l && fp.a_cross.cols() == k,
          ErrorCode::invalid_input,
          "family_reconstruct: cross block must be l x (2n-l)");
  require(fp.a_unobs.rows() == l && fp.a_unobs.cols() == l,
          ErrorCode::invalid_input,
          "family_reconstruct: unobservable block must be l x l");
  require((fp.skew + fp.skew.transpose()).norm() <=
              1e-12 * (1.0 + fp.skew.norm()),
          ErrorCode::invalid_input, "family_reconstruct: S must be skew");

  const Matrix v_o = gd.v_obs();
  const Matrix v_u = gd.v_unobs();
  Matrix abar = Matrix::Zero(2 * gd.n, 2 * gd.n);
  if (k > 0) {
    const Vector inv_l = gd.lambda.cwiseInverse();
    const Vector sqrt_l = gd.lambda.cwiseSqrt();
    const Vector inv_sqrt_l = sqrt_l.cwiseInverse();
    abar += -0.5 * v_o * (inv_l.asDiagonal() * gd.c_obs.transpose() *
                          gd.c_obs) * v_o.transpose();
    abar += v_o * (inv_sqrt_l.asDiagonal() * fp.skew * sqrt_l.asDiagonal()) *
            v_o.transpose();
    if (l > 0) abar += v_u * fp.a_cross * v_o.transpose();
  }
  if (l > 0) abar += v_u * fp.a_unobs * v_u.transpose();
  return abar;
}

BlockDiagProjection family_project_blockdiag(const GramianDecomposition& gd,
                                             const FamilyParameters& fp) {
  BlockDiagProjection proj;
  proj.abar = family_reconstruct(gd, fp);
  const Index n = gd.n;
  proj.block_residual =
      std::hypot(proj.abar.topRightCorner(n, n).norm(),
                 proj.abar.bottomLeftCorner(n, n).norm());
  proj.a = proj.abar.topLeftCorner(n, n);
  proj.a_perturbed = proj.abar.bottomRightCorner(n, n);
  return proj;
}

TrajectoryTable simulate_pair(const NetworkSystem& sys, const Matrix& delta,
                              const Vector& x0, double horizon, double dt) {
  sys.validate();
  const Index n = sys.n();
  require(delta.rows() == n && delta.cols() == n, ErrorCode::invalid_input,
          "simulate_pair: delta must be n x n");
  require(x0.size() == n, ErrorCode::invalid_input,
          "simulate_pair: x0 must have n entries");
  require(horizon > 0.0 && dt > 0.0, ErrorCode::invalid_input,
          "simulate_pair: horizon and dt must be positive");

  const Index steps = static_cast<Index>(std::floor(horizon / dt + 1e-9)) + 1;
  const Index p = sys.p();
  TrajectoryTable table;
  table.t.resize(steps);
  table.y.resize(steps, p);
  table.ytilde.resize(steps, p);
  table.e.resize(steps, p);

  const Matrix ea = expm(sys.A * dt);
  const Matrix eb = expm((sys.A + delta) * dt);
  Vector xa = x0;
  Vector xb = x0;
  double accum = 0.0;
  double prev_sq = 0.0;
  for (Index s = 0; s < steps; ++s) {
    table.t(s) = static_cast<double>(s) * dt;
    const Vector ya = sys.C * xa;
    const Vector yb = sys.C * xb;
    table.y.row(s) = ya.transpose();
    table.ytilde.row(s) = yb.transpose();
    table.e.row(s) = (ya - yb).transpose();
    const double err_sq = (ya - yb).squaredNorm();
    if (s > 0) accum += 0.5 * dt * (prev_sq + err_sq);
    prev_sq = err_sq;
    xa = (ea * xa).eval();
    xb = (eb * xb).eval();
  }
  table.cumulative_error_norm = std::sqrt(accum);
  return table;
}

}  // namespace netid
