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

#include "netid/numerics.hpp"
#include <iostream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace netid {

NullspaceResult svd_nullspace(const Matrix& m, double rank_tol) {
  require(m.rows() > 0 && m.cols() > 0, ErrorCode::invalid_input,
          "svd_nullspace: dimensions must be positive");
  require_finite(m, "svd_nullspace input");
  require(rank_tol >= 0.0, ErrorCode::invalid_input,
          "svd_nullspace: rank_tol must be >= 0");

  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double tol =
      rank_tol > 0.0
          ? rank_tol
          : static_cast<double>(std::max(m.rows(), m.cols())) *
                std::numeric_limits<double>::epsilon() * sigma_max;

  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > tol) ++rank;

  NullspaceResult result;
  result.rank = rank;
  result.basis = svd.matrixV().rightCols(m.cols() - rank);
  result.tol = tol;
  return result;
}

namespace {

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return k;
}

std::string offending_eigenvalue_pairs(const Matrix& abar) {
  Eigen::EigenSolver<Matrix> es(abar);
  const auto& ev = es.eigenvalues();
  double scale = 0.0;
  for (Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev(i)));
  const double tol = 1e-7 * std::max(1.0, scale);
  std::ostringstream msg;
  bool first = true;
  for (Index i = 0; i < ev.size(); ++i) {
    for (Index j = i; j < ev.size(); ++j) {
      if (std::abs(ev(i) + ev(j)) <= tol) {
        if (!first) msg << ", ";
        msg << "(" << ev(i).real();
        if (ev(i).imag() != 0.0) msg << (ev(i).imag() < 0 ? "" : "+") << ev(i).imag() << "i";
        msg << ") + (" << ev(j).real();
        if (ev(j).imag() != 0.0) msg << (ev(j).imag() < 0 ? "" : "+") << ev(j).imag() << "i";
        msg << ")";
        first = false;
      }
    }
  }
  if (first) msg << "none within tolerance (system is numerically inconsistent)";
  return msg.str();
}

}  // namespace

Matrix solve_lyapunov(const Matrix& abar, const Matrix& cbar) {
  const Index m = abar.rows();
  require(abar.cols() == m && m > 0, ErrorCode::invalid_input,
          "solve_lyapunov: abar must be square");
  require(cbar.cols() == m, ErrorCode::invalid_input,
          "solve_lyapunov: cbar must have as many columns as abar");
  require_finite(abar, "solve_lyapunov abar");
  require_finite(cbar, "solve_lyapunov cbar");

  const Matrix q = cbar.transpose() * cbar;
  const Matrix identity = Matrix::Identity(m, m);
  // vec(W Abar + Abar^T W) = (Abar^T (x) I + I (x) Abar^T) vec(W)
  Matrix k = kronecker(abar.transpose(), identity);
  k += kronecker(identity, abar.transpose());

  Eigen::Map<const Vector> rhs(q.data(), m * m);
  Vector w_vec = k.completeOrthogonalDecomposition().solve(-rhs);

  Matrix w = Eigen::Map<const Matrix>(w_vec.data(), m, m);
  w = 0.5 * (w + w.transpose()).eval();

  const double q_norm = q.norm();
  const double residual = (w * abar + abar.transpose() * w + q).norm();
  if (residual > 1e-8 * (1.0 + q_norm)) {
    throw Error(ErrorCode::gramian_undefined,
                "lyapunov system is singular and inconsistent; offending "
                "eigenvalue pairs: " +
                    offending_eigenvalue_pairs(abar));
  }
  return w;
}

namespace {

// Diagonal Pade approximant of e^A for the scaled matrix; coefficient
// tables for orders 3..13 with the standard 1-norm switch points.
Matrix pade_exp(const Matrix& a, int order) {
  const Index n = a.rows();
  const Matrix identity = Matrix::Identity(n, n);
  static const double b3[] = {120, 60, 12, 1};
  static const double b5[] = {30240, 15120, 3360, 420, 30, 1};
  static const double b7[] = {17297280, 8648640, 1995840, 277200,
                              25200,    1512,    56,      1};
  static const double b9[] = {17643225600., 8821612800., 2075673600.,
                              302702400.,   30270240.,   2162160.,
                              110880.,      3960.,       90.,
                              1.};
  static const double b13[] = {64764752532480000., 32382376266240000.,
                               7771770303897600.,  1187353796428800.,
                               129060195264000.,   10559470521600.,
                               670442572800.,      33522128640.,
                               1323241920.,        40840800.,
                               960960.,            16380.,
                               182.,               1.};

  Matrix u, v;
  const Matrix a2 = a * a;
  if (order == 13) {
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    u = a * (a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) +
             b13[7] * a6 + b13[5] * a4 + b13[3] * a2 + b13[1] * identity);
    v = a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) + b13[6] * a6 +
        b13[4] * a4 + b13[2] * a2 + b13[0] * identity;
  } else {
    const double* b = order == 3 ? b3 : order == 5 ? b5 : order == 7 ? b7 : b9;
    Matrix pow = identity;  // a^(2k)
    Matrix usum = b[1] * identity;
    Matrix vsum = b[0] * identity;
    for (int k = 1; 2 * k <= order; ++k) {
      pow = (pow * a2).eval();
      usum += b[2 * k + 1] * pow;
      if (2 * k <= order - 1 || order % 2 == 1) vsum += b[2 * k] * pow;
    }
    u = a * usum;
    v = vsum;
  }
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix expm(const Matrix& m) {
  const Index n = m.rows();
  require(m.cols() == n && n > 0, ErrorCode::invalid_input,
          "expm: matrix must be square");
  require_finite(m, "expm input");

  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  if (norm <= 1.495585217958292e-2) return pade_exp(m, 3);
  if (norm <= 2.539398330063230e-1) return pade_exp(m, 5);
  if (norm <= 9.504178996162932e-1) return pade_exp(m, 7);
  if (norm <= 2.097847961257068e0) return pade_exp(m, 9);

  const double theta13 = 5.371920351148152e0;
  int squarings = 0;
  double scaled = norm;
  while (scaled > theta13) {
    scaled *= 0.5;
    ++squarings;
  }
  Matrix f = pade_exp(m / std::ldexp(1.0, squarings), 13);
  for (int i = 0; i < squarings; ++i) f = (f * f).eval();
  return f;
}

Vector expm_apply(const Matrix& m, const Vector& x, double t) {
  require(m.rows() == m.cols(), ErrorCode::invalid_input,
          "expm_apply: matrix must be square");
  require(x.size() == m.rows(), ErrorCode::invalid_input,
          "expm_apply: vector length must match matrix size");
  require(t >= 0.0, ErrorCode::invalid_input, "expm_apply: t must be >= 0");
  if (t == 0.0) return x;
  return expm(m * t) * x;
}

Matrix least_squares_min_norm(const Matrix& a, const Matrix& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

Matrix pinv_solve(const Matrix& a, const Matrix& b, double cutoff) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix::Zero(a.cols(), b.cols());
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  Matrix projected = svd.matrixU().transpose() * b;
  for (Index k = 0; k < sigma.size(); ++k) {
    projected.row(k) *= sigma(k) > cutoff ? 1.0 / sigma(k) : 0.0;
  }
  return svd.matrixV() * projected;
}

void LpProblem::validate() const {
  require(cost.size() > 0, ErrorCode::invalid_input,
          "LpProblem: at least one variable required");
  require(constraints.cols() == cost.size(), ErrorCode::invalid_input,
          "LpProblem: cost length must equal variable count");
  require(row_lower.size() == constraints.rows() &&
              row_upper.size() == constraints.rows(),
          ErrorCode::invalid_input, "LpProblem: bound lengths must match rows");
  require(cost.allFinite(), ErrorCode::invalid_input,
          "LpProblem: cost must be finite");
  require_finite(constraints, "LpProblem constraints");
  for (Index i = 0; i < row_lower.size(); ++i) {
    require(!(std::isnan(row_lower(i)) || std::isnan(row_upper(i))),
            ErrorCode::invalid_input, "LpProblem: bounds must not be NaN");
    require(row_lower(i) <= row_upper(i), ErrorCode::invalid_input,
            "LpProblem: lower bound exceeds upper bound");
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

// Row of the standard-form system together with its provenance, used to map
// duals back to the user's rows.
struct StandardRow {
  Index user_row = -1;
  double sign = 1.0;   // standard rhs = sign * scale * user bound
  double scale = 1.0;
  bool is_upper = false;
};

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  p.validate();
  const Index nv = p.num_vars();
  const Index nr = p.num_rows();

  // Standard form: min c.x, A x = b, x >= 0 with split free variables and
  // one slack per finite inequality side. Rows whose coefficients are
  // numerical noise relative to the problem scale are dropped when their
  // bound is noise too, and make the program infeasible when it is not.
  const double global_scale =
      std::max(1.0, p.constraints.cwiseAbs().maxCoeff());
  const double zero_row_tol = 1e-12 * global_scale;

  std::vector<StandardRow> rows;
  Index num_slacks = 0;
  bool noise_row_infeasible = false;
  for (Index r = 0; r < nr; ++r) {
    const double lo = p.row_lower(r);
    const double hi = p.row_upper(r);
    const double row_max = p.constraints.row(r).cwiseAbs().maxCoeff();
    if (row_max <= zero_row_tol) {
      const double viol = std::max(
          std::isfinite(lo) ? lo : -kInfinity,
          std::isfinite(hi) ? -hi : -kInfinity);
      if (viol > 1e-9 * global_scale) noise_row_infeasible = true;
      continue;  // 0 . x constraint carries no information
    }
    if (lo == hi) {
      rows.push_back({r, 1.0, 1.0, false});
    } else {
      if (std::isfinite(hi)) {
        rows.push_back({r, 1.0, 1.0, true});
        ++num_slacks;
      }
      if (std::isfinite(lo)) {
        rows.push_back({r, 1.0, 1.0, false});
        ++num_slacks;
      }
    }
  }
  if (noise_row_infeasible) {
    LpSolution solution;
    solution.status = LpStatus::infeasible;
    return solution;
  }
  const Index m = static_cast<Index>(rows.size());
  require(m > 0, ErrorCode::invalid_input, "LpProblem: no finite constraints");
  const Index n_struct = 2 * nv + num_slacks;
  const Index n_total = n_struct + m;  // + one artificial per row

  // Tableau [A | artificials | b], row-equilibrated; phase-1 and phase-2
  // objective rows carried through every pivot.
  Matrix t = Matrix::Zero(m, n_total + 1);
  {
    Index slack = 0;
    for (Index k = 0; k < m; ++k) {
      const Index r = rows[k].user_row;
      const double lo = p.row_lower(r);
      const double hi = p.row_upper(r);
      for (Index j = 0; j < nv; ++j) {
        const double g = p.constraints(r, j);
        t(k, j) = g;
        t(k, nv + j) = -g;
      }
      double rhs = 0.0;
      if (lo == hi) {
        rhs = lo;
      } else if (rows[k].is_upper) {
        t(k, 2 * nv + slack) = 1.0;  // g.x + s = hi
        ++slack;
        rhs = hi;
      } else {
        t(k, 2 * nv + slack) = -1.0;  // g.x - s = lo
        ++slack;
        rhs = lo;
      }
      t(k, n_total) = rhs;
    }
  }
  for (Index k = 0; k < m; ++k) {
    double scale = t.row(k).head(n_struct).cwiseAbs().maxCoeff();
    scale = std::max(scale, std::abs(t(k, n_total)));
    if (scale > 0.0) {
      t.row(k) /= scale;
      rows[k].scale = 1.0 / scale;
    }
    if (t(k, n_total) < 0.0) {
      t.row(k) = -t.row(k);
      rows[k].sign = -1.0;
    }
    t(k, n_struct + k) = 1.0;
  }

  // Pristine copy of the equilibrated tableau: pivoting drifts numerically,
  // so the working tableau is periodically refactorized as B^{-1} T0 with a
  // fresh LU of the current basis.
  const Matrix t0 = t;

  std::vector<Index> basis(m);
  for (Index k = 0; k < m; ++k) basis[k] = n_struct + k;
  std::vector<bool> row_active(m, true);

  // Full-length cost vectors for the two phases (artificials cost 1 in
  // phase 1, everything else 0; phase 2 carries the split user costs).
  Eigen::RowVectorXd cost1 = Eigen::RowVectorXd::Zero(n_total);
  cost1.tail(m).setOnes();
  Eigen::RowVectorXd cost2 = Eigen::RowVectorXd::Zero(n_total);
  cost2.head(nv) = p.cost.transpose();
  cost2.segment(nv, nv) = -p.cost.transpose();

  Eigen::RowVectorXd phase1(n_total + 1);
  Eigen::RowVectorXd phase2(n_total + 1);

  auto rebuild = [&]() {
    Matrix basis_cols(m, m);
    for (Index k = 0; k < m; ++k) basis_cols.col(k) = t0.col(basis[k]);
    t = basis_cols.partialPivLu().solve(t0);
    for (Index k = 0; k < m; ++k) {  // basic columns are exactly unit
      t.col(basis[k]).setZero();
      t(k, basis[k]) = 1.0;
    }
    Vector cb1(m), cb2(m);
    for (Index k = 0; k < m; ++k) {
      cb1(k) = cost1(basis[k]);
      cb2(k) = cost2(basis[k]);
    }
    phase1.head(n_total) = cost1 - cb1.transpose() * t.leftCols(n_total);
    phase1(n_total) = -cb1.dot(t.col(n_total));
    phase2.head(n_total) = cost2 - cb2.transpose() * t.leftCols(n_total);
    phase2(n_total) = -cb2.dot(t.col(n_total));
    for (Index k = 0; k < m; ++k) {  // exact zeros on basic reduced costs
      phase1(basis[k]) = 0.0;
      phase2(basis[k]) = 0.0;
    }
  };
  rebuild();

  const double b_scale = std::max(1.0, t.col(n_total).maxCoeff());
  int iterations = 0;
  int since_rebuild = 0;
  const int max_iterations = 2000 + 200 * static_cast<int>(m + n_total);

  auto pivot = [&](Index row, Index col) {
    const double pivot_value = t(row, col);
    t.row(row) /= pivot_value;
    for (Index k = 0; k < m; ++k) {
      const double factor = t(k, col);
      if (k != row && factor != 0.0) t.row(k) -= factor * t.row(row);
    }
    const double f1 = phase1(col);
    if (f1 != 0.0) phase1 -= f1 * t.row(row);
    const double f2 = phase2(col);
    if (f2 != 0.0) phase2 -= f2 * t.row(row);
    basis[row] = col;
    ++since_rebuild;
  };

  // Bland's rule: entering = lowest-index variable with negative reduced
  // cost; leaving = min ratio, ties broken by lowest basic variable index.
  // Optimal / unbounded verdicts are only accepted on a freshly
  // refactorized tableau.
  auto simplex = [&](Eigen::RowVectorXd& obj, Index eligible_cols) -> LpStatus {
    while (true) {
      if (++iterations > max_iterations) {
        throw Error(ErrorCode::solver_error,
                    "simplex iteration limit exceeded");
      }
      if (since_rebuild >= 64) {
        rebuild();
        since_rebuild = 0;
      }
      Index entering = -1;
      for (Index j = 0; j < eligible_cols; ++j) {
        if (obj(j) < -kCostTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) {
        if (since_rebuild > 0) {
          rebuild();
          since_rebuild = 0;
          continue;
        }
        return LpStatus::optimal;
      }

      Index leaving = -1;
      double best_ratio = 0.0;
      for (Index k = 0; k < m; ++k) {
        if (!row_active[k] || t(k, entering) <= kPivotTol) continue;
        const double ratio = std::max(t(k, n_total), 0.0) / t(k, entering);
        if (leaving < 0 || ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && basis[k] < basis[leaving])) {
          leaving = k;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) {
        if (since_rebuild > 0) {
          rebuild();
          since_rebuild = 0;
          continue;
        }
        double colmax = -1e300, colsum_art = 0;
        for (Index k = 0; k < m; ++k) {
          colmax = std::max(colmax, t(k, entering));
          if (basis[k] >= n_struct) colsum_art += t(k, entering);
        }
        std::cerr << "UNB-DBG: entering=" << entering << " rc=" << obj(entering)
                  << " colmax=" << colmax << " art_sum=" << colsum_art
                  << " active=" << std::count(row_active.begin(), row_active.end(), true)
                  << "/" << m << "\n";
        return LpStatus::unbounded;
      }
      pivot(leaving, entering);
    }
  };

  LpSolution solution;

  // Phase 1: minimize the artificial sum.
  const LpStatus phase1_status = simplex(phase1, n_struct);
  if (-phase1(n_total) > 1e-7 * b_scale) {
    std::cerr << "INFEAS-DBG: phase1 opt=" << -phase1(n_total)
              << " status=" << to_string(phase1_status)
              << " iter=" << iterations << " m=" << m
              << " ncols=" << n_total << "\n";
    solution.status = LpStatus::infeasible;
    solution.iterations = iterations;
    return solution;
  }
  // Drive leftover artificials out of the basis; an all-zero row is
  // redundant and goes inactive.
  for (Index k = 0; k < m; ++k) {
    if (basis[k] < n_struct) continue;
    Index col = -1;
    for (Index j = 0; j < n_struct; ++j) {
      if (std::abs(t(k, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      pivot(k, col);
    } else {
      row_active[k] = false;
    }
  }
  rebuild();
  since_rebuild = 0;

  const LpStatus status = simplex(phase2, n_struct);
  solution.iterations = iterations;
  solution.status = status;
  if (status != LpStatus::optimal) return solution;
  if (since_rebuild > 0) rebuild();

  Vector x_std = Vector::Zero(n_total);
  for (Index k = 0; k < m; ++k) {
    if (row_active[k]) x_std(basis[k]) = t(k, n_total);
  }
  solution.primal = x_std.head(nv) - x_std.segment(nv, nv);
  solution.objective = p.cost.dot(solution.primal);

  // The artificial block of the phase-2 row holds -y = -c_B B^{-1}; fold the
  // equilibration factors back into user-row shadow prices.
  solution.dual = Vector::Zero(nr);
  for (Index k = 0; k < m; ++k) {
    const double y = -phase2(n_struct + k);
    solution.dual(rows[k].user_row) += y * rows[k].sign * rows[k].scale;
  }

  double feas = 0.0;
  for (Index r = 0; r < nr; ++r) {
    const double v = p.constraints.row(r).dot(solution.primal);
    feas = std::max(feas, p.row_lower(r) - v);
    feas = std::max(feas, v - p.row_upper(r));
  }
  for (Index j = 0; j < n_total; ++j) feas = std::max(feas, -x_std(j));
  solution.feasibility_residual = std::max(feas, 0.0);

  double slackness = 0.0;
  for (Index j = 0; j < n_struct; ++j) {
    slackness = std::max(slackness, std::abs(x_std(j) * phase2(j)));
  }
  solution.slackness_residual = slackness;
  return solution;
}

}  // namespace netid
