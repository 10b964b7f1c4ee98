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

#ifndef NETID_NUMERICS_HPP
#define NETID_NUMERICS_HPP

#include <algorithm>
#include <limits>

#include "netid/common.hpp"

namespace netid {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct NullspaceResult {
  Index rank = 0;
  Matrix basis;     // orthonormal columns spanning the nullspace
  double tol = 0.0; // singular-value cutoff that was applied
};

/// Numerical rank and orthonormal nullspace basis via SVD.
///
/// rank_tol is an absolute singular-value cutoff; 0 selects the default
/// max(rows, cols) * machine epsilon * largest singular value.
NullspaceResult svd_nullspace(const Matrix& m, double rank_tol = 0.0);

/// Solves W*A + A^T*W = -C^T*C for symmetric W via the vectorized
/// Kronecker-sum system. Singular-but-consistent systems (marginally
/// stable unobservable modes) return the minimum-Frobenius-norm solution;
/// inconsistent ones raise gramian_undefined naming the offending
/// eigenvalue pair.
Matrix solve_lyapunov(const Matrix& abar, const Matrix& cbar);

/// Dense matrix exponential, scaling-and-squaring with diagonal Pade
/// approximants (order picked from the 1-norm).
Matrix expm(const Matrix& m);

/// e^{M t} x.
Vector expm_apply(const Matrix& m, const Vector& x, double t);

/// Minimum-norm least-squares solve (complete orthogonal decomposition).
Matrix least_squares_min_norm(const Matrix& a, const Matrix& b);

/// Minimum-norm least squares via truncated SVD with an absolute
/// singular-value cutoff. Used for systems whose natural scale is known a
/// priori (rows of an orthonormal basis have unit scale), where relative
/// thresholds would treat roundoff junk as signal.
Matrix pinv_solve(const Matrix& a, const Matrix& b, double cutoff);

/// Default cutoff for pinv_solve on row submatrices of an orthonormal basis.
inline double unit_scale_cutoff(const Matrix& a) {
  return static_cast<double>(std::max(a.rows(), a.cols())) *
         std::numeric_limits<double>::epsilon();
}

/// Linear program
///
///   min  cost . x   subject to  row_lower <= constraints * x <= row_upper
///
/// over free variables x. Bounds may be +-infinity; a row with equal
/// bounds is an equality. Solved by a dense two-phase primal simplex with
/// Bland's anti-cycling rule, so results are deterministic for fixed input.
struct LpProblem {
  Vector cost;
  Matrix constraints;
  Vector row_lower;
  Vector row_upper;

  Index num_vars() const { return cost.size(); }
  Index num_rows() const { return constraints.rows(); }
  void validate() const;
};

enum class LpStatus { optimal, unbounded, infeasible };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vector primal;
  double objective = 0.0;
  /// Shadow price per constraint row (d objective / d bound).
  Vector dual;
  double feasibility_residual = 0.0;
  double slackness_residual = 0.0;
  int iterations = 0;
};

LpSolution solve_lp(const LpProblem& p);

}  // namespace netid

#endif  // NETID_NUMERICS_HPP
