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
//
// Test-only reference implementations. Each takes a route independent of the
// library path it checks: Gaussian elimination instead of SVD, RK4 instead
// of Pade, Simpson quadrature instead of the Lyapunov solve, and exhaustive
// vertex enumeration instead of the simplex.

#ifndef NETID_TESTS_ORACLES_HPP
#define NETID_TESTS_ORACLES_HPP

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "netid/common.hpp"
#include "netid/numerics.hpp"

namespace netid::oracles {

// Nullspace by row-reduction (Gauss-Jordan with partial pivoting), returning
// one basis column per free variable.
inline Matrix rref_nullspace(Matrix m, double tol = 1e-9) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> pivot_cols;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index best = row;
    for (Index r = row + 1; r < rows; ++r) {
      if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
    }
    if (std::abs(m(best, col)) <= tol * (1.0 + m.cwiseAbs().maxCoeff())) {
      continue;
    }
    m.row(best).swap(m.row(row));
    m.row(row) /= m(row, col);
    for (Index r = 0; r < rows; ++r) {
      if (r != row && m(r, col) != 0.0) m.row(r) -= m(r, col) * m.row(row);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<Index> free_cols;
  for (Index col = 0; col < cols; ++col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) ==
        pivot_cols.end()) {
      free_cols.push_back(col);
    }
  }
  Matrix basis = Matrix::Zero(cols, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], static_cast<Index>(k)) = 1.0;
    for (std::size_t pk = 0; pk < pivot_cols.size(); ++pk) {
      basis(pivot_cols[pk], static_cast<Index>(k)) =
          -m(static_cast<Index>(pk), free_cols[k]);
    }
  }
  return basis;
}

// || P_a - P_b ||_2 for the orthogonal projectors onto the column spans;
// equals the sine of the largest principal angle.
inline double subspace_distance(const Matrix& a, const Matrix& b) {
  auto projector = [](const Matrix& m) -> Matrix {
    if (m.cols() == 0) return Matrix::Zero(m.rows(), m.rows());
    const Matrix q = Eigen::HouseholderQR<Matrix>(m)
                         .householderQ() *
                     Matrix::Identity(m.rows(), m.cols());
    return q * q.transpose();
  };
  const Matrix diff = projector(a) - projector(b);
  Eigen::BDCSVD<Matrix> svd(diff);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

// Classic fixed-step RK4 for xdot = M x.
inline Vector rk4_apply(const Matrix& m, Vector x, double t, double step) {
  const int steps = std::max(1, static_cast<int>(std::ceil(t / step)));
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vector k1 = m * x;
    const Vector k2 = m * (x + 0.5 * h * k1);
    const Vector k3 = m * (x + 0.5 * h * k2);
    const Vector k4 = m * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

// Simpson quadrature of int_0^T e^{A^T t} C^T C e^{A t} dt with T grown
// until ||e^{A T}|| <= trunc_tol (A must be Hurwitz for convergence).
inline Matrix quadrature_gramian(const Matrix& abar, const Matrix& cbar,
                                 double trunc_tol = 1e-8, int intervals = 4096) {
  double horizon = 1.0;
  for (int i = 0; i < 60; ++i) {
    if (expm(abar * horizon).norm() <= trunc_tol) break;
    horizon *= 1.5;
  }
  const int n_points = intervals + 1;  // intervals must be even
  const double h = horizon / intervals;
  const Matrix step = expm(abar * h);
  Matrix state = Matrix::Identity(abar.rows(), abar.cols());
  Matrix accum = Matrix::Zero(abar.rows(), abar.cols());
  for (int k = 0; k < n_points; ++k) {
    const Matrix output = cbar * state;
    const double weight =
        (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    accum += weight * (output.transpose() * output);
    state = (state * step).eval();
  }
  return (h / 3.0) * accum;
}

// Exact minimum of v -> sum_{i in masked} |a_i + phi_i . v|, optionally with
// hard zero constraints (a + Phi v)_i = 0 for i in forced. A convex
// piecewise-linear function attains its minimum at a point that is the
// minimum-norm solution of some subset of entry-zeroing equations, so
// enumerating all subsets of the masked rows (joined with the forced set) is
// exhaustive at these test sizes.
struct MaskedL1Minimum {
  double objective = std::numeric_limits<double>::infinity();
  Vector v;
  bool feasible = false;
};

inline MaskedL1Minimum masked_l1_minimum(const Vector& a, const Vector& z,
                                         const Matrix& phi,
                                         const std::vector<Index>& forced = {}) {
  const Index n = a.size();
  const Index dim = phi.cols();
  std::vector<Index> masked;
  for (Index i = 0; i < n; ++i) {
    if (z(i) != 0.0) masked.push_back(i);
  }

  auto evaluate = [&](const Vector& v) -> double {
    double total = 0.0;
    for (Index i : masked) total += std::abs(a(i) + phi.row(i).dot(v));
    return total;
  };
  auto try_candidate = [&](const std::vector<Index>& zero_rows,
                           MaskedL1Minimum& best) {
    Matrix system(static_cast<Index>(zero_rows.size()), dim);
    Vector rhs(static_cast<Index>(zero_rows.size()));
    for (std::size_t r = 0; r < zero_rows.size(); ++r) {
      system.row(static_cast<Index>(r)) = phi.row(zero_rows[r]);
      rhs(static_cast<Index>(r)) = -a(zero_rows[r]);
    }
    // Cutoff at Phi's unit scale: roundoff-junk rows are not solvable.
    Vector v = dim > 0
                   ? Vector(pinv_solve(system, rhs, unit_scale_cutoff(system)))
                   : Vector(Vector::Zero(0));
    if (system.rows() > 0) {
      const double residual = (system * v - rhs).cwiseAbs().maxCoeff();
      if (residual > 1e-8 * (1.0 + a.cwiseAbs().maxCoeff())) return;
    }
    const double value = evaluate(v);
    if (value < best.objective - 1e-12 ||
        (value <= best.objective + 1e-12 &&
         (!best.feasible || v.norm() < best.v.norm()))) {
      best.objective = value;
      best.v = v;
      best.feasible = true;
    }
  };

  MaskedL1Minimum best;
  const std::size_t m = masked.size();
  const std::uint64_t subsets = 1ULL << m;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::vector<Index> zero_rows = forced;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (1ULL << k)) zero_rows.push_back(masked[k]);
    }
    try_candidate(zero_rows, best);
  }
  return best;
}

// Eigenvector (PBH-style) observability test over the complex eigenvalues.
inline bool pbh_observable(const Matrix& a, const Matrix& c, double tol = 1e-8) {
  const Index n = a.rows();
  Eigen::EigenSolver<Matrix> es(a);
  for (Index k = 0; k < n; ++k) {
    Eigen::MatrixXcd stacked(n + c.rows(), n);
    stacked.topRows(n) =
        a.cast<std::complex<double>>() -
        es.eigenvalues()(k) * Eigen::MatrixXcd::Identity(n, n);
    stacked.bottomRows(c.rows()) = c.cast<std::complex<double>>();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(stacked);
    const auto& sigma = svd.singularValues();
    if (sigma(sigma.size() - 1) <= tol * (1.0 + sigma(0))) return false;
  }
  return true;
}

// Random Hurwitz matrix: shifted so every eigenvalue real part <= -margin.
inline Matrix random_hurwitz(Rng& rng, Index n, double margin = 0.5) {
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = rng.normal() / std::sqrt(double(n));
  }
  Eigen::EigenSolver<Matrix> es(a);
  double max_real = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < n; ++k) {
    max_real = std::max(max_real, es.eigenvalues()(k).real());
  }
  a -= (max_real + margin) * Matrix::Identity(n, n);
  return a;
}

inline double max_real_eigenvalue(const Matrix& a) {
  Eigen::EigenSolver<Matrix> es(a);
  double max_real = -std::numeric_limits<double>::infinity();
  for (Index k = 0; k < a.rows(); ++k) {
    max_real = std::max(max_real, es.eigenvalues()(k).real());
  }
  return max_real;
}

}  // namespace netid::oracles

#endif  // NETID_TESTS_ORACLES_HPP
