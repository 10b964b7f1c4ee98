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

#include "netid/observability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace netid {

ObservabilityAnalysis analyze(const NetworkSystem& sys, double rank_tol) {
  sys.validate();
  const Index n = sys.n();
  const Index p = sys.p();

  ObservabilityAnalysis an;
  an.O.resize(n * p, n);
  // Block order C, CA, ..., CA^{n-1}, exact powers (no Krylov truncation).
  Matrix block = sys.C;
  for (Index k = 0; k < n; ++k) {
    an.O.middleRows(k * p, p) = block;
    if (k + 1 < n) block = (block * sys.A).eval();
  }

  NullspaceResult ns = svd_nullspace(an.O, rank_tol);
  an.rank = ns.rank;
  an.Phi = std::move(ns.basis);
  an.rank_tol = ns.tol;
  return an;
}

const char* to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::essential: return "essential";
    case EdgeClass::decoupled: return "decoupled";
    case EdgeClass::coupled: return "coupled";
  }
  return "unknown";
}

EdgeClassification classify_edges(const ObservabilityAnalysis& an, double tol) {
  require(tol >= 0.0, ErrorCode::invalid_input,
          "classify_edges: tol must be >= 0");
  const Index n = an.n();
  EdgeClassification result;
  result.row_labels.resize(static_cast<std::size_t>(n));
  result.essential_residual.resize(n);
  result.decoupled_residual.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Vector phi_row = an.Phi.row(i).transpose();
    const double essential = phi_row.norm();
    Vector projected = an.Phi * phi_row;
    projected(i) -= 1.0;
    const double decoupled = projected.norm();
    result.essential_residual(i) = essential;
    result.decoupled_residual(i) = decoupled;
    if (essential <= tol) {
      result.row_labels[static_cast<std::size_t>(i)] = EdgeClass::essential;
    } else if (decoupled <= tol) {
      result.row_labels[static_cast<std::size_t>(i)] = EdgeClass::decoupled;
    } else {
      result.row_labels[static_cast<std::size_t>(i)] = EdgeClass::coupled;
    }
  }
  return result;
}

IndistinguishabilityReport verify_indistinguishable(const NetworkSystem& sys,
                                                    const Matrix& delta,
                                                    int trials, double horizon,
                                                    double tolerance,
                                                    std::uint64_t seed) {
  sys.validate();
  const Index n = sys.n();
  require(delta.rows() == n && delta.cols() == n, ErrorCode::invalid_input,
          "verify_indistinguishable: delta must be n x n");
  require_finite(delta, "verify_indistinguishable delta");
  require(horizon > 0.0 && trials >= 1, ErrorCode::invalid_input,
          "verify_indistinguishable: need horizon > 0 and trials >= 1");

  IndistinguishabilityReport report;
  report.tolerance = tolerance;

  // (i) algebraic: C A^k vs C (A + Delta)^k for k = 0..n, each compared
  // relative to the size of the terms at that power.
  const Matrix b = sys.A + delta;
  Matrix ra = sys.C;
  Matrix rb = sys.C;
  double algebraic = 0.0;
  for (Index k = 0; k <= n; ++k) {
    const double scale = 1.0 + std::max(ra.norm(), rb.norm());
    algebraic = std::max(algebraic, (ra - rb).norm() / scale);
    if (k < n) {
      ra = (ra * sys.A).eval();
      rb = (rb * b).eval();
    }
  }
  report.algebraic_residual = algebraic;
  report.algebraic_pass = algebraic <= tolerance;

  // (ii) dynamic: sampled output trajectories from random unit x0.
  const int steps = 32;
  const double dt = horizon / steps;
  const Matrix ea = expm(sys.A * dt);
  const Matrix eb = expm(b * dt);
  Rng rng(seed);
  double deviation = 0.0;
  double y_scale = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Vector x0 = rng.normal_vector(n);
    if (x0.norm() == 0.0) x0(0) = 1.0;
    x0.normalize();
    Vector xa = x0;
    Vector xb = x0;
    for (int s = 0; s <= steps; ++s) {
      const Vector ya = sys.C * xa;
      const Vector yb = sys.C * xb;
      deviation = std::max(deviation, (ya - yb).norm());
      y_scale = std::max({y_scale, ya.norm(), yb.norm()});
      xa = (ea * xa).eval();
      xb = (eb * xb).eval();
    }
  }
  report.trajectory_residual = deviation / (1.0 + y_scale);
  report.trajectory_pass = report.trajectory_residual <= tolerance;
  report.pass = report.algebraic_pass && report.trajectory_pass;
  return report;
}

namespace {

// Generic point of {v0 + N g}: redraw until every entry outside the forced
// set clears the presence threshold; after the retry budget the stubborn
// entries are treated as genuinely forced to zero.
constexpr int kGenericRetries = 32;

}  // namespace

ColumnVariantSet enumerate_column_variants(const ObservabilityAnalysis& an,
                                           const Matrix& a, Index column,
                                           double presence_threshold,
                                           Index max_dim) {
  const Index n = an.n();
  require(a.rows() == n && a.cols() == n, ErrorCode::invalid_input,
          "enumerate_column_variants: matrix size mismatch");
  require(column >= 0 && column < n, ErrorCode::invalid_input,
          "enumerate_column_variants: column out of range");
  require(n <= 62, ErrorCode::invalid_input,
          "enumerate_column_variants: support masks limited to 62 nodes");
  if (n > max_dim) {
    throw Error(ErrorCode::enumeration_too_large,
                "enumeration over 2^" + std::to_string(n) +
                    " zero sets per column exceeds the guard (max_dim=" +
                    std::to_string(max_dim) + ")");
  }

  const Vector a_col = a.col(column);
  const Index dim = an.nullity();
  const double consistency_tol =
      1e-9 * (1.0 + a_col.cwiseAbs().maxCoeff());

  std::map<std::uint64_t, ColumnVariant> found;
  const std::uint64_t subsets = 1ULL << n;
  for (std::uint64_t zero_set = 0; zero_set < subsets; ++zero_set) {
    std::vector<Index> forced;
    for (Index i = 0; i < n; ++i) {
      if (zero_set & (1ULL << i)) forced.push_back(i);
    }

    Vector v0 = Vector::Zero(dim);
    Matrix null_basis;
    if (forced.empty()) {
      null_basis = Matrix::Identity(dim, dim);
    } else {
      Matrix phi_t(static_cast<Index>(forced.size()), dim);
      Vector rhs(static_cast<Index>(forced.size()));
      for (Index r = 0; r < phi_t.rows(); ++r) {
        phi_t.row(r) = an.Phi.row(forced[static_cast<std::size_t>(r)]);
        rhs(r) = -a_col(forced[static_cast<std::size_t>(r)]);
      }
      if (dim == 0) {
        if (rhs.cwiseAbs().maxCoeff() > consistency_tol) continue;
        null_basis = Matrix(0, 0);
      } else {
        // Absolute cutoff at Phi's unit scale: rows of an orthonormal basis
        // that are roundoff junk must not be solvable against.
        const double cutoff = unit_scale_cutoff(phi_t);
        v0 = pinv_solve(phi_t, rhs, cutoff);
        if ((phi_t * v0 - rhs).cwiseAbs().maxCoeff() > consistency_tol) {
          continue;  // zero set not achievable
        }
        null_basis = svd_nullspace(phi_t, cutoff).basis;
      }
    }

    Rng rng(derive_seed(0xC0111ULL + static_cast<std::uint64_t>(column),
                        zero_set));
    const double draw_scale = 1.0 + v0.norm() + a_col.cwiseAbs().maxCoeff();
    Vector best_witness;
    Vector best_coeffs;
    int best_support_size = -1;
    for (int attempt = 0; attempt < kGenericRetries; ++attempt) {
      Vector v = v0;
      if (null_basis.cols() > 0) {
        v += null_basis * (draw_scale * rng.normal_vector(null_basis.cols()));
      }
      const Vector w = dim > 0 ? Vector(a_col + an.Phi * v) : a_col;
      int support_size = 0;
      bool clean = true;
      for (Index i = 0; i < n; ++i) {
        const bool in_forced = (zero_set & (1ULL << i)) != 0;
        const bool present = std::abs(w(i)) > presence_threshold;
        if (present) ++support_size;
        if (!in_forced && !present) clean = false;
      }
      if (support_size > best_support_size) {
        best_support_size = support_size;
        best_witness = w;
        best_coeffs = v;
      }
      if (clean || null_basis.cols() == 0) break;
    }

    std::uint64_t support = 0;
    for (Index i = 0; i < n; ++i) {
      if (std::abs(best_witness(i)) > presence_threshold) {
        support |= (1ULL << i);
      }
    }
    if (!found.count(support)) {
      ColumnVariant variant;
      variant.support = support;
      variant.witness = best_witness;
      variant.coeffs = best_coeffs;
      found.emplace(support, std::move(variant));
    }
  }

  ColumnVariantSet result;
  result.column = column;
  result.variants.reserve(found.size());
  for (auto& [mask, variant] : found) result.variants.push_back(std::move(variant));
  return result;
}

double count_structural_networks(const ObservabilityAnalysis& an,
                                 const Matrix& a, double presence_threshold,
                                 Index max_dim) {
  double count = 1.0;
  for (Index j = 0; j < an.n(); ++j) {
    const ColumnVariantSet variants =
        enumerate_column_variants(an, a, j, presence_threshold, max_dim);
    count *= static_cast<double>(variants.count());
  }
  return count;
}

}  // namespace netid
