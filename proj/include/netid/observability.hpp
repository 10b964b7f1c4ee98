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

#ifndef NETID_OBSERVABILITY_HPP
#define NETID_OBSERVABILITY_HPP

#include <cstdint>
#include <vector>

#include "netid/model.hpp"
#include "netid/numerics.hpp"

namespace netid {

/// Observability matrix [C; CA; ...; CA^{n-1}], its numerical rank r and an
/// orthonormal basis Phi of its nullspace. A perturbation Delta leaves the
/// measurements unchanged exactly when O * Delta = 0, i.e. when every column
/// of Delta lies in span(Phi).
struct ObservabilityAnalysis {
  Matrix O;      // (n*p) x n, block order C, CA, ..., CA^{n-1}
  Index rank = 0;
  Matrix Phi;    // n x (n - rank), orthonormal columns
  double rank_tol = 0.0;

  Index n() const { return O.cols(); }
  Index nullity() const { return Phi.cols(); }
};

ObservabilityAnalysis analyze(const NetworkSystem& sys, double rank_tol = 0.0);

enum class EdgeClass { essential, decoupled, coupled };

const char* to_string(EdgeClass c);

/// Per-row structural label. The conditions depend only on the row index i,
/// so a label applies uniformly to every edge A(i, j) of that row:
///   essential  : Phi^T e_i = 0       (no consistent network can change row i)
///   decoupled  : e_i in span(Phi)    (row i entries are freely changeable)
///   coupled    : neither.
struct EdgeClassification {
  std::vector<EdgeClass> row_labels;
  Vector essential_residual;  // ||Phi^T e_i||
  Vector decoupled_residual;  // ||Phi Phi^T e_i - e_i||
};

EdgeClassification classify_edges(const ObservabilityAnalysis& an,
                                  double tol = 1e-8);

/// Numerical check that (A, C) and (A + Delta, C) generate identical
/// measurements: algebraically via C A^k = C (A + Delta)^k for k = 0..n and
/// dynamically by comparing sampled output trajectories from random initial
/// conditions. Residuals are relative to the magnitude of the terms compared.
struct IndistinguishabilityReport {
  double algebraic_residual = 0.0;
  double trajectory_residual = 0.0;
  bool algebraic_pass = false;
  bool trajectory_pass = false;
  bool pass = false;
  double tolerance = 0.0;
};

IndistinguishabilityReport verify_indistinguishable(
    const NetworkSystem& sys, const Matrix& delta, int trials = 8,
    double horizon = 5.0, double tolerance = 1e-7,
    std::uint64_t seed = 0x9e1dULL);

/// One achievable sparsity pattern for a column of A + Delta, together with
/// a witness column realizing it.
struct ColumnVariant {
  std::uint64_t support = 0;  // bit i set <=> entry i present
  Vector witness;             // a_j + Phi * coeffs
  Vector coeffs;
};

struct ColumnVariantSet {
  Index column = 0;
  std::vector<ColumnVariant> variants;  // sorted by support mask

  Index count() const { return static_cast<Index>(variants.size()); }
};

/// Enumerates the distinct supports of {a_j + Phi v : v free} by iterating
/// candidate zero sets T, solving (a_j + Phi v)_T = 0 in least squares and
/// sampling a generic point of each consistent affine set. Guarded by
/// n <= max_dim since candidate sets scale as 2^n.
ColumnVariantSet enumerate_column_variants(
    const ObservabilityAnalysis& an, const Matrix& a, Index column,
    double presence_threshold = kPresenceThreshold, Index max_dim = 16);

/// Product over columns of the variant counts: the number of structurally
/// dissimilar networks consistent with the measurements. Exact below 2^53.
double count_structural_networks(const ObservabilityAnalysis& an,
                                 const Matrix& a,
                                 double presence_threshold = kPresenceThreshold,
                                 Index max_dim = 16);

}  // namespace netid

#endif  // NETID_OBSERVABILITY_HPP
