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

#ifndef NETID_EPSCLOSE_HPP
#define NETID_EPSCLOSE_HPP

#include "netid/dissimilar.hpp"

namespace netid {

/// Stacked pair system: the output e(t) = C x(t) - C xtilde(t) is the
/// measurement error between the original and the perturbed network started
/// from the same initial condition.
struct AugmentedSystem {
  Matrix abar;  // 2n x 2n, blkdiag(A, A + Delta)
  Matrix cbar;  // p x 2n, [C, -C]
  Index n = 0;
};

AugmentedSystem augment(const NetworkSystem& sys, const Matrix& delta);

/// Observability Gramian of the augmented system with its eigenstructure
/// split into observable (lambda > tol) and unobservable parts, plus the
/// similarity-transformed blocks used by the family parameterization:
///   V^T Abar V = [a_obs 0; a_cross a_unobs],  Cbar V = [c_obs 0].
struct GramianDecomposition {
  Matrix wbar;             // 2n x 2n symmetric PSD
  Matrix v;                // orthogonal, [V_o V_obar]
  Vector lambda;           // positive eigenvalues, descending, size 2n - l
  Index nullity = 0;       // l
  Index n = 0;
  Matrix a_obs;            // (2n-l) x (2n-l)
  Matrix a_cross;          // l x (2n-l)
  Matrix a_unobs;          // l x l
  Matrix c_obs;            // p x (2n-l)
  double lyapunov_residual = 0.0;
  double upper_block_residual = 0.0;   // ||V_o^T Abar V_obar||_F
  double unobs_output_residual = 0.0;  // ||Cbar V_obar||_F

  Matrix v_obs() const { return v.leftCols(lambda.size()); }
  Matrix v_unobs() const { return v.rightCols(nullity); }
  double lambda_max() const { return lambda.size() > 0 ? lambda(0) : 0.0; }
};

GramianDecomposition gramian(const AugmentedSystem& aug,
                             double nullity_tol = 1e-9);

/// Spectral certificate: lambda_max(Wbar) < eps^2 / (2 ||x0||^2) guarantees
/// the cumulative measurement error stays below eps. Sufficient only; the
/// exact error for a given x0 is error_norm().
struct EpsBound {
  bool certified = false;
  double margin = 0.0;  // eps^2/(2||x0||^2) - lambda_max
  double lambda_max = 0.0;
};

EpsBound check_eps_bound(const GramianDecomposition& gd, const Vector& x0,
                         double eps);

/// sqrt([x0; x0]^T Wbar [x0; x0]): the L2 norm of e(t) over [0, inf).
double error_norm(const GramianDecomposition& gd, const Vector& x0);

/// Range of error_norm over unit x0: [sqrt(lambda_min(M)), sqrt(lambda_max(M))]
/// for M = sum of the four n x n blocks of Wbar.
struct ErrorNormBracket {
  double lo = 0.0;
  double hi = 0.0;
};

ErrorNormBracket error_norm_bracket(const GramianDecomposition& gd);

/// Masked-l1 minimization with Wbar held fixed: the Lyapunov constraint
/// Wbar Abar + Abar^T Wbar = -Cbar^T Cbar becomes affine in Delta, and the
/// program reduces to an epigraph LP over that affine set. Requires a
/// feasible Wbar (typically from gramian(augment(sys, delta0))); if the
/// constant block of the constraint already fails, the set is empty and an
/// infeasible error is raised.
DissimilarResult solve_fixed_gramian_l1(
    const NetworkSystem& sys, const Matrix& wbar, const SparsityMask& z,
    double presence_threshold = kPresenceThreshold);

/// Free parameters of the fixed-Gramian family: all matrices Abar sharing a
/// given Gramian differ by a skew-symmetric S on the observable block and by
/// the two unobservable blocks.
struct FamilyParameters {
  Matrix skew;     // (2n-l) x (2n-l), S + S^T = 0
  Matrix a_cross;  // l x (2n-l)
  Matrix a_unobs;  // l x l
};

/// Parameters reproducing the decomposition's own Abar.
FamilyParameters family_extract(const GramianDecomposition& gd);

/// Assembles
///   -1/2 V_o L^-1 C_o^T C_o V_o^T + V_o L^-1/2 S L^1/2 V_o^T
///   + V_obar A_cross V_o^T + V_obar A_unobs V_obar^T,
/// which satisfies the Lyapunov equation for the decomposition's Wbar for
/// any skew S and free blocks.
Matrix family_reconstruct(const GramianDecomposition& gd,
                          const FamilyParameters& fp);

/// Reconstruction projected onto block-diagonal structure. Candidates with
/// small block_residual correspond to genuine network pairs.
struct BlockDiagProjection {
  Matrix abar;
  double block_residual = 0.0;  // Frobenius norm of the off-diagonal blocks
  Matrix a;                     // top-left n x n block
  Matrix a_perturbed;           // bottom-right n x n block
};

BlockDiagProjection family_project_blockdiag(const GramianDecomposition& gd,
                                             const FamilyParameters& fp);

/// Sampled output trajectories of the pair plus the running error.
struct TrajectoryTable {
  Vector t;
  Matrix y;       // steps x p
  Matrix ytilde;  // steps x p
  Matrix e;       // steps x p
  double cumulative_error_norm = 0.0;  // sqrt of trapezoidal int ||e||^2
};

TrajectoryTable simulate_pair(const NetworkSystem& sys, const Matrix& delta,
                              const Vector& x0, double horizon, double dt);

}  // namespace netid

#endif  // NETID_EPSCLOSE_HPP
