# Copyright 2026 The netid Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Identifiability analysis of partially measured linear network systems."""

from ._netid import (  # noqa: F401
    NetidError,
    PRESENCE_THRESHOLD,
    __version__,
    analyze,
    check_eps_bound,
    classify_edges,
    column_variants,
    count_structural_networks,
    error_norm,
    expm,
    expm_apply,
    flip_metric,
    generate_er,
    generate_ws,
    gramian,
    run_experiment,
    sensor_matrix,
    simulate_pair,
    solve_dissimilar,
    solve_fixed_gramian,
    solve_l2,
    solve_lyapunov,
    sparsity_mask,
    svd_nullspace,
    verify_indistinguishable,
)

__all__ = [
    "NetidError",
    "PRESENCE_THRESHOLD",
    "analyze",
    "check_eps_bound",
    "classify_edges",
    "column_variants",
    "count_structural_networks",
    "error_norm",
    "expm",
    "expm_apply",
    "flip_metric",
    "generate_er",
    "generate_ws",
    "gramian",
    "run_experiment",
    "sensor_matrix",
    "simulate_pair",
    "solve_dissimilar",
    "solve_fixed_gramian",
    "solve_l2",
    "solve_lyapunov",
    "sparsity_mask",
    "svd_nullspace",
    "verify_indistinguishable",
]
