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

#ifndef NETID_TESTS_FIXTURES_HPP
#define NETID_TESTS_FIXTURES_HPP

#include "netid/model.hpp"

namespace netid::fixtures {

// Four-node network measured at node 1. Rank of the observability matrix is
// 2 and the nullspace is span{[0,-1,1,0], [0,0,0,1]}; the golden values in
// the tests (variant counts 6/6/6/4, masked-l1 optimum 3, 9 flips) follow.
inline NetworkSystem four_node() {
  Matrix a(4, 4);
  a << 1, 1, 1, 0,
       0, 1, 1, 0,
       1, 0, 0, 0,
       0, 1, 1, 1;
  Matrix c(1, 4);
  c << 1, 0, 0, 0;
  return {a, c};
}

// The five alternative first columns achievable for four_node(), plus the
// original, as printed weights.
inline std::vector<Vector> four_node_column1_variants() {
  std::vector<Vector> columns;
  auto push = [&](double x1, double x2, double x3, double x4) {
    Vector v(4);
    v << x1, x2, x3, x4;
    columns.push_back(v);
  };
  push(1, 0, 1, 0);  // original
  push(1, 1, 0, 0);
  push(1, 1, 0, 1);
  push(1, 2, -1, 0);
  push(1, 2, -1, 1);
  push(1, 0, 1, 1);
  return columns;
}

// Masked-l1 optimal network for four_node(): row 1 untouched, rows 2 and 3
// permuted, row 4 removed.
inline Matrix four_node_l1_optimum() {
  Matrix a(4, 4);
  a << 1, 1, 1, 0,
       1, 0, 0, 0,
       0, 1, 1, 0,
       0, 0, 0, 0;
  return a;
}

// Three-node Hurwitz network with one sensor and the published epsilon-close
// companion whose Gramian has sqrt(lambda_max) about 0.6487.
inline NetworkSystem three_node() {
  Matrix a(3, 3);
  a << -3, 1, 0,
        0, -3, 0,
        1, 0, -3;
  Matrix c(1, 3);
  c << 1, 0, 0;
  return {a, c};
}

inline Matrix three_node_perturbed() {
  Matrix a(3, 3);
  a << -2, 0, 0.1,
        0, 0, 0,
        0.833, 0, -2;
  return a;
}

inline Matrix three_node_delta() {
  return three_node_perturbed() - three_node().A;
}

}  // namespace netid::fixtures

#endif  // NETID_TESTS_FIXTURES_HPP
