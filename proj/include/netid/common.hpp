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

#ifndef NETID_COMMON_HPP
#define NETID_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace netid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default threshold above which a weight counts as a present edge.
inline constexpr double kPresenceThreshold = 1e-5;

enum class ErrorCode {
  invalid_input,
  parse_error,
  gramian_undefined,
  enumeration_too_large,
  solver_error,
  infeasible,
  io_error,
};

const char* to_string(ErrorCode code);

/// All library errors carry a stable machine-readable code; the CLI maps
/// them to single-line diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

void require_finite(const Matrix& m, const std::string& name);

/// splitmix64 step; also used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stream seed derivation: deterministic, independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Small deterministic RNG (splitmix64 + Box-Muller). Not shared global
/// state: every generator and experiment trial owns one.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal draw.
  double normal();

  /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Vector of standard normal draws.
  Vector normal_vector(Index n);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace netid

#endif  // NETID_COMMON_HPP
