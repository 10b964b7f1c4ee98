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

#ifndef NETID_IO_HPP
#define NETID_IO_HPP

#include <string>

#include <json.hpp>

#include "netid/epsclose.hpp"
#include "netid/experiment.hpp"

namespace netid {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal formatting, '.'-decimal, locale independent.
std::string format_double(double value);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& name);

/// System files are JSON objects {"n": ..., "p": ..., "A": [[...]], "C": [[...]]}.
/// "C" may be replaced by "measured": [zero-based node indices].
NetworkSystem load_system(const std::string& path);
NetworkSystem system_from_json(const Json& j);
Json system_to_json(const NetworkSystem& sys);
void save_system(const NetworkSystem& sys, const std::string& path);

/// Square matrix from a JSON file holding either a bare array-of-rows or an
/// object with a matrix under `key`.
Matrix load_matrix_json(const std::string& path, const std::string& key = "Delta");

/// RFC-4180-style numeric CSV, one matrix row per line.
Matrix load_matrix_csv(const std::string& path);
std::string matrix_to_csv(const Matrix& m);

/// Flipped edges are serialized 1-based to match the usual node numbering
/// in figures; the payload says so explicitly.
Json flips_to_json(const FlipMetric& flips);
Json dissimilar_result_to_json(const DissimilarResult& result);
Json classification_to_json(const EdgeClassification& classes);
Json variants_to_json(const ColumnVariantSet& variants);

ExperimentConfig experiment_config_from_json(const Json& j);
ExperimentConfig load_experiment_config(const std::string& path);

Json family_sample_to_json(const FamilyParameters& fp,
                           const BlockDiagProjection& proj);

std::string trajectory_csv(const TrajectoryTable& table);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace netid

#endif  // NETID_IO_HPP
