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

#include "netid/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace netid {

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  require(ec == std::errc(), ErrorCode::io_error, "double formatting failed");
  return std::string(buffer, ptr);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& name) {
  require(j.is_array() && !j.empty(), ErrorCode::parse_error,
          name + " must be a non-empty array of rows");
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  require(cols > 0, ErrorCode::parse_error,
          name + " rows must be non-empty arrays");
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& row = j.at(i);
    require(row.is_array() && row.size() == cols, ErrorCode::parse_error,
            name + " row " + std::to_string(i) + " has inconsistent length");
    for (std::size_t c = 0; c < cols; ++c) {
      require(row.at(c).is_number(), ErrorCode::parse_error,
              name + " entries must be numbers");
      m(static_cast<Index>(i), static_cast<Index>(c)) = row.at(c).get<double>();
    }
  }
  require_finite(m, name);
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io_error, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io_error, "cannot write " + path);
  out << content;
  require(out.good(), ErrorCode::io_error, "write failed for " + path);
}

namespace {

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::parse_error, origin + ": " + ex.what());
  }
}

}  // namespace

NetworkSystem system_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse_error,
          "system file must be a JSON object");
  require(j.contains("A"), ErrorCode::parse_error, "system is missing \"A\"");
  NetworkSystem sys;
  sys.A = matrix_from_json(j.at("A"), "A");
  require(sys.A.rows() == sys.A.cols(), ErrorCode::parse_error,
          "A must be square");
  if (j.contains("n")) {
    require(j.at("n").get<Index>() == sys.A.rows(), ErrorCode::parse_error,
            "declared n does not match A");
  }
  if (j.contains("C")) {
    sys.C = matrix_from_json(j.at("C"), "C");
  } else if (j.contains("measured")) {
    std::vector<Index> measured;
    for (const auto& node : j.at("measured")) {
      measured.push_back(node.get<Index>());
    }
    sys.C = sensor_matrix(sys.A.rows(), measured);
  } else {
    throw Error(ErrorCode::parse_error,
                "system needs either \"C\" or \"measured\"");
  }
  if (j.contains("p")) {
    require(j.at("p").get<Index>() == sys.C.rows(), ErrorCode::parse_error,
            "declared p does not match C");
  }
  sys.validate();
  return sys;
}

NetworkSystem load_system(const std::string& path) {
  return system_from_json(parse_json(read_text_file(path), path));
}

Json system_to_json(const NetworkSystem& sys) {
  Json j;
  j["n"] = sys.n();
  j["p"] = sys.p();
  j["A"] = matrix_to_json(sys.A);
  j["C"] = matrix_to_json(sys.C);
  return j;
}

void save_system(const NetworkSystem& sys, const std::string& path) {
  write_text_file(path, system_to_json(sys).dump(2) + "\n");
}

Matrix load_matrix_json(const std::string& path, const std::string& key) {
  const Json j = parse_json(read_text_file(path), path);
  if (j.is_array()) return matrix_from_json(j, path);
  require(j.is_object() && j.contains(key), ErrorCode::parse_error,
          path + " must be a matrix or an object with \"" + key + "\"");
  return matrix_from_json(j.at(key), key);
}

Matrix load_matrix_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        require(used == field.size() || field.find_first_not_of(' ', used) ==
                                            std::string::npos,
                ErrorCode::parse_error, "trailing junk in numeric field");
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        throw Error(ErrorCode::parse_error,
                    path + ":" + std::to_string(line_no) +
                        ": cannot parse \"" + field + "\" as a number");
      }
    }
    if (!rows.empty()) {
      require(row.size() == rows.front().size(), ErrorCode::parse_error,
              path + ":" + std::to_string(line_no) +
                  ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), ErrorCode::parse_error, path + " is empty");
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  require_finite(m, path);
  return m;
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

Json flips_to_json(const FlipMetric& flips) {
  Json j;
  j["indexing"] = "1-based";
  Json edges = Json::array();
  for (const auto& edge : flips.flipped) {
    Json e;
    e["i"] = edge.i + 1;
    e["j"] = edge.j + 1;
    e["change"] = edge.added ? "added" : "removed";
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  j["count"] = flips.flipped.size();
  j["percentage_of_n2"] = flips.percentage;
  return j;
}

Json dissimilar_result_to_json(const DissimilarResult& result) {
  Json j;
  j["objective"] = result.objective;
  j["Delta"] = matrix_to_json(result.delta);
  j["network"] = matrix_to_json(result.network);
  j["flipped_edges"] = flips_to_json(result.flips);
  if (result.certificate) {
    j["certificate"] = {{"l2_equals_l1", result.certificate->l2_equals_l1},
                        {"certificate_residual", result.certificate->residual}};
  }
  j["feasibility_residual"] = result.feasibility_residual;
  if (result.lyapunov_residual) {
    j["lyapunov_residual"] = *result.lyapunov_residual;
  }
  return j;
}

Json classification_to_json(const EdgeClassification& classes) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < classes.row_labels.size(); ++i) {
    Json row;
    row["row"] = i + 1;
    row["label"] = to_string(classes.row_labels[i]);
    row["essential_residual"] = classes.essential_residual(static_cast<Index>(i));
    row["decoupled_residual"] = classes.decoupled_residual(static_cast<Index>(i));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json variants_to_json(const ColumnVariantSet& variants) {
  Json j;
  j["column"] = variants.column + 1;
  j["count"] = variants.count();
  Json list = Json::array();
  for (const auto& variant : variants.variants) {
    Json v;
    Json support = Json::array();
    for (Index i = 0; i < variant.witness.size(); ++i) {
      support.push_back((variant.support >> i) & 1ULL ? 1 : 0);
    }
    v["support"] = std::move(support);
    Json witness = Json::array();
    for (Index i = 0; i < variant.witness.size(); ++i) {
      witness.push_back(variant.witness(i));
    }
    v["witness"] = std::move(witness);
    list.push_back(std::move(v));
  }
  j["variants"] = std::move(list);
  return j;
}

namespace {

GraphEnsembleConfig ensemble_from_json(const Json& j) {
  GraphEnsembleConfig cfg;
  require(j.is_object() && j.contains("model"), ErrorCode::parse_error,
          "ensemble needs a \"model\" field");
  const std::string model = j.at("model").get<std::string>();
  if (model == "ER" || model == "er" || model == "erdos-renyi") {
    cfg.model = GraphModel::erdos_renyi;
  } else if (model == "WS" || model == "ws" || model == "watts-strogatz") {
    cfg.model = GraphModel::watts_strogatz;
  } else {
    throw Error(ErrorCode::parse_error, "unknown ensemble model " + model);
  }
  require(j.contains("n"), ErrorCode::parse_error, "ensemble needs \"n\"");
  cfg.n = j.at("n").get<Index>();
  if (j.contains("p_edge")) cfg.p_edge = j.at("p_edge").get<double>();
  if (j.contains("K")) cfg.k_neighbors = j.at("K").get<Index>();
  if (j.contains("beta")) cfg.beta = j.at("beta").get<double>();
  if (j.contains("label")) cfg.label = j.at("label").get<std::string>();
  cfg.validate();
  return cfg;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const Json& j) {
  require(j.is_object(), ErrorCode::parse_error,
          "experiment config must be a JSON object");
  ExperimentConfig cfg;
  if (j.contains("ensembles")) {
    for (const auto& e : j.at("ensembles")) {
      cfg.ensembles.push_back(ensemble_from_json(e));
    }
  } else if (j.contains("ensemble")) {
    cfg.ensembles.push_back(ensemble_from_json(j.at("ensemble")));
  } else {
    throw Error(ErrorCode::parse_error,
                "experiment config needs \"ensemble\" or \"ensembles\"");
  }
  require(j.contains("measured_counts"), ErrorCode::parse_error,
          "experiment config needs \"measured_counts\"");
  for (const auto& c : j.at("measured_counts")) {
    cfg.measured_counts.push_back(c.get<Index>());
  }
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("presence_threshold")) {
    cfg.presence_threshold = j.at("presence_threshold").get<double>();
  }
  if (j.contains("rank_tol")) cfg.rank_tol = j.at("rank_tol").get<double>();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config_from_json(parse_json(read_text_file(path), path));
}

Json family_sample_to_json(const FamilyParameters& fp,
                           const BlockDiagProjection& proj) {
  Json j;
  j["S"] = matrix_to_json(fp.skew);
  j["A21"] = matrix_to_json(fp.a_cross);
  j["Aobar"] = matrix_to_json(fp.a_unobs);
  j["block_residual"] = proj.block_residual;
  j["A"] = matrix_to_json(proj.a);
  j["Aperturbed"] = matrix_to_json(proj.a_perturbed);
  return j;
}

std::string trajectory_csv(const TrajectoryTable& table) {
  std::ostringstream out;
  const Index p = table.y.cols();
  out << "t";
  for (Index k = 0; k < p; ++k) out << ",y" << (k + 1);
  for (Index k = 0; k < p; ++k) out << ",ytilde" << (k + 1);
  for (Index k = 0; k < p; ++k) out << ",e" << (k + 1);
  out << '\n';
  for (Index s = 0; s < table.t.size(); ++s) {
    out << format_double(table.t(s));
    for (Index k = 0; k < p; ++k) out << ',' << format_double(table.y(s, k));
    for (Index k = 0; k < p; ++k) {
      out << ',' << format_double(table.ytilde(s, k));
    }
    for (Index k = 0; k < p; ++k) out << ',' << format_double(table.e(s, k));
    out << '\n';
  }
  return out.str();
}

}  // namespace netid
