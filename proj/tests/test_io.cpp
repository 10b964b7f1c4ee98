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

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "fixtures.hpp"
#include "netid/exporters.hpp"
#include "netid/io.hpp"

using namespace netid;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("netid-io-" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("system JSON round trip") {
  const NetworkSystem sys = fixtures::four_node();
  TempDir dir;
  save_system(sys, dir.file("sys.json"));
  const NetworkSystem loaded = load_system(dir.file("sys.json"));
  CHECK(loaded.A.isApprox(sys.A));
  CHECK(loaded.C.isApprox(sys.C));
}

TEST_CASE("system JSON accepts a measured-node list") {
  Json j;
  j["A"] = matrix_to_json(fixtures::four_node().A);
  j["measured"] = {0, 2};
  const NetworkSystem sys = system_from_json(j);
  CHECK(sys.p() == 2);
  CHECK(sys.C(0, 0) == 1.0);
  CHECK(sys.C(1, 2) == 1.0);
}

TEST_CASE("system JSON rejects malformed input") {
  TempDir dir;
  write_text_file(dir.file("broken.json"), "{\"A\": [[1, 2], [3]]");
  CHECK_THROWS_AS(load_system(dir.file("broken.json")), Error);
  try {
    load_system(dir.file("broken.json"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
  }

  write_text_file(dir.file("ragged.json"), "{\"A\": [[1, 2], [3]]}");
  CHECK_THROWS_AS(load_system(dir.file("ragged.json")), Error);

  write_text_file(dir.file("nan.json"),
                  "{\"A\": [[1, 2], [3, 4]], \"measured\": [0]}");
  CHECK_NOTHROW(load_system(dir.file("nan.json")));
}

TEST_CASE("matrix CSV round trip and parse errors") {
  Matrix m(2, 3);
  m << 1.5, -2.25, 3e-7,
       0.0, 14.0, -1.0 / 3.0;
  TempDir dir;
  write_text_file(dir.file("m.csv"), matrix_to_csv(m));
  const Matrix loaded = load_matrix_csv(dir.file("m.csv"));
  CHECK(loaded.isApprox(m, 0.0));  // shortest round-trip formatting is exact

  write_text_file(dir.file("bad.csv"), "1,2\n3,oops\n");
  CHECK_THROWS_AS(load_matrix_csv(dir.file("bad.csv")), Error);
  write_text_file(dir.file("ragged.csv"), "1,2\n3\n");
  CHECK_THROWS_AS(load_matrix_csv(dir.file("ragged.csv")), Error);
}

TEST_CASE("format_double is locale-independent and stable") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-3.25) == "-3.25");
  CHECK(format_double(1.0 / 3.0) == format_double(1.0 / 3.0));
  const std::string small = format_double(1e-7);
  const bool plain_decimal = small.find('.') != std::string::npos;
  const bool scientific = small.find('e') != std::string::npos;
  CHECK((plain_decimal || scientific));
}

TEST_CASE("dissimilar result serialization includes flips and certificate") {
  const NetworkSystem sys = fixtures::four_node();
  const ObservabilityAnalysis an = analyze(sys);
  const DissimilarResult result = solve_l1(sys, an, sparsity_mask(sys.A));
  const Json j = dissimilar_result_to_json(result);
  CHECK(j.at("objective").get<double>() == doctest::Approx(3.0));
  CHECK(j.at("flipped_edges").at("count").get<int>() == 9);
  CHECK(j.at("flipped_edges").at("indexing") == "1-based");
  CHECK(j.at("certificate").at("l2_equals_l1").get<bool>());
  CHECK(j.at("network").size() == 4);
}

TEST_CASE("experiment config parsing accepts single and multiple ensembles") {
  const std::string single = R"({
    "ensemble": {"model": "ER", "n": 12, "p_edge": 0.2},
    "measured_counts": [1, 2],
    "trials": 3,
    "seed": 7
  })";
  ExperimentConfig cfg = experiment_config_from_json(Json::parse(single));
  CHECK(cfg.ensembles.size() == 1);
  CHECK(cfg.trials == 3);

  const std::string both = R"({
    "ensembles": [
      {"model": "ER", "n": 12, "p_edge": 0.2},
      {"model": "WS", "n": 12, "K": 3, "beta": 0.05}
    ],
    "measured_counts": [1],
    "trials": 1
  })";
  cfg = experiment_config_from_json(Json::parse(both));
  CHECK(cfg.ensembles.size() == 2);
  CHECK(cfg.ensembles[1].model == GraphModel::watts_strogatz);
}

TEST_CASE("trajectory CSV has the expected header and rows") {
  const NetworkSystem sys = fixtures::three_node();
  const TrajectoryTable table =
      simulate_pair(sys, Matrix::Zero(3, 3), Vector::Unit(3, 0), 1.0, 0.25);
  const std::string csv = trajectory_csv(table);
  CHECK(csv.rfind("t,y1,ytilde1,e1\n", 0) == 0);
  // header + 5 samples (t = 0, .25, .5, .75, 1.0)
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("dot export marks measured nodes dashed") {
  const NetworkSystem sys = fixtures::four_node();
  const std::string dot = to_dot(sys.A, measured_nodes(sys.C), "original");
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("1 [style=dashed, color=blue];") != std::string::npos);
  CHECK(dot.find("2 -> 1") != std::string::npos);  // A(0,1) = 1: edge 2 -> 1
  CHECK(dot.find("4 -> 4") != std::string::npos);  // self loop A(3,3)
  CHECK(dot.find("2 [style=dashed") == std::string::npos);
}

TEST_CASE("svg plots are self contained") {
  std::vector<double> x{0.0, 1.0, 2.0};
  PlotSeries s;
  s.label = "demo";
  s.y = {1.0, 0.5, 0.25};
  const std::string svg = svg_line_plot("demo", "x", "y", x, {s});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);  // no external assets
}
