// Copyright 2026 The ccsmoea Authors.
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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "ccsmoea/errors.hpp"
#include "ccsmoea/experiment.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace ccsmoea;

namespace {

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag)
      : path_(fs::temp_directory_path() / ("ccsmoea_test_" + tag)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string toy_spec(const fs::path& out, int runs = 2, const std::string& extra = "") {
  return "{\n"
         "  // toy grid\n"
         "  \"instances\": [{\"name\": \"s10\", \"path\": \"" + testing::data_path("synth10.txt").string() +
         "\", \"frontier\": \"" + testing::data_path("synth10_front.txt").string() + "\"}],\n"
         "  \"constraints\": {\"cardinality\": 5, \"floor\": 0.01, \"lot\": 0.008, \"preassigned\": [10]},\n"
         "  \"algorithms\": [\"CCS/MOEAD\", \"DCS/NSGA2\", {\"scheme\": \"CCS\", \"backend\": \"SMSEMOA\"}],\n"
         "  \"runs\": " + std::to_string(runs) + ",\n" + extra +
         "  \"parameters\": {\"np\": 12, \"generations\": 15},\n"
         "  \"output\": \"" + out.string() + "\"\n}\n";
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = read_text_file(e.path());
  }
  return files;
}

Validation validated(const std::string& text) {
  return validate_spec(parse_experiment_spec(text, fs::current_path()));
}

}  // namespace

TEST_CASE("absent parameters take the standard defaults") {
  ScratchDir dir("defaults");
  const std::string text = "{\"instances\": [\"" + testing::data_path("synth31.txt").string() +
                           "\"], \"algorithms\": [\"CCS/MOEAD\"]}";
  const Validation v = validated(text);
  REQUIRE(v.ok());
  const RunConfig& c = v.spec.base_config;
  CHECK(c.np == 100);
  CHECK(c.generations == 1000);
  CHECK(c.operators.f == 0.5);
  CHECK(c.operators.cr == 0.9);
  CHECK(c.operators.eta_m == 20.0);
  CHECK(c.operators.p_m == 0.01);
  CHECK(c.moead.neighborhood == 10);
  CHECK(c.moead.p_delta == 0.1);
  CHECK(c.moead.replacement == 2);
  CHECK(v.spec.runs == 20);
  CHECK(v.spec.constraints.label == "i");
  CHECK(v.spec.instances.front().name == "synth31");
  // No frontier: a warning, not an error.
  CHECK(v.warnings.size() == 1);
}

TEST_CASE("validation collects every error") {
  ScratchDir dir("errors");
  const Validation zero = validated(toy_spec(dir.path(), 0));
  CHECK_FALSE(zero.ok());
  CHECK(std::any_of(zero.errors.begin(), zero.errors.end(),
                    [](const std::string& e) { return e.find("runs") != std::string::npos; }));

  const fs::path twenty = dir.path() / "twenty.txt";
  std::ofstream(twenty) << serialize_orlibrary(testing::random_instance(20, 4));
  const Validation bounds = validated("{\"instances\": [\"" + twenty.string() +
                                      "\"], \"constraints\": \"i\", \"algorithms\": [\"CCS/MOEAD\"]}");
  REQUIRE(bounds.errors.size() == 1);
  CHECK(bounds.errors[0].find("twenty") != std::string::npos);
  CHECK(bounds.errors[0].find("30") != std::string::npos);

  const Validation many = validated(
      "{\"instances\": [\"/nonexistent/port9.txt\"], \"algorithms\": [\"CCS/MOEAD\", \"CCS/MOEAD\"],"
      " \"runs\": 0, \"parameters\": {\"np\": 3}}");
  CHECK(many.errors.size() == 4);

  CHECK_THROWS_AS(parse_experiment_spec("{\"instnces\": []}", "."), ConfigError);
  CHECK_THROWS_AS(parse_experiment_spec("{\"parameters\": {\"mutation\": 1}}", "."), ConfigError);
  CHECK_THROWS_AS(parse_experiment_spec("{\"algorithms\": [\"CCS/GA\"]}", "."), ConfigError);
  CHECK_THROWS_AS(parse_experiment_spec("{\"constraints\": \"iii\"}", "."), ConfigError);
  CHECK_THROWS_AS(parse_experiment_spec("{", "."), ConfigError);
}

TEST_CASE("constraint set (ii) and pre-assignment bounds") {
  const ConstraintSet c = ConstraintSpec::set_ii().build(31, "x");
  CHECK(c.cardinality() == 15);
  CHECK(c.preassigned(4));
  CHECK(c.n_preassigned() == 1);
  CHECK_THROWS_WITH_AS(ConstraintSpec::set_i().build(20, "tiny"),
                       "instance 'tiny': pre-assigned asset 30 outside [1, 20]", ConfigError);
}

TEST_CASE("per-run seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (const char* inst : {"D1", "D2", "D3"})
    for (const char* alg : {"CCS-MOEAD", "DCS-MOEAD", "CCS-NSGA2"})
      for (std::size_t r = 0; r < 20; ++r) seen.insert(run_seed(1, inst, alg, r));
  CHECK(seen.size() == 180);
  CHECK(run_seed(1, "D1", "CCS-MOEAD", 0) == run_seed(1, "D1", "CCS-MOEAD", 0));
  CHECK(run_seed(1, "D1", "CCS-MOEAD", 0) != run_seed(2, "D1", "CCS-MOEAD", 0));
}

TEST_CASE("config hash ignores output location and workers") {
  ScratchDir dir("hash");
  Validation a = validated(toy_spec(dir.path() / "a"));
  Validation b = validated(toy_spec(dir.path() / "b", 2, "  \"workers\": 3,\n"));
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(config_hash(a.spec) == config_hash(b.spec));
  Validation c = validated(toy_spec(dir.path() / "a", 3));
  CHECK(config_hash(a.spec) != config_hash(c.spec));
  CHECK(config_hash(a.spec).size() == 16);
}

TEST_CASE("one run of one algorithm") {
  ScratchDir dir("single");
  const std::string text =
      "{\"instances\": [{\"path\": \"" + testing::data_path("synth10.txt").string() + "\", \"frontier\": \"" +
      testing::data_path("synth10_front.txt").string() +
      "\"}], \"constraints\": {\"cardinality\": 5, \"lot\": 0.008, \"floor\": 0.01}, "
      "\"algorithms\": [\"CCS/MOEAD\"], \"runs\": 1, \"parameters\": {\"np\": 10, \"generations\": 5}, "
      "\"output\": \"" + (dir.path() / "out").string() + "\"}";
  const Validation v = validated(text);
  REQUIRE(v.ok());
  const ExperimentReport rep = run_experiment(v.spec);
  CHECK(rep.runs_executed == 1);
  CHECK(rep.metrics.size() == 1);
  std::size_t fronts = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir.path() / "out" / "synth10"))
    fronts += e.path().filename() == "run_00.csv";
  CHECK(fronts == 1);
  CHECK(read_metrics_csv(dir.path() / "out" / "metrics.csv").size() == 1);
}

TEST_CASE("result trees are reproducible") {
  ScratchDir dir("determinism");
  Validation a = validated(toy_spec(dir.path() / "one"));
  Validation b = validated(toy_spec(dir.path() / "two", 2, "  \"workers\": 2,\n"));
  REQUIRE(a.ok());
  run_experiment(a.spec);
  run_experiment(b.spec);
  const auto x = snapshot(dir.path() / "one");
  const auto y = snapshot(dir.path() / "two");
  CHECK(x.size() == y.size());
  CHECK(x == y);
  CHECK(x.count("metrics.csv") == 1);
  CHECK(x.count("summary_igd.csv") == 1);
  CHECK(x.count("compare_ih.csv") == 1);
  CHECK(x.count("plots/s10.gp") == 1);
  CHECK(x.count("s10/CCS-SMSEMOA/run_01_population.csv") == 1);
}

TEST_CASE("summaries and metrics round-trip through the files") {
  ScratchDir dir("roundtrip");
  const Validation v = validated(toy_spec(dir.path() / "out", 3));
  REQUIRE(v.ok());
  const ExperimentReport rep = run_experiment(v.spec);
  const fs::path out = dir.path() / "out";
  const auto before = snapshot(out);
  summarize_results(out);
  CHECK(snapshot(out) == before);

  // IGD recomputed from a front file.
  const ReferenceFront ref = load_frontier(testing::data_path("synth10_front.txt"));
  std::vector<Point2> rpts;
  for (const auto& p : ref.points) rpts.push_back(to_point(p));
  const FrontNormalizer norm(rpts);
  std::istringstream in(read_text_file(out / "s10" / "DCS-NSGA2" / "run_02.csv"));
  std::string line;
  std::vector<Point2> obtained;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("risk", 0) == 0) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double risk = std::stod(line.substr(0, c1));
    const double ret = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    obtained.push_back(norm(Point2{risk, -ret}));
  }
  const auto row = std::find_if(rep.metrics.begin(), rep.metrics.end(), [](const MetricRow& r) {
    return r.algorithm == "DCS-NSGA2" && r.run == 2;
  });
  REQUIRE(row != rep.metrics.end());
  CHECK(igd(obtained, norm(rpts)) == row->igd);
  CHECK(ih(obtained, norm(rpts)) == row->ih);
}

TEST_CASE("missing frontier skips metrics but keeps fronts") {
  ScratchDir dir("nofront");
  const std::string text =
      "{\"instances\": [{\"name\": \"s10\", \"path\": \"" + testing::data_path("synth10.txt").string() +
      "\", \"frontier\": \"" + (dir.path() / "absent.txt").string() +
      "\"}], \"constraints\": {\"cardinality\": 5, \"lot\": 0.008}, \"algorithms\": [\"CCS/NSGA2\"], "
      "\"runs\": 1, \"parameters\": {\"np\": 10, \"generations\": 3}, \"output\": \"" +
      (dir.path() / "out").string() + "\"}";
  const Validation v = validated(text);
  REQUIRE(v.ok());
  CHECK(v.warnings.size() == 1);
  const ExperimentReport rep = run_experiment(v.spec);
  CHECK(rep.metrics.empty());
  CHECK(fs::exists(dir.path() / "out" / "s10" / "CCS-NSGA2" / "run_00.csv"));
}

TEST_CASE("summary table layout") {
  std::vector<MetricRow> rows;
  const std::vector<std::string> algs{"DCS-MOEAD", "CCS-MOEAD", "DCS-NSGA2",
                                      "CCS-NSGA2", "DCS-SMSEMOA", "CCS-SMSEMOA"};
  for (std::size_t a = 0; a < algs.size(); ++a)
    for (std::size_t r = 0; r < 3; ++r)
      rows.push_back({"D1", algs[a], r, r, 0.25 * (a + 1) + 0.125 * (double(r) - 1.0), 0.5});
  const std::string t = summary_table(rows, "igd");
  std::istringstream in(t);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "# ccsmoea summary v1 indicator=igd");
  CHECK(lines[1] == "instance,statistic,DCS-MOEAD,CCS-MOEAD,DCS-NSGA2,CCS-NSGA2,DCS-SMSEMOA,CCS-SMSEMOA");
  CHECK(lines[2] == "D1,Mean,0.25,0.5,0.75,1,1.25,1.5");
  CHECK(lines[3] == "D1,Std,0.125,0.125,0.125,0.125,0.125,0.125");
  CHECK(lines[4] == "D1,Rank,1,2,3,4,5,6");
  CHECK(lines[5] == "MeanRank,,1,2,3,4,5,6");
}

TEST_CASE("pairwise comparison counts") {
  // A worse than B on four instances and indistinguishable on one.
  std::vector<MetricRow> rows;
  for (int d = 1; d <= 5; ++d) {
    for (std::size_t r = 0; r < 20; ++r) {
      const double noise = 0.0001 * static_cast<double>(r);
      const double a = d == 5 ? 0.01 + noise : 0.02 + noise;
      rows.push_back({"D" + std::to_string(d), "DCS-MOEAD", r, r, a, a});
      rows.push_back({"D" + std::to_string(d), "CCS-MOEAD", r, r, 0.01 + noise, 0.01 + noise});
    }
  }
  const std::string t = comparison_table(rows, "igd");
  CHECK(t.find("DCS-MOEAD,CCS-MOEAD,-,-,-,-,=,0/4/1\n") != std::string::npos);
  CHECK(t.find("CCS-MOEAD,DCS-MOEAD,+,+,+,+,=,4/0/1\n") != std::string::npos);
}

TEST_CASE("portfolio rows") {
  const Portfolio p{{0, 1, 0, 1}, {0, 29, 0, 96}, 125};
  CHECK(portfolio_csv(p) == "# ccsmoea portfolio v1\nasset,lots,weight\n2,29,0.232\n4,96,0.768\n");
}
