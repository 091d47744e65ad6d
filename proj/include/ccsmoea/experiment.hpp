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

#ifndef CCSMOEA_EXPERIMENT_HPP_
#define CCSMOEA_EXPERIMENT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccsmoea/encoding.hpp"
#include "ccsmoea/moea.hpp"
#include "ccsmoea/problem.hpp"

namespace ccsmoea {

// Constraint family applied to every instance of an experiment.
struct ConstraintSpec {
  std::string label = "i";  // "i", "ii" or "custom"
  std::size_t cardinality = 10;
  double floor = 0.01;
  double ceiling = 1.0;
  double lot = 0.008;
  std::vector<std::size_t> preassigned{30};  // 1-based asset numbers

  static ConstraintSpec set_i();   // K = 10, z_30 = 1
  static ConstraintSpec set_ii();  // K = 15, z_5 = 1

  // Throws ConfigError naming the instance when an asset number exceeds N.
  ConstraintSet build(std::size_t n_assets, std::string_view instance_name) const;
};

struct AlgorithmSpec {
  Scheme scheme = Scheme::kCcs;
  Backend backend = Backend::kMoead;

  std::string label() const;  // e.g. "CCS-MOEAD"
  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

// Optional overrides; absent fields take the defaults (NP = 100, 1000
// generations, F = 0.5, CR = 0.9, eta_m = 20, p_m = 1/NP, T = 10,
// p_delta = 0.1, T_r = 2, uniform operator weights).
struct ParameterOverrides {
  std::optional<std::size_t> np;
  std::optional<std::size_t> generations;
  std::optional<double> f;
  std::optional<double> cr;
  std::optional<double> eta_m;
  std::optional<double> p_m;
  std::optional<std::size_t> neighborhood;
  std::optional<double> p_delta;
  std::optional<std::size_t> replacement;
  std::optional<std::array<double, 3>> op_weights;
};

struct InstanceSpec {
  std::string name;
  std::filesystem::path path;
  std::optional<std::filesystem::path> frontier;
};

struct ExperimentSpec {
  std::vector<InstanceSpec> instances;
  ConstraintSpec constraints;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t runs = 20;
  std::uint64_t base_seed = 1;
  ParameterOverrides parameters;
  std::filesystem::path output = "results";
  std::size_t workers = 1;

  // Resolved after validation.
  RunConfig base_config;
};

// Reads the JSON experiment file. Relative paths resolve against
// `base_dir`. Throws ConfigError on malformed JSON or unknown keys.
ExperimentSpec parse_experiment_spec(std::string_view json_text,
                                     const std::filesystem::path& base_dir);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct Validation {
  ExperimentSpec spec;  // with defaults filled in
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Checks every invariant and fills the defaults; collects all errors.
Validation validate_spec(ExperimentSpec spec);

// Per-run seed: base_seed xor a hash of (instance, algorithm, run).
std::uint64_t run_seed(std::uint64_t base_seed, std::string_view instance,
                       std::string_view algorithm, std::size_t run);

// FNV-1a of the experiment's canonical JSON (output directory and worker count
// excluded).
std::string config_hash(const ExperimentSpec& spec);

struct MetricRow {
  std::string instance;
  std::string algorithm;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  double igd = 0.0;
  double ih = 0.0;
};

struct ExperimentReport {
  std::vector<MetricRow> metrics;
  std::vector<std::string> warnings;
  std::size_t runs_executed = 0;
};

// Executes every (instance, algorithm, run) and writes the result tree:
//   <out>/<instance>/<algorithm>/run_<r>.csv             archive front
//   <out>/<instance>/<algorithm>/run_<r>_population.csv  final population
//   <out>/metrics.csv, summary_{igd,ih}.csv, compare_{igd,ih}.csv
//   <out>/plots/<instance>.gp
// `spec` must have passed validate_spec.
ExperimentReport run_experiment(const ExperimentSpec& spec);

// CSV row text for one front file (header included).
std::string front_csv(const std::vector<Individual>& members, std::uint64_t seed,
                      std::string_view hash, std::string_view kind);

// Asset, lots, weight rows for one portfolio (1-based assets, held only).
std::string portfolio_csv(const Portfolio& p);

void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricRow>& rows);
std::vector<MetricRow> read_metrics_csv(const std::filesystem::path& path);

// Mean / Std / Rank rows per instance and a MeanRank row, one column per
// algorithm, for the chosen indicator ("igd" or "ih").
std::string summary_table(const std::vector<MetricRow>& rows, std::string_view indicator);

// Pairwise rank-sum outcomes: per-instance symbols and "+/-/=" counts for
// every ordered algorithm pair.
std::string comparison_table(const std::vector<MetricRow>& rows, std::string_view indicator);

// Rewrites the summary and comparison files of a result tree from its
// metrics.csv.
void summarize_results(const std::filesystem::path& out_dir);

}  // namespace ccsmoea

#endif  // CCSMOEA_EXPERIMENT_HPP_
