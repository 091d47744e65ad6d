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

// Batch experiment runner.
//
//   ccsmoea validate  --config exp.json
//   ccsmoea run       --config exp.json [--out DIR] [--workers N] [--seed S]
//   ccsmoea summarize --out DIR
//   ccsmoea compare   --out DIR [--indicator igd|ih]

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ccsmoea/experiment.hpp"
#include "ccsmoea/instance.hpp"
#include "ccsmoea/metrics.hpp"

namespace fs = std::filesystem;
using namespace ccsmoea;

namespace {

int report_validation(const Validation& v) {
  for (const auto& w : v.warnings) fmt::print(stderr, "warning: {}\n", w);
  for (const auto& e : v.errors) fmt::print(stderr, "error: {}\n", e);
  return v.ok() ? EXIT_SUCCESS : EXIT_FAILURE;
}

void print_resolved(const ExperimentSpec& s) {
  const RunConfig& c = s.base_config;
  fmt::print("instances:");
  for (const auto& i : s.instances) fmt::print(" {}", i.name);
  fmt::print("\nalgorithms:");
  for (const auto& a : s.algorithms) fmt::print(" {}", a.label());
  fmt::print("\nconstraints: {} (K={}, floor={}, ceiling={}, lot={})\n", s.constraints.label,
             s.constraints.cardinality, s.constraints.floor, s.constraints.ceiling, s.constraints.lot);
  fmt::print("runs={} base_seed={} workers={}\n", s.runs, s.base_seed, s.workers);
  fmt::print("NP={} generations={} F={} CR={} eta_m={} p_m={} T={} p_delta={} T_r={}\n", c.np,
             c.generations, c.operators.f, c.operators.cr, c.operators.eta_m, c.operators.p_m,
             c.moead.neighborhood, c.moead.p_delta, c.moead.replacement);
  fmt::print("config hash: {}\n", config_hash(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed-coding MOEAs for constrained portfolio optimization"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::size_t workers = 0;
  std::uint64_t seed = 0;
  std::string indicator = "igd";

  auto* validate = app.add_subcommand("validate", "Check an experiment file and print resolved settings");
  validate->add_option("--config", config, "Experiment JSON file")->required()->check(CLI::ExistingFile);

  auto* run_cmd = app.add_subcommand("run", "Execute every run of an experiment and write the result tree");
  run_cmd->add_option("--config", config, "Experiment JSON file")->required()->check(CLI::ExistingFile);
  auto* out_opt = run_cmd->add_option("--out", out, "Output directory (overrides the file)");
  auto* workers_opt = run_cmd->add_option("--workers", workers, "Parallel runs")->check(CLI::PositiveNumber);
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Base seed (overrides the file)");

  auto* summarize = app.add_subcommand("summarize", "Rebuild summary tables from metrics.csv");
  summarize->add_option("--out", out, "Result directory")->required()->check(CLI::ExistingDirectory);

  auto* compare = app.add_subcommand("compare", "Print rank-sum comparison matrices");
  compare->add_option("--out", out, "Result directory")->required()->check(CLI::ExistingDirectory);
  compare->add_option("--indicator", indicator, "igd or ih")->check(CLI::IsMember({"igd", "ih"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      const Validation v = validate_spec(load_experiment_spec(config));
      if (v.ok()) print_resolved(v.spec);
      return report_validation(v);
    }
    if (run_cmd->parsed()) {
      ExperimentSpec spec = load_experiment_spec(config);
      if (*out_opt) spec.output = out;
      if (*workers_opt) spec.workers = workers;
      if (*seed_opt) spec.base_seed = seed;
      const Validation v = validate_spec(std::move(spec));
      if (report_validation(v) != EXIT_SUCCESS) return EXIT_FAILURE;
      const ExperimentReport rep = run_experiment(v.spec);
      for (const auto& w : rep.warnings) fmt::print(stderr, "warning: {}\n", w);
      fmt::print("{} runs written to {}\n", rep.runs_executed, v.spec.output.string());
      if (!rep.metrics.empty()) fmt::print("{}", summary_table(rep.metrics, "igd"));
      return EXIT_SUCCESS;
    }
    if (summarize->parsed()) {
      summarize_results(out);
      fmt::print("{}", read_text_file(fs::path(out) / "summary_igd.csv"));
      fmt::print("{}", read_text_file(fs::path(out) / "summary_ih.csv"));
      return EXIT_SUCCESS;
    }
    if (compare->parsed()) {
      fmt::print("{}", comparison_table(read_metrics_csv(fs::path(out) / "metrics.csv"), indicator));
      return EXIT_SUCCESS;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
