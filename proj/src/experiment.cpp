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

#include "ccsmoea/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include <fmt/format.h>
#include <json.hpp>

#include "ccsmoea/errors.hpp"
#include "ccsmoea/metrics.hpp"

namespace ccsmoea {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kMetricsHeader =
    "# ccsmoea metrics v1 normalization=reference-front ih_reference=1.2,1.2";

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_file(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known,
                         std::string_view where) {
  for (const auto& item : obj.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError(fmt::format("unknown key '{}' in {}", item.key(), where));
    }
  }
}

AlgorithmSpec parse_algorithm(const json& j) {
  AlgorithmSpec a;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto cut = s.find_first_of("/-");
    if (cut == std::string::npos) throw ConfigError(fmt::format("algorithm '{}' is not SCHEME/BACKEND", s));
    a.scheme = parse_scheme(s.substr(0, cut));
    a.backend = parse_backend(s.substr(cut + 1));
  } else if (j.is_object()) {
    reject_unknown_keys(j, {"scheme", "backend"}, "algorithm");
    a.scheme = parse_scheme(j.at("scheme").get<std::string>());
    a.backend = parse_backend(j.at("backend").get<std::string>());
  } else {
    throw ConfigError("algorithm entries must be strings or objects");
  }
  return a;
}

std::string fmt_real(double v) { return fmt::format("{}", v); }

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(fmt::format("bad number '{}' in metrics file", s), 0);
  }
  return v;
}

template <typename T>
T parse_unsigned(const std::string& s) {
  T v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(fmt::format("bad integer '{}' in metrics file", s), 0);
  }
  return v;
}

// Values per (instance, algorithm), runs in file order, plus first-seen
// orderings of instances and algorithms.
struct Grouped {
  std::vector<std::string> instances;
  std::vector<std::string> algorithms;
  std::map<std::pair<std::string, std::string>, std::vector<double>> values;
};

Grouped group(const std::vector<MetricRow>& rows, std::string_view indicator) {
  if (indicator != "igd" && indicator != "ih") {
    throw ConfigError(fmt::format("unknown indicator '{}'", indicator));
  }
  Grouped g;
  for (const MetricRow& r : rows) {
    if (std::find(g.instances.begin(), g.instances.end(), r.instance) == g.instances.end()) {
      g.instances.push_back(r.instance);
    }
    if (std::find(g.algorithms.begin(), g.algorithms.end(), r.algorithm) == g.algorithms.end()) {
      g.algorithms.push_back(r.algorithm);
    }
    g.values[{r.instance, r.algorithm}].push_back(indicator == "igd" ? r.igd : r.ih);
  }
  return g;
}

struct JobOutcome {
  bool has_metrics = false;
  MetricRow row;
};

std::string plot_script(const std::string& instance,
                        const std::vector<std::pair<std::string, std::size_t>>& best_runs,
                        bool has_reference) {
  std::string s;
  s += fmt::format("# gnuplot script; run from the plots directory: gnuplot {}.gp\n", instance);
  s += "set datafile separator ','\n";
  s += "set terminal pngcairo size 900,650\n";
  s += fmt::format("set output '{}.png'\n", instance);
  s += fmt::format("set title '{}'\n", instance);
  s += "set xlabel 'risk (variance)'\nset ylabel 'expected return'\nset key bottom right\n";
  std::vector<std::string> parts;
  if (has_reference) {
    parts.push_back(fmt::format("'{}_reference.csv' skip 1 using 1:2 with lines lw 2 title 'reference'",
                                instance));
  }
  for (const auto& [algo, run] : best_runs) {
    parts.push_back(fmt::format("'../{}/{}/run_{:02}.csv' skip 1 using 1:2 with points title '{}'",
                                instance, algo, run, algo));
  }
  s += "plot ";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    s += parts[k];
    s += k + 1 < parts.size() ? ", \\\n     " : "\n";
  }
  return s;
}

}  // namespace

ConstraintSpec ConstraintSpec::set_i() { return {"i", 10, 0.01, 1.0, 0.008, {30}}; }
ConstraintSpec ConstraintSpec::set_ii() { return {"ii", 15, 0.01, 1.0, 0.008, {5}}; }

ConstraintSet ConstraintSpec::build(std::size_t n_assets, std::string_view instance_name) const {
  std::vector<std::size_t> zero_based;
  for (std::size_t a : preassigned) {
    if (a == 0 || a > n_assets) {
      throw ConfigError(fmt::format("instance '{}': pre-assigned asset {} outside [1, {}]",
                                    instance_name, a, n_assets));
    }
    zero_based.push_back(a - 1);
  }
  if (cardinality > n_assets) {
    throw ConfigError(fmt::format("instance '{}': cardinality {} exceeds {} assets", instance_name,
                                  cardinality, n_assets));
  }
  try {
    return ConstraintSet::uniform(n_assets, cardinality, floor, ceiling, lot, zero_based);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("instance '{}': {}", instance_name, e.what()));
  }
}

std::string AlgorithmSpec::label() const {
  return fmt::format("{}-{}", to_string(scheme), to_string(backend));
}

ExperimentSpec parse_experiment_spec(std::string_view json_text, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("experiment file is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) throw ConfigError("experiment file must hold a JSON object");
  reject_unknown_keys(root,
                      {"instances", "constraints", "algorithms", "runs", "base_seed",
                       "parameters", "output", "workers"},
                      "experiment");

  ExperimentSpec spec;
  try {
    for (const json& item : root.value("instances", json::array())) {
      InstanceSpec inst;
      if (item.is_string()) {
        inst.path = resolve(base_dir, item.get<std::string>());
      } else {
        reject_unknown_keys(item, {"path", "frontier", "name"}, "instance");
        inst.path = resolve(base_dir, item.at("path").get<std::string>());
        if (item.contains("frontier")) inst.frontier = resolve(base_dir, item["frontier"].get<std::string>());
        if (item.contains("name")) inst.name = item["name"].get<std::string>();
      }
      if (inst.name.empty()) inst.name = inst.path.stem().string();
      spec.instances.push_back(std::move(inst));
    }

    if (root.contains("constraints")) {
      const json& c = root["constraints"];
      if (c.is_string()) {
        const std::string label = c.get<std::string>();
        if (label == "i") {
          spec.constraints = ConstraintSpec::set_i();
        } else if (label == "ii") {
          spec.constraints = ConstraintSpec::set_ii();
        } else {
          throw ConfigError(fmt::format("unknown constraint set '{}' (use i, ii or an object)", label));
        }
      } else {
        reject_unknown_keys(c, {"cardinality", "floor", "ceiling", "lot", "preassigned"}, "constraints");
        ConstraintSpec custom;
        custom.label = "custom";
        custom.cardinality = c.at("cardinality").get<std::size_t>();
        custom.floor = c.value("floor", 0.0);
        custom.ceiling = c.value("ceiling", 1.0);
        custom.lot = c.at("lot").get<double>();
        custom.preassigned = c.value("preassigned", std::vector<std::size_t>{});
        spec.constraints = custom;
      }
    }

    for (const json& a : root.value("algorithms", json::array())) {
      spec.algorithms.push_back(parse_algorithm(a));
    }
    if (root.contains("runs")) {
      const long long runs = root["runs"].get<long long>();
      spec.runs = runs < 0 ? 0 : static_cast<std::size_t>(runs);
    }
    spec.base_seed = root.value("base_seed", std::uint64_t{1});
    if (root.contains("output")) spec.output = resolve(base_dir, root["output"].get<std::string>());
    spec.workers = root.value("workers", std::size_t{1});

    if (root.contains("parameters")) {
      const json& p = root["parameters"];
      reject_unknown_keys(p,
                          {"np", "generations", "F", "CR", "eta_m", "p_m", "neighborhood",
                           "p_delta", "replacement", "op_weights"},
                          "parameters");
      ParameterOverrides& o = spec.parameters;
      if (p.contains("np")) o.np = p["np"].get<std::size_t>();
      if (p.contains("generations")) o.generations = p["generations"].get<std::size_t>();
      if (p.contains("F")) o.f = p["F"].get<double>();
      if (p.contains("CR")) o.cr = p["CR"].get<double>();
      if (p.contains("eta_m")) o.eta_m = p["eta_m"].get<double>();
      if (p.contains("p_m")) o.p_m = p["p_m"].get<double>();
      if (p.contains("neighborhood")) o.neighborhood = p["neighborhood"].get<std::size_t>();
      if (p.contains("p_delta")) o.p_delta = p["p_delta"].get<double>();
      if (p.contains("replacement")) o.replacement = p["replacement"].get<std::size_t>();
      if (p.contains("op_weights")) o.op_weights = p["op_weights"].get<std::array<double, 3>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("experiment file: {}", e.what()));
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const fs::path& path) {
  return parse_experiment_spec(read_text_file(path), path.parent_path());
}

Validation validate_spec(ExperimentSpec spec) {
  Validation v;
  if (spec.runs < 1) v.errors.push_back("runs must be at least 1");
  if (spec.workers < 1) v.errors.push_back("workers must be at least 1");
  if (spec.instances.empty()) v.errors.push_back("no instances listed");
  if (spec.algorithms.empty()) v.errors.push_back("no algorithms listed");

  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    for (std::size_t b = a + 1; b < spec.algorithms.size(); ++b) {
      if (spec.algorithms[a] == spec.algorithms[b]) {
        v.errors.push_back(fmt::format("algorithm {} listed twice", spec.algorithms[a].label()));
      }
    }
  }

  std::set<std::string> names;
  for (InstanceSpec& inst : spec.instances) {
    if (!names.insert(inst.name).second) {
      v.errors.push_back(fmt::format("instance name '{}' used twice", inst.name));
    }
    if (!fs::exists(inst.path)) {
      v.errors.push_back(fmt::format("instance file '{}' does not exist", inst.path.string()));
      continue;
    }
    if (inst.frontier && !fs::exists(*inst.frontier)) {
      v.warnings.push_back(fmt::format("instance '{}': frontier '{}' missing, metrics skipped",
                                       inst.name, inst.frontier->string()));
      inst.frontier.reset();
    } else if (!inst.frontier) {
      v.warnings.push_back(fmt::format("instance '{}': no frontier given, metrics skipped", inst.name));
    }
    try {
      const std::size_t n = peek_asset_count(inst.path);
      const ConstraintSet c = spec.constraints.build(n, inst.name);
      c.ensure_admissible();
    } catch (const std::exception& e) {
      v.errors.push_back(e.what());
    }
  }

  const ParameterOverrides& o = spec.parameters;
  RunConfig& cfg = spec.base_config;
  cfg.np = o.np.value_or(100);
  cfg.generations = o.generations.value_or(1000);
  cfg.operators.f = o.f.value_or(0.5);
  cfg.operators.cr = o.cr.value_or(0.9);
  cfg.operators.eta_m = o.eta_m.value_or(20.0);
  cfg.operators.p_m = o.p_m.value_or(cfg.np > 0 ? 1.0 / static_cast<double>(cfg.np) : 0.0);
  cfg.moead.neighborhood = o.neighborhood.value_or(10);
  cfg.moead.p_delta = o.p_delta.value_or(0.1);
  cfg.moead.replacement = o.replacement.value_or(2);
  if (o.op_weights) cfg.operators.op_weights = *o.op_weights;
  cfg.backend = Backend::kMoead;  // validates the MOEA/D fields too
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    v.errors.push_back(e.what());
  }

  std::set<std::uint64_t> seeds;
  std::size_t total = 0;
  for (const InstanceSpec& inst : spec.instances) {
    for (const AlgorithmSpec& a : spec.algorithms) {
      for (std::size_t r = 0; r < spec.runs; ++r) {
        seeds.insert(run_seed(spec.base_seed, inst.name, a.label(), r));
        ++total;
      }
    }
  }
  if (seeds.size() != total) v.errors.push_back("per-run seeds collide; change base_seed");

  v.spec = std::move(spec);
  return v;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view instance,
                       std::string_view algorithm, std::size_t run) {
  const std::uint64_t h = fnv1a(fmt::format("{}\x1f{}", instance, algorithm));
  return base_seed ^ mix64(h ^ mix64(static_cast<std::uint64_t>(run)));
}

std::string config_hash(const ExperimentSpec& spec) {
  json j;
  for (const InstanceSpec& inst : spec.instances) {
    j["instances"].push_back({{"name", inst.name},
                              {"path", inst.path.filename().string()},
                              {"frontier", inst.frontier ? inst.frontier->filename().string() : ""}});
  }
  const ConstraintSpec& c = spec.constraints;
  j["constraints"] = {{"label", c.label}, {"cardinality", c.cardinality}, {"floor", c.floor},
                      {"ceiling", c.ceiling}, {"lot", c.lot}, {"preassigned", c.preassigned}};
  for (const AlgorithmSpec& a : spec.algorithms) j["algorithms"].push_back(a.label());
  j["runs"] = spec.runs;
  j["base_seed"] = spec.base_seed;
  const RunConfig& r = spec.base_config;
  j["parameters"] = {{"np", r.np}, {"generations", r.generations}, {"F", r.operators.f},
                     {"CR", r.operators.cr}, {"eta_m", r.operators.eta_m}, {"p_m", r.operators.p_m},
                     {"neighborhood", r.moead.neighborhood}, {"p_delta", r.moead.p_delta},
                     {"replacement", r.moead.replacement}, {"op_weights", r.operators.op_weights}};
  return fmt::format("{:016x}", fnv1a(j.dump()));
}

std::string front_csv(const std::vector<Individual>& members, std::uint64_t seed,
                      std::string_view hash, std::string_view kind) {
  std::string s = fmt::format("# ccsmoea front v1 kind={} seed={} config={}\n", kind, seed, hash);
  s += "risk,return,holdings\n";
  for (const Individual& ind : members) {
    s += fmt::format("{},{},", fmt_real(ind.objectives.risk), fmt_real(ind.objectives.ret));
    bool first = true;
    for (std::size_t i : ind.phenotype.held()) {
      s += fmt::format("{}{}:{}", first ? "" : ";", i + 1, fmt_real(ind.phenotype.weight(i)));
      first = false;
    }
    s += '\n';
  }
  return s;
}

std::string portfolio_csv(const Portfolio& p) {
  std::string s = "# ccsmoea portfolio v1\nasset,lots,weight\n";
  for (std::size_t i : p.held()) s += fmt::format("{},{},{}\n", i + 1, p.lots[i], fmt_real(p.weight(i)));
  return s;
}

void write_metrics_csv(const fs::path& path, const std::vector<MetricRow>& rows) {
  std::string s(kMetricsHeader);
  s += "\ninstance,algorithm,run,seed,igd,ih\n";
  for (const MetricRow& r : rows) {
    s += fmt::format("{},{},{},{},{},{}\n", r.instance, r.algorithm, r.run, r.seed, fmt_real(r.igd),
                     fmt_real(r.ih));
  }
  write_file(path, s);
}

std::vector<MetricRow> read_metrics_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<MetricRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw ParseError(fmt::format("metrics row has {} fields", f.size()), 0);
    rows.push_back({f[0], f[1], parse_unsigned<std::size_t>(f[2]), parse_unsigned<std::uint64_t>(f[3]),
                    parse_real(f[4]), parse_real(f[5])});
  }
  return rows;
}

std::string summary_table(const std::vector<MetricRow>& rows, std::string_view indicator) {
  const Grouped g = group(rows, indicator);
  std::string s = fmt::format("# ccsmoea summary v1 indicator={}\ninstance,statistic", indicator);
  for (const auto& a : g.algorithms) s += "," + a;
  s += '\n';

  std::vector<std::vector<double>> means(g.algorithms.size());
  std::vector<std::string> complete;
  for (const auto& inst : g.instances) {
    std::vector<double> mean_row, std_row;
    bool all = true;
    for (const auto& a : g.algorithms) {
      const auto it = g.values.find({inst, a});
      if (it == g.values.end()) {
        all = false;
        mean_row.push_back(0.0);
        std_row.push_back(0.0);
        continue;
      }
      mean_row.push_back(mean(it->second));
      std_row.push_back(stddev(it->second));
    }
    s += inst + ",Mean";
    for (double m : mean_row) s += "," + fmt_real(m);
    s += "\n" + inst + ",Std";
    for (double d : std_row) s += "," + fmt_real(d);
    s += '\n';
    if (all) {
      const std::vector<double> ranks = average_ranks(mean_row);
      s += inst + ",Rank";
      for (double r : ranks) s += "," + fmt_real(r);
      s += '\n';
      for (std::size_t a = 0; a < g.algorithms.size(); ++a) means[a].push_back(mean_row[a]);
    }
  }
  if (!means.empty() && !means.front().empty()) {
    s += "MeanRank,";
    for (double r : mean_rank(means)) s += "," + fmt_real(r);
    s += '\n';
  }
  return s;
}

std::string comparison_table(const std::vector<MetricRow>& rows, std::string_view indicator) {
  const Grouped g = group(rows, indicator);
  std::string s = fmt::format("# ccsmoea compare v1 indicator={} test=rank-sum alpha=0.05\n", indicator);
  s += "algorithm_a,algorithm_b";
  for (const auto& inst : g.instances) s += "," + inst;
  s += ",+/-/=\n";
  for (const auto& a : g.algorithms) {
    for (const auto& b : g.algorithms) {
      if (a == b) continue;
      int better = 0, worse = 0, equal = 0;
      s += a + "," + b;
      for (const auto& inst : g.instances) {
        const auto ia = g.values.find({inst, a});
        const auto ib = g.values.find({inst, b});
        if (ia == g.values.end() || ib == g.values.end() || ia->second.size() < 2 ||
            ib->second.size() < 2) {
          s += ",n/a";
          continue;
        }
        const Comparison c = rank_sum_test(ia->second, ib->second);
        better += c == Comparison::kBetter;
        worse += c == Comparison::kWorse;
        equal += c == Comparison::kEqual;
        s += fmt::format(",{}", symbol(c));
      }
      s += fmt::format(",{}/{}/{}\n", better, worse, equal);
    }
  }
  return s;
}

void summarize_results(const fs::path& out_dir) {
  const std::vector<MetricRow> rows = read_metrics_csv(out_dir / "metrics.csv");
  for (std::string_view ind : {"igd", "ih"}) {
    write_file(out_dir / fmt::format("summary_{}.csv", ind), summary_table(rows, ind));
    write_file(out_dir / fmt::format("compare_{}.csv", ind), comparison_table(rows, ind));
  }
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  struct Loaded {
    Instance instance;
    std::optional<ConstraintSet> constraints;
    std::vector<Point2> reference;  // raw minimization points
  };
  std::vector<Loaded> loaded;
  ExperimentReport report;
  for (const InstanceSpec& is : spec.instances) {
    Instance inst = load_instance(is.path);
    ConstraintSet c = spec.constraints.build(inst.n_assets(), is.name);
    std::vector<Point2> ref;
    if (is.frontier && fs::exists(*is.frontier)) {
      for (const FrontPoint& p : load_frontier(*is.frontier).points) ref.push_back(to_point(p));
    } else {
      report.warnings.push_back(fmt::format("instance '{}': no frontier, metrics skipped", is.name));
    }
    loaded.push_back({std::move(inst), std::move(c), std::move(ref)});
  }

  const std::string hash = config_hash(spec);
  const fs::path& out = spec.output;
  fs::create_directories(out);

  struct Job {
    std::size_t instance, algorithm, run;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      for (std::size_t r = 0; r < spec.runs; ++r) jobs.push_back({i, a, r});
    }
  }

  std::vector<JobOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  const auto worker = [&]() {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        const Job& job = jobs[k];
        const Loaded& ld = loaded[job.instance];
        const InstanceSpec& is = spec.instances[job.instance];
        const AlgorithmSpec& algo = spec.algorithms[job.algorithm];
        RunConfig cfg = spec.base_config;
        cfg.scheme = algo.scheme;
        cfg.backend = algo.backend;
        cfg.seed = run_seed(spec.base_seed, is.name, algo.label(), job.run);
        const RunResult res = run(ld.instance, *ld.constraints, cfg);

        const fs::path dir = out / is.name / algo.label();
        write_file(dir / fmt::format("run_{:02}.csv", job.run), front_csv(res.archive, cfg.seed, hash, "archive"));
        write_file(dir / fmt::format("run_{:02}_population.csv", job.run),
                   front_csv(res.population, cfg.seed, hash, "population"));

        JobOutcome& o = outcomes[k];
        o.row = {is.name, algo.label(), job.run, cfg.seed, 0.0, 0.0};
        if (!ld.reference.empty()) {
          std::vector<Point2> obtained;
          for (const Individual& ind : res.archive) obtained.push_back(ind.point());
          const FrontNormalizer normalize(ld.reference);
          const std::vector<Point2> ref_n = normalize(ld.reference);
          const std::vector<Point2> obt_n = normalize(obtained);
          o.row.igd = igd(obt_n, ref_n);
          o.row.ih = ih(obt_n, ref_n);
          o.has_metrics = true;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(spec.workers, jobs.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.runs_executed = jobs.size();

  for (const JobOutcome& o : outcomes) {
    if (o.has_metrics) report.metrics.push_back(o.row);
  }
  write_metrics_csv(out / "metrics.csv", report.metrics);
  summarize_results(out);

  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    const InstanceSpec& is = spec.instances[i];
    const bool has_ref = !loaded[i].reference.empty();
    if (has_ref) {
      std::string ref_csv = "risk,return\n";
      for (const Point2& p : loaded[i].reference) ref_csv += fmt::format("{},{}\n", fmt_real(p[0]), fmt_real(-p[1]));
      write_file(out / "plots" / fmt::format("{}_reference.csv", is.name), ref_csv);
    }
    std::vector<std::pair<std::string, std::size_t>> best;
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      std::size_t best_run = 0;
      double best_igd = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        if (jobs[k].instance != i || jobs[k].algorithm != a || !outcomes[k].has_metrics) continue;
        if (outcomes[k].row.igd < best_igd) {
          best_igd = outcomes[k].row.igd;
          best_run = jobs[k].run;
        }
      }
      best.emplace_back(spec.algorithms[a].label(), best_run);
    }
    write_file(out / "plots" / fmt::format("{}.gp", is.name), plot_script(is.name, best, has_ref));
  }
  return report;
}

}  // namespace ccsmoea
