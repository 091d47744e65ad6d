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

#include "ccsmoea/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "ccsmoea/errors.hpp"

namespace ccsmoea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Point2> points_of(const std::vector<Individual>& pop) {
  std::vector<Point2> pts;
  pts.reserve(pop.size());
  for (const Individual& ind : pop) pts.push_back(ind.point());
  return pts;
}

// Three distinct members of `pool`, none equal to `target`. Falls back to
// the whole population when the pool is too small.
std::array<std::size_t, 3> draw_donors(std::span<const std::size_t> pool, std::size_t target,
                                       std::size_t population_size, Rng& rng) {
  std::size_t usable = 0;
  for (std::size_t k : pool) usable += k != target ? 1 : 0;
  const bool whole = usable < 3;
  const auto draw = [&]() -> std::size_t {
    return whole ? rng.index(population_size) : pool[rng.index(pool.size())];
  };
  std::array<std::size_t, 3> out{};
  for (std::size_t d = 0; d < 3; ++d) {
    std::size_t pick;
    do {
      pick = draw();
    } while (pick == target || std::find(out.begin(), out.begin() + d, pick) != out.begin() + d);
    out[d] = pick;
  }
  return out;
}

class Variation {
 public:
  Variation(const Instance& inst, const ConstraintSet& c, const OperatorConfig& cfg, Rng& rng)
      : inst_(inst), c_(c), cfg_(cfg), rng_(rng) {}

  Genotype operator()(const std::vector<Individual>& pop, std::size_t target,
                      std::span<const std::size_t> pool) {
    const Individual& parent = pop[target];
    switch (select_operator(cfg_, rng_)) {
      case OperatorKind::kDifferential: {
        const auto d = draw_donors(pool, target, pop.size(), rng_);
        return op1_de_polymut(parent.genotype, pop[d[0]].genotype, pop[d[1]].genotype,
                              pop[d[2]].genotype, cfg_, rng_);
      }
      case OperatorKind::kPower:
        return op2_power(parent.genotype, rng_);
      case OperatorKind::kSwap:
        return op3_swap(parent.genotype, parent.phenotype.selection, inst_, c_, rng_);
    }
    return parent.genotype;
  }

 private:
  const Instance& inst_;
  const ConstraintSet& c_;
  const OperatorConfig& cfg_;
  Rng& rng_;
};

}  // namespace

Individual make_individual(Genotype g, const Instance& inst, const ConstraintSet& c) {
  Individual ind;
  ind.phenotype = decode_and_repair(g, c);
  ind.objectives = evaluate(ind.phenotype, inst);
  ind.genotype = std::move(g);
  return ind;
}

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::kMoead:
      return "MOEAD";
    case Backend::kNsga2:
      return "NSGA2";
    case Backend::kSmsEmoa:
      return "SMSEMOA";
  }
  return "?";
}

Backend parse_backend(std::string_view s) {
  if (s == "MOEAD" || s == "moead" || s == "MOEA/D") return Backend::kMoead;
  if (s == "NSGA2" || s == "nsga2" || s == "NSGA-II") return Backend::kNsga2;
  if (s == "SMSEMOA" || s == "smsemoa" || s == "SMS-EMOA") return Backend::kSmsEmoa;
  throw ConfigError(fmt::format("unknown backend '{}'", s));
}

void RunConfig::validate() const {
  if (np < 4) throw ConfigError(fmt::format("population size {} below 4", np));
  if (generations == 0) throw ConfigError("generations must be positive");
  if (backend == Backend::kMoead) {
    if (moead.neighborhood < 4 || moead.neighborhood > np) {
      throw ConfigError(fmt::format("neighborhood size {} not in [4, {}]", moead.neighborhood, np));
    }
    if (!(moead.p_delta >= 0.0 && moead.p_delta <= 1.0)) throw ConfigError("p_delta not in [0, 1]");
    if (moead.replacement == 0) throw ConfigError("replacement size must be positive");
  }
  operators.validate();
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Point2> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++count[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++count[i];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Point2> points,
                                      std::span<const std::size_t> front) {
  const std::size_t m = front.size();
  std::vector<double> dist(m, 0.0);
  if (m <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  std::vector<std::size_t> order(m);
  for (int k = 0; k < 2; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return points[front[a]][k] < points[front[b]][k];
    });
    const double lo = points[front[order.front()]][k];
    const double hi = points[front[order.back()]][k];
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    const double range = hi - lo;
    if (!(range > 0.0)) continue;
    for (std::size_t r = 1; r + 1 < m; ++r) {
      dist[order[r]] += (points[front[order[r + 1]]][k] - points[front[order[r - 1]]][k]) / range;
    }
  }
  return dist;
}

std::vector<std::size_t> nsga2_select(std::span<const Point2> points, std::size_t keep) {
  if (keep > points.size()) throw std::invalid_argument("cannot keep more points than given");
  std::vector<std::size_t> chosen;
  chosen.reserve(keep);
  for (const auto& front : nondominated_sort(points)) {
    if (chosen.size() == keep) break;
    if (chosen.size() + front.size() <= keep) {
      chosen.insert(chosen.end(), front.begin(), front.end());
      continue;
    }
    const std::vector<double> dist = crowding_distance(points, front);
    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    for (std::size_t r = 0; chosen.size() < keep; ++r) chosen.push_back(front[order[r]]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<double> hypervolume_contributions(std::span<const Point2> front, const Point2& ref) {
  const std::size_t m = front.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return front[a] < front[b]; });
  std::vector<double> contrib(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const Point2& p = front[order[r]];
    const double right = r + 1 < m ? front[order[r + 1]][0] : ref[0];
    const double top = r > 0 ? front[order[r - 1]][1] : ref[1];
    contrib[order[r]] = std::max(0.0, right - p[0]) * std::max(0.0, top - p[1]);
  }
  return contrib;
}

std::size_t smsemoa_discard(std::span<const Point2> points) {
  if (points.empty()) throw std::invalid_argument("nothing to discard");
  const auto fronts = nondominated_sort(points);
  const std::vector<std::size_t>& last = fronts.back();
  if (last.size() == 1) return last.front();

  std::vector<Point2> local;
  local.reserve(last.size());
  for (std::size_t i : last) local.push_back(points[i]);
  const FrontNormalizer normalize(local);
  local = normalize(local);
  const std::vector<double> contrib = hypervolume_contributions(local, {2.0, 2.0});
  std::size_t worst = 0;
  for (std::size_t r = 1; r < last.size(); ++r) {
    if (contrib[r] < contrib[worst]) worst = r;
  }
  return last[worst];
}

bool Archive::offer(const Individual& ind) {
  const Point2 p = ind.point();
  for (const Individual& m : members_) {
    const Point2 q = m.point();
    if (q == p || dominates(q, p)) return false;
  }
  std::erase_if(members_, [&](const Individual& m) { return dominates(p, m.point()); });
  members_.push_back(ind);
  if (members_.size() > capacity_) {
    const std::vector<Point2> pts = points_of(members_);
    std::vector<std::size_t> all(pts.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const std::vector<double> dist = crowding_distance(pts, all);
    const auto victim = std::min_element(dist.begin(), dist.end()) - dist.begin();
    members_.erase(members_.begin() + victim);
  }
  return true;
}

double tchebycheff(const Point2& f, const Point2& lambda, const Point2& ideal, const Point2& scale) {
  double g = 0.0;
  for (int k = 0; k < 2; ++k) g = std::max(g, lambda[k] * std::abs(f[k] - ideal[k]) / scale[k]);
  return g;
}

std::vector<Point2> uniform_weights(std::size_t np) {
  std::vector<Point2> w(np);
  if (np == 1) {
    w[0] = {0.5, 0.5};
    return w;
  }
  for (std::size_t i = 0; i < np; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(np - 1);
    w[i] = {a, 1.0 - a};
  }
  return w;
}

std::vector<std::vector<std::size_t>> weight_neighborhoods(std::span<const Point2> weights,
                                                           std::size_t size) {
  const std::size_t n = weights.size();
  size = std::min(size, n);
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::size_t> order(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[j] = std::hypot(weights[i][0] - weights[j][0], weights[i][1] - weights[j][1]);
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    out[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return out;
}

Point2 MoeadState::scale() const {
  Point2 lo{kInf, kInf};
  Point2 hi{-kInf, -kInf};
  for (const Individual& ind : population) {
    const Point2 p = ind.point();
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  Point2 s;
  for (int k = 0; k < 2; ++k) s[k] = hi[k] - lo[k] > 0.0 ? hi[k] - lo[k] : 1.0;
  return s;
}

std::vector<std::size_t> moead_update(MoeadState& state, const Individual& offspring,
                                      std::span<const std::size_t> pool,
                                      std::size_t max_replacements) {
  const Point2 y = offspring.point();
  for (int k = 0; k < 2; ++k) state.ideal[k] = std::min(state.ideal[k], y[k]);
  const Point2 scale = state.scale();
  std::vector<std::size_t> replaced;
  for (std::size_t j : pool) {
    if (replaced.size() >= max_replacements) break;
    const Point2& lambda = state.weights[j];
    if (tchebycheff(y, lambda, state.ideal, scale) <
        tchebycheff(state.population[j].point(), lambda, state.ideal, scale)) {
      state.population[j] = offspring;
      replaced.push_back(j);
    }
  }
  return replaced;
}

RunResult run(const Instance& inst, const ConstraintSet& c, const RunConfig& cfg) {
  cfg.validate();
  if (c.n_assets() != inst.n_assets()) {
    throw DimensionError(fmt::format("constraint set covers {} assets, instance has {}",
                                     c.n_assets(), inst.n_assets()));
  }
  c.ensure_admissible();

  Rng rng(cfg.seed);
  Variation vary(inst, c, cfg.operators, rng);
  Archive archive(cfg.np);
  const std::size_t budget = cfg.evaluation_budget();
  std::size_t evaluations = 0;
  const auto evaluate_new = [&](Genotype g) {
    Individual ind = make_individual(std::move(g), inst, c);
    ++evaluations;
    archive.offer(ind);
    return ind;
  };

  std::vector<Individual> pop;
  pop.reserve(cfg.np + 1);
  for (std::size_t i = 0; i < cfg.np; ++i) {
    pop.push_back(evaluate_new(random_genotype(cfg.scheme, inst.n_assets(), rng)));
  }

  std::vector<std::size_t> everyone(cfg.np);
  std::iota(everyone.begin(), everyone.end(), std::size_t{0});

  switch (cfg.backend) {
    case Backend::kMoead: {
      MoeadState state;
      state.weights = uniform_weights(cfg.np);
      state.neighborhoods = weight_neighborhoods(state.weights, cfg.moead.neighborhood);
      state.population = std::move(pop);
      state.ideal = {kInf, kInf};
      for (const Individual& ind : state.population) {
        const Point2 p = ind.point();
        state.ideal = {std::min(state.ideal[0], p[0]), std::min(state.ideal[1], p[1])};
      }
      std::vector<std::size_t> pool;
      while (evaluations < budget) {
        for (std::size_t i = 0; i < cfg.np && evaluations < budget; ++i) {
          const bool whole = rng.uniform() < cfg.moead.p_delta;
          pool = whole ? everyone : state.neighborhoods[i];
          Individual child = evaluate_new(vary(state.population, i, pool));
          for (std::size_t k = pool.size(); k > 1; --k) std::swap(pool[k - 1], pool[rng.index(k)]);
          moead_update(state, child, pool, cfg.moead.replacement);
        }
      }
      pop = std::move(state.population);
      break;
    }
    case Backend::kNsga2: {
      std::vector<Individual> merged;
      while (evaluations < budget) {
        merged = pop;
        for (std::size_t i = 0; i < cfg.np && evaluations < budget; ++i) {
          merged.push_back(evaluate_new(vary(pop, i, everyone)));
        }
        const std::vector<std::size_t> keep = nsga2_select(points_of(merged), cfg.np);
        pop.clear();
        for (std::size_t k : keep) pop.push_back(std::move(merged[k]));
      }
      break;
    }
    case Backend::kSmsEmoa: {
      while (evaluations < budget) {
        const std::size_t target = rng.index(pop.size());
        pop.push_back(evaluate_new(vary(pop, target, everyone)));
        const std::size_t out = smsemoa_discard(points_of(pop));
        pop.erase(pop.begin() + static_cast<std::ptrdiff_t>(out));
      }
      break;
    }
  }

  RunResult result;
  result.population = std::move(pop);
  result.archive = archive.members();
  std::sort(result.archive.begin(), result.archive.end(),
            [](const Individual& a, const Individual& b) { return a.point() < b.point(); });
  result.evaluations = evaluations;
  return result;
}

}  // namespace ccsmoea
