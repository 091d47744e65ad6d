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

#ifndef CCSMOEA_MOEA_HPP_
#define CCSMOEA_MOEA_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ccsmoea/encoding.hpp"
#include "ccsmoea/instance.hpp"
#include "ccsmoea/metrics.hpp"
#include "ccsmoea/operators.hpp"
#include "ccsmoea/problem.hpp"
#include "ccsmoea/rng.hpp"

namespace ccsmoea {

struct Individual {
  Genotype genotype;
  Portfolio phenotype;  // repaired, always feasible
  ObjectiveVector objectives;

  Point2 point() const { return objectives.minimization(); }
};

// Decodes, repairs and evaluates.
Individual make_individual(Genotype g, const Instance& inst, const ConstraintSet& c);

enum class Backend { kMoead, kNsga2, kSmsEmoa };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view s);

struct MoeadConfig {
  std::size_t neighborhood = 10;
  double p_delta = 0.1;  // whole population as the mating/replacement pool
  std::size_t replacement = 2;
};

struct RunConfig {
  Scheme scheme = Scheme::kCcs;
  Backend backend = Backend::kMoead;
  std::size_t np = 100;
  // Counts the initial population as one generation, so the run performs
  // exactly np * generations evaluations.
  std::size_t generations = 1000;
  std::uint64_t seed = 0;
  MoeadConfig moead;
  OperatorConfig operators;

  std::size_t evaluation_budget() const { return np * generations; }
  // Throws ConfigError on np < 4, generations == 0 or invalid sub-configs.
  void validate() const;
};

struct RunResult {
  std::vector<Individual> population;
  // Non-dominated individuals seen during the run, at most np.
  std::vector<Individual> archive;
  std::size_t evaluations = 0;
};

// Runs one MOEA. Throws InfeasibleError before any evaluation when the
// constraint set admits no portfolio.
RunResult run(const Instance& inst, const ConstraintSet& c, const RunConfig& cfg);

// ---- Selection building blocks (operate on minimization points) ----

// Fronts of indices, best first; each front lists indices ascending.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Point2> points);

// Crowding distance of each member of `front` (aligned with `front`).
// Boundary members get +infinity; an objective with zero range adds 0.
std::vector<double> crowding_distance(std::span<const Point2> points,
                                      std::span<const std::size_t> front);

// Chooses `keep` survivors: whole fronts in order, then the split front by
// descending crowding distance (ties to the lower index). Returns indices
// ascending. Throws std::invalid_argument when keep > points.size().
std::vector<std::size_t> nsga2_select(std::span<const Point2> points, std::size_t keep);

// Index to discard from np + 1 points: the member of the last front with the
// least exclusive hypervolume (front normalized to [0, 1], reference point
// (2, 2)); ties to the lower index.
std::size_t smsemoa_discard(std::span<const Point2> points);

// Exclusive hypervolume contributions of a mutually non-dominated set.
std::vector<double> hypervolume_contributions(std::span<const Point2> front, const Point2& ref);

// Bounded archive of mutually non-dominated individuals, pruned by crowding
// distance. Duplicate objective vectors are rejected.
class Archive {
 public:
  explicit Archive(std::size_t capacity) : capacity_(capacity) {}

  // Returns true when `ind` was inserted.
  bool offer(const Individual& ind);

  const std::vector<Individual>& members() const { return members_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::vector<Individual> members_;
};

// ---- MOEA/D internals ----

// max_k lambda_k |f_k - z_k| / scale_k.
double tchebycheff(const Point2& f, const Point2& lambda, const Point2& ideal, const Point2& scale);

// np evenly spaced weight vectors (i / (np - 1), 1 - i / (np - 1)).
std::vector<Point2> uniform_weights(std::size_t np);

// For each weight vector, the `size` closest weight vectors (itself
// included), nearest first, ties to the lower index.
std::vector<std::vector<std::size_t>> weight_neighborhoods(std::span<const Point2> weights,
                                                           std::size_t size);

struct MoeadState {
  std::vector<Point2> weights;
  std::vector<std::vector<std::size_t>> neighborhoods;
  std::vector<Individual> population;  // population[i] solves subproblem i
  Point2 ideal{};

  // Objective range of the current population (1 where degenerate).
  Point2 scale() const;
};

// Folds `offspring` into the ideal point, then visits `pool` in the given
// order and replaces members whose Tchebycheff value the offspring strictly
// improves, stopping after `max_replacements`. Returns the replaced
// subproblem indices in visiting order.
std::vector<std::size_t> moead_update(MoeadState& state, const Individual& offspring,
                                      std::span<const std::size_t> pool,
                                      std::size_t max_replacements);

}  // namespace ccsmoea

#endif  // CCSMOEA_MOEA_HPP_
