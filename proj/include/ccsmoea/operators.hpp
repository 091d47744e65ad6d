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

#ifndef CCSMOEA_OPERATORS_HPP_
#define CCSMOEA_OPERATORS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "ccsmoea/encoding.hpp"
#include "ccsmoea/instance.hpp"
#include "ccsmoea/problem.hpp"
#include "ccsmoea/rng.hpp"

namespace ccsmoea {

struct OperatorConfig {
  double f = 0.5;
  double cr = 0.9;
  double eta_m = 20.0;
  double p_m = 0.01;  // 1 / NP at the default population size.
  // Selection probabilities of the DE, power and swap operators.
  std::array<double, 3> op_weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  // Throws ConfigError on F <= 0, CR or p_m outside [0, 1], eta_m <= 0, or
  // op_weights negative or not summing to 1.
  void validate() const;
};

enum class OperatorKind : std::uint8_t { kDifferential = 0, kPower = 1, kSwap = 2 };

// Categorical draw by op_weights.
OperatorKind select_operator(const OperatorConfig& cfg, Rng& rng);

// Perturbation of bounded polynomial mutation on a unit range for a uniform
// draw u in [0, 1): negative below 0.5, positive above, zero at 0.5.
double polynomial_delta(double u, double eta_m);

// gene + polynomial_delta(u, eta_m), clamped to [0, 1].
double polynomial_mutation(double gene, double eta_m, Rng& rng);

// DE/rand/1: v = c3 + F (c1 - c2), binomial crossover with the target at
// rate CR (one mutant gene guaranteed), polynomial mutation per gene with
// probability p_m, all genes clamped to [0, 1]. Throws DimensionError on
// length or scheme mismatch.
Genotype op1_de_polymut(const Genotype& target, const Genotype& c1, const Genotype& c2,
                        const Genotype& c3, const OperatorConfig& cfg, Rng& rng);

// Raises every gene to one shared exponent.
Genotype power_transform(const Genotype& g, double exponent);

// power_transform with the exponent drawn from U[1, 2].
Genotype op2_power(const Genotype& g, Rng& rng);

enum class SwapStrategy : std::uint8_t {
  kRandomSelected = 0,   // another selected asset
  kLowestRisk = 1,       // unselected asset with the smallest sigma
  kHighestReturn = 2,    // unselected asset with the largest mu
  kLeastCorrelated = 3,  // unselected asset minimizing sum of rho to the rest of the selection
};

// Partner j for swapping out asset i under `strategy`. Ties go to the lower
// index. std::nullopt when no candidate exists.
std::optional<std::size_t> swap_partner(SwapStrategy strategy, std::size_t i,
                                        std::span<const std::uint8_t> selection,
                                        const Instance& inst, const ConstraintSet& c, Rng& rng);

// Exchanges genes i and j; for DCS also genes i + N and j + N.
Genotype swap_genes(const Genotype& g, std::size_t i, std::size_t j);

// Picks i uniformly among selected, non-pre-assigned assets and a strategy
// uniformly, then swaps. Returns g unchanged when no i or j is eligible.
Genotype op3_swap(const Genotype& g, std::span<const std::uint8_t> selection,
                  const Instance& inst, const ConstraintSet& c, Rng& rng);

}  // namespace ccsmoea

#endif  // CCSMOEA_OPERATORS_HPP_
