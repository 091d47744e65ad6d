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

#include "ccsmoea/operators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "ccsmoea/errors.hpp"

namespace ccsmoea {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

void OperatorConfig::validate() const {
  if (!(f > 0.0)) throw ConfigError(fmt::format("scaling factor F = {} must be positive", f));
  if (!(cr >= 0.0 && cr <= 1.0)) throw ConfigError(fmt::format("CR = {} not in [0, 1]", cr));
  if (!(p_m >= 0.0 && p_m <= 1.0)) throw ConfigError(fmt::format("p_m = {} not in [0, 1]", p_m));
  if (!(eta_m > 0.0)) throw ConfigError(fmt::format("eta_m = {} must be positive", eta_m));
  double total = 0.0;
  for (double w : op_weights) {
    if (!(w >= 0.0)) throw ConfigError("operator weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError(fmt::format("operator weights sum to {}, not 1", total));
  }
}

OperatorKind select_operator(const OperatorConfig& cfg, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t k = 0; k < cfg.op_weights.size(); ++k) {
    acc += cfg.op_weights[k];
    if (u < acc) return static_cast<OperatorKind>(k);
  }
  // u landed in the rounding gap above the last cumulative weight.
  for (std::size_t k = cfg.op_weights.size(); k-- > 0;) {
    if (cfg.op_weights[k] > 0.0) return static_cast<OperatorKind>(k);
  }
  return OperatorKind::kDifferential;
}

double polynomial_delta(double u, double eta_m) {
  const double power = 1.0 / (eta_m + 1.0);
  if (u < 0.5) return std::pow(2.0 * u, power) - 1.0;
  return 1.0 - std::pow(2.0 * (1.0 - u), power);
}

double polynomial_mutation(double gene, double eta_m, Rng& rng) {
  return clamp01(gene + polynomial_delta(rng.uniform(), eta_m));
}

Genotype op1_de_polymut(const Genotype& target, const Genotype& c1, const Genotype& c2,
                        const Genotype& c3, const OperatorConfig& cfg, Rng& rng) {
  const std::size_t n = target.genes.size();
  for (const Genotype* g : {&c1, &c2, &c3}) {
    if (g->genes.size() != n || g->scheme != target.scheme) {
      throw DimensionError("DE donors must match the target's scheme and length");
    }
  }
  Genotype child;
  child.scheme = target.scheme;
  child.genes.resize(n);
  const std::size_t forced = n == 0 ? 0 : rng.index(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool take_mutant = rng.uniform() < cfg.cr || i == forced;
    double x = take_mutant ? clamp01(c3.genes[i] + cfg.f * (c1.genes[i] - c2.genes[i]))
                           : target.genes[i];
    if (cfg.p_m > 0.0 && rng.uniform() < cfg.p_m) x = polynomial_mutation(x, cfg.eta_m, rng);
    child.genes[i] = clamp01(x);
  }
  return child;
}

Genotype power_transform(const Genotype& g, double exponent) {
  Genotype out = g;
  for (double& x : out.genes) x = clamp01(std::pow(clamp01(x), exponent));
  return out;
}

Genotype op2_power(const Genotype& g, Rng& rng) { return power_transform(g, rng.uniform(1.0, 2.0)); }

std::optional<std::size_t> swap_partner(SwapStrategy strategy, std::size_t i,
                                        std::span<const std::uint8_t> selection,
                                        const Instance& inst, const ConstraintSet& c, Rng& rng) {
  const std::size_t n = selection.size();
  std::vector<std::size_t> candidates;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const bool held = selection[j] != 0;
    if (strategy == SwapStrategy::kRandomSelected) {
      // A pre-assigned partner's gene could push i out of the top ranks.
      if (held && !c.preassigned(j)) candidates.push_back(j);
    } else if (!held) {
      candidates.push_back(j);
    }
  }
  if (candidates.empty()) return std::nullopt;

  switch (strategy) {
    case SwapStrategy::kRandomSelected:
      return candidates[rng.index(candidates.size())];
    case SwapStrategy::kLowestRisk:
      return *std::min_element(candidates.begin(), candidates.end(),
                               [&](std::size_t a, std::size_t b) {
                                 return inst.sigma(a) < inst.sigma(b);
                               });
    case SwapStrategy::kHighestReturn:
      return *std::max_element(candidates.begin(), candidates.end(),
                               [&](std::size_t a, std::size_t b) { return inst.mu(a) < inst.mu(b); });
    case SwapStrategy::kLeastCorrelated: {
      const auto rho = inst.rho_matrix();
      std::size_t best = candidates.front();
      double best_sum = 0.0;
      bool first = true;
      for (std::size_t j : candidates) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != i && selection[k] != 0) sum += rho[k * n + j];
        }
        if (first || sum < best_sum) {
          best = j;
          best_sum = sum;
          first = false;
        }
      }
      return best;
    }
  }
  return std::nullopt;
}

Genotype swap_genes(const Genotype& g, std::size_t i, std::size_t j) {
  Genotype out = g;
  std::swap(out.genes[i], out.genes[j]);
  if (g.scheme == Scheme::kDcs) {
    const std::size_t n = g.n_assets();
    std::swap(out.genes[i + n], out.genes[j + n]);
  }
  return out;
}

Genotype op3_swap(const Genotype& g, std::span<const std::uint8_t> selection,
                  const Instance& inst, const ConstraintSet& c, Rng& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (selection[i] != 0 && !c.preassigned(i)) eligible.push_back(i);
  }
  if (eligible.empty()) return g;
  const std::size_t i = eligible[rng.index(eligible.size())];
  const auto strategy = static_cast<SwapStrategy>(rng.index(4));
  const std::optional<std::size_t> j = swap_partner(strategy, i, selection, inst, c, rng);
  if (!j) return g;
  return swap_genes(g, i, *j);
}

}  // namespace ccsmoea
