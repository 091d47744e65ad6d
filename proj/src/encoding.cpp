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

#include "ccsmoea/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ccsmoea/errors.hpp"

namespace ccsmoea {

namespace {

constexpr double kLotSlack = 1e-9;

void check_length(const Genotype& g, Scheme expected, const ConstraintSet& c) {
  if (g.scheme != expected) throw DimensionError("genotype scheme does not match decoder");
  const std::size_t want = genotype_length(expected, c.n_assets());
  if (g.genes.size() != want) {
    throw DimensionError(fmt::format("{} genotype has {} genes, expected {}", to_string(expected),
                                     g.genes.size(), want));
  }
}

}  // namespace

std::string_view to_string(Scheme s) { return s == Scheme::kCcs ? "CCS" : "DCS"; }

Scheme parse_scheme(std::string_view s) {
  if (s == "CCS" || s == "ccs") return Scheme::kCcs;
  if (s == "DCS" || s == "dcs") return Scheme::kDcs;
  throw ConfigError(fmt::format("unknown coding scheme '{}'", s));
}

std::size_t genotype_length(Scheme scheme, std::size_t n_assets) {
  return scheme == Scheme::kCcs ? n_assets : 2 * n_assets;
}

std::vector<std::uint8_t> select_assets(std::span<const double> rank_genes, const ConstraintSet& c) {
  const std::size_t n = c.n_assets();
  if (rank_genes.size() != n) throw DimensionError("selection genes do not cover every asset");
  if (c.n_preassigned() > c.cardinality()) {
    throw ConfigError("more pre-assigned assets than the cardinality allows");
  }
  std::vector<std::uint8_t> selection(n, 0);
  std::vector<std::size_t> free;
  free.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.preassigned(i)) {
      selection[i] = 1;
    } else {
      free.push_back(i);
    }
  }
  const std::size_t slots = c.cardinality() - c.n_preassigned();
  const auto by_gene = [&](std::size_t a, std::size_t b) {
    if (rank_genes[a] != rank_genes[b]) return rank_genes[a] > rank_genes[b];
    return a < b;
  };
  const auto cut = free.begin() + static_cast<std::ptrdiff_t>(slots);
  std::nth_element(free.begin(), cut, free.end(), by_gene);
  for (auto it = free.begin(); it != cut; ++it) selection[*it] = 1;
  return selection;
}

std::vector<double> normalize_weights(std::span<const double> weight_genes,
                                      std::span<const std::uint8_t> selection) {
  const std::size_t n = selection.size();
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (selection[i] != 0) {
      total += weight_genes[i];
      ++count;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (selection[i] == 0) continue;
    w[i] = total > 0.0 ? weight_genes[i] / total : 1.0 / static_cast<double>(count);
  }
  return w;
}

Allocation ccs_decode(const Genotype& g, const ConstraintSet& c) {
  check_length(g, Scheme::kCcs, c);
  Allocation a;
  a.selection = select_assets(g.genes, c);
  a.weights = normalize_weights(g.genes, a.selection);
  return a;
}

Allocation dcs_decode(const Genotype& g, const ConstraintSet& c) {
  check_length(g, Scheme::kDcs, c);
  const std::size_t n = c.n_assets();
  const std::span<const double> genes(g.genes);
  Allocation a;
  a.selection = select_assets(genes.first(n), c);
  a.weights = normalize_weights(genes.subspan(n, n), a.selection);
  return a;
}

Allocation decode(const Genotype& g, const ConstraintSet& c) {
  return g.scheme == Scheme::kCcs ? ccs_decode(g, c) : dcs_decode(g, c);
}

Portfolio repair(const Allocation& a, const ConstraintSet& c) {
  const std::size_t n = c.n_assets();
  if (a.selection.size() != n || a.weights.size() != n) {
    throw DimensionError("allocation size does not match the constraint set");
  }
  std::vector<std::size_t> held;
  long long floor_sum = 0;
  long long ceiling_sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.selection[i] != 0) {
      held.push_back(i);
      floor_sum += c.floor_lots(i);
      ceiling_sum += c.ceiling_lots(i);
    } else if (c.preassigned(i)) {
      throw ConfigError(fmt::format("pre-assigned asset {} is not selected", i + 1));
    }
  }
  if (held.size() != c.cardinality()) {
    throw ConfigError(fmt::format("{} assets selected, cardinality is {}", held.size(),
                                  c.cardinality()));
  }
  const Lots total = c.lots_per_unit();
  if (floor_sum > total || ceiling_sum < total) {
    throw InfeasibleError(fmt::format(
        "selected assets admit between {} and {} lots, a full investment is {}", floor_sum,
        ceiling_sum, total));
  }

  Portfolio p;
  p.selection = a.selection;
  p.lots.assign(n, 0);
  p.lots_per_unit = total;

  // Steps 1 and 2: floor in lots, then truncate the weight to whole lots.
  long long sum = 0;
  for (std::size_t i : held) {
    const auto truncated = static_cast<Lots>(std::floor(a.weights[i] * total + kLotSlack));
    p.lots[i] = std::clamp(truncated, c.floor_lots(i), c.ceiling_lots(i));
    sum += p.lots[i];
  }

  // Steps 3 and 4: one lot per pass; ties go to the lowest index.
  while (sum > total) {
    std::size_t pick = n;
    for (std::size_t i : held) {
      if (p.lots[i] > c.floor_lots(i) && (pick == n || p.lots[i] > p.lots[pick])) pick = i;
    }
    --p.lots[pick];
    --sum;
  }
  while (sum < total) {
    std::size_t pick = n;
    for (std::size_t i : held) {
      if (p.lots[i] < c.ceiling_lots(i) && (pick == n || p.lots[i] < p.lots[pick])) pick = i;
    }
    ++p.lots[pick];
    ++sum;
  }
  return p;
}

Portfolio decode_and_repair(const Genotype& g, const ConstraintSet& c) {
  return repair(decode(g, c), c);
}

Genotype random_genotype(Scheme scheme, std::size_t n_assets, Rng& rng) {
  Genotype g;
  g.scheme = scheme;
  g.genes.resize(genotype_length(scheme, n_assets));
  for (double& x : g.genes) x = rng.uniform();
  return g;
}

}  // namespace ccsmoea
