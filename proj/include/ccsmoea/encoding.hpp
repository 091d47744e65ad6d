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

#ifndef CCSMOEA_ENCODING_HPP_
#define CCSMOEA_ENCODING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccsmoea/problem.hpp"
#include "ccsmoea/rng.hpp"

namespace ccsmoea {

// CCS: one real vector of length N drives both selection (by rank) and
// weights (by normalized value).
// DCS: two real vectors of length N; the first drives selection by the same
// rank rule, the second drives weights.
enum class Scheme { kCcs, kDcs };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);

struct Genotype {
  Scheme scheme = Scheme::kCcs;
  std::vector<double> genes;

  // Number of assets encoded (genes.size() or genes.size() / 2).
  std::size_t n_assets() const {
    return scheme == Scheme::kCcs ? genes.size() : genes.size() / 2;
  }
  friend bool operator==(const Genotype&, const Genotype&) = default;
};

std::size_t genotype_length(Scheme scheme, std::size_t n_assets);

// Decoded but unrepaired portfolio: real weights summing to one over the
// selection.
struct Allocation {
  std::vector<std::uint8_t> selection;
  std::vector<double> weights;
};

// Pre-assigned assets plus the K - L highest-gene free assets. Equal genes
// go to the lower index. `rank_genes` has one entry per asset.
std::vector<std::uint8_t> select_assets(std::span<const double> rank_genes, const ConstraintSet& c);

// w_i = s_i g_i / sum_j s_j g_j; equal weights when the selected genes sum
// to zero.
std::vector<double> normalize_weights(std::span<const double> weight_genes,
                                      std::span<const std::uint8_t> selection);

// Throw ConfigError when L > K and DimensionError on a length mismatch.
Allocation ccs_decode(const Genotype& g, const ConstraintSet& c);
Allocation dcs_decode(const Genotype& g, const ConstraintSet& c);
Allocation decode(const Genotype& g, const ConstraintSet& c);

// Integer-lot repair: raise to floors, truncate to whole lots, then move one
// lot at a time (off the largest holding, onto the smallest) until the lots
// sum to one unit. Throws InfeasibleError when the selected assets' floors
// or ceilings cannot admit a full investment, and ConfigError when the
// selection does not hold exactly K assets including the pre-assigned ones.
Portfolio repair(const Allocation& a, const ConstraintSet& c);

// decode followed by repair.
Portfolio decode_and_repair(const Genotype& g, const ConstraintSet& c);

// i.i.d. uniform genes on [0, 1].
Genotype random_genotype(Scheme scheme, std::size_t n_assets, Rng& rng);

}  // namespace ccsmoea

#endif  // CCSMOEA_ENCODING_HPP_
