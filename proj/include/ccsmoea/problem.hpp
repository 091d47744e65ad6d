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

#ifndef CCSMOEA_PROBLEM_HPP_
#define CCSMOEA_PROBLEM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccsmoea/instance.hpp"

namespace ccsmoea {

using Lots = std::int32_t;

// Cardinality, floor/ceiling, pre-assignment and round-lot constraints.
//
// The lot size is held as its reciprocal (`lots_per_unit`, 125 for a lot of
// 0.008), so every weight is an integer number of lots and the budget
// constraint is an integer equality.
class ConstraintSet {
 public:
  // Validates the structural invariants and throws ConfigError:
  // matching lengths, 0 <= floor <= ceiling <= 1, L <= K <= N, and a lot
  // size whose reciprocal is an integer.
  ConstraintSet(std::size_t cardinality, std::vector<double> floors, std::vector<double> ceilings,
                std::vector<bool> preassigned, double lot);

  // Same floor, ceiling and lot for every asset; `preassigned` holds 0-based
  // asset indices.
  static ConstraintSet uniform(std::size_t n_assets, std::size_t cardinality, double floor,
                               double ceiling, double lot,
                               const std::vector<std::size_t>& preassigned);

  std::size_t n_assets() const { return floors_.size(); }
  std::size_t cardinality() const { return cardinality_; }
  std::size_t n_preassigned() const { return n_preassigned_; }
  double floor(std::size_t i) const { return floors_[i]; }
  double ceiling(std::size_t i) const { return ceilings_[i]; }
  bool preassigned(std::size_t i) const { return preassigned_[i]; }
  double lot() const { return 1.0 / static_cast<double>(lots_per_unit_); }
  Lots lots_per_unit() const { return lots_per_unit_; }

  // ceil(floor_i / lot) and floor(ceiling_i / lot), in lots.
  Lots floor_lots(std::size_t i) const { return floor_lots_[i]; }
  Lots ceiling_lots(std::size_t i) const { return ceiling_lots_[i]; }

  // Throws InfeasibleError unless every choice of K assets admits a full
  // investment: the K largest floors fit in one unit and the K smallest
  // ceilings reach it.
  void ensure_admissible() const;

 private:
  std::size_t cardinality_;
  std::vector<double> floors_;
  std::vector<double> ceilings_;
  std::vector<bool> preassigned_;
  std::size_t n_preassigned_ = 0;
  Lots lots_per_unit_;
  std::vector<Lots> floor_lots_;
  std::vector<Lots> ceiling_lots_;
};

// Phenotype. `selection[i]` is s_i and `lots[i]` is y_i; w_i = y_i / lots_per_unit.
struct Portfolio {
  std::vector<std::uint8_t> selection;
  std::vector<Lots> lots;
  Lots lots_per_unit = 1;

  std::size_t n_assets() const { return selection.size(); }
  double weight(std::size_t i) const {
    return static_cast<double>(lots[i]) / static_cast<double>(lots_per_unit);
  }
  std::vector<double> weights() const;
  // Selected indices, ascending.
  std::vector<std::size_t> held() const;

  friend bool operator==(const Portfolio&, const Portfolio&) = default;
};

struct ObjectiveVector {
  double risk = 0.0;
  double ret = 0.0;

  // (f1, -f2): both minimized.
  std::array<double, 2> minimization() const { return {risk, -ret}; }
  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

// Portfolio variance and expected return over the held assets only, O(K^2).
// Throws DimensionError when the portfolio and instance sizes differ.
ObjectiveVector evaluate(const Portfolio& p, const Instance& inst);

struct FeasibilityReport {
  bool sum_to_one = false;
  bool cardinality = false;
  bool floor_ceiling = false;
  bool preassignment = false;
  bool round_lot = false;
  bool binary = false;

  bool overall() const {
    return sum_to_one && cardinality && floor_ceiling && preassignment && round_lot && binary;
  }
  // One "family: ok|violated" line per constraint family.
  std::string to_string() const;
};

// Exact integer checks of every constraint family. Never throws; a size
// mismatch makes the affected families false.
FeasibilityReport check_feasibility(const Portfolio& p, const ConstraintSet& c);

}  // namespace ccsmoea

#endif  // CCSMOEA_PROBLEM_HPP_
