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

#include "ccsmoea/problem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include <fmt/format.h>

#include "ccsmoea/errors.hpp"

namespace ccsmoea {

namespace {

// Slack for turning real bounds into lot counts: 0.016 / 0.008 must give 2
// lots, not 3.
constexpr double kLotSlack = 1e-9;

}  // namespace

ConstraintSet::ConstraintSet(std::size_t cardinality, std::vector<double> floors,
                             std::vector<double> ceilings, std::vector<bool> preassigned,
                             double lot)
    : cardinality_(cardinality),
      floors_(std::move(floors)),
      ceilings_(std::move(ceilings)),
      preassigned_(std::move(preassigned)),
      lots_per_unit_(0) {
  const std::size_t n = floors_.size();
  if (n == 0) throw ConfigError("constraint set covers no assets");
  if (ceilings_.size() != n || preassigned_.size() != n) {
    throw ConfigError("constraint vectors disagree on the asset count");
  }
  if (!(lot > 0.0 && lot <= 1.0)) throw ConfigError(fmt::format("lot size {} not in (0, 1]", lot));
  const double reciprocal = 1.0 / lot;
  const double rounded = std::round(reciprocal);
  if (std::abs(rounded * lot - 1.0) > kLotSlack) {
    throw ConfigError(fmt::format("lot size {} does not divide 1", lot));
  }
  lots_per_unit_ = static_cast<Lots>(rounded);

  n_preassigned_ = static_cast<std::size_t>(std::count(preassigned_.begin(), preassigned_.end(), true));
  if (cardinality_ == 0 || cardinality_ > n) {
    throw ConfigError(fmt::format("cardinality {} not in [1, {}]", cardinality_, n));
  }
  if (n_preassigned_ > cardinality_) {
    throw ConfigError(fmt::format("{} pre-assigned assets exceed cardinality {}", n_preassigned_,
                                  cardinality_));
  }

  floor_lots_.resize(n);
  ceiling_lots_.resize(n);
  const double t = static_cast<double>(lots_per_unit_);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(floors_[i] >= 0.0 && floors_[i] <= ceilings_[i] && ceilings_[i] <= 1.0)) {
      throw ConfigError(fmt::format("asset {}: need 0 <= floor {} <= ceiling {} <= 1", i + 1,
                                    floors_[i], ceilings_[i]));
    }
    floor_lots_[i] = static_cast<Lots>(std::ceil(floors_[i] * t - kLotSlack));
    ceiling_lots_[i] = static_cast<Lots>(std::floor(ceilings_[i] * t + kLotSlack));
    if (floor_lots_[i] > ceiling_lots_[i]) {
      throw ConfigError(fmt::format("asset {}: no lot multiple lies in [{}, {}]", i + 1,
                                    floors_[i], ceilings_[i]));
    }
  }
}

ConstraintSet ConstraintSet::uniform(std::size_t n_assets, std::size_t cardinality, double floor,
                                     double ceiling, double lot,
                                     const std::vector<std::size_t>& preassigned) {
  std::vector<bool> flags(n_assets, false);
  for (std::size_t i : preassigned) {
    if (i >= n_assets) {
      throw ConfigError(fmt::format("pre-assigned asset {} outside [1, {}]", i + 1, n_assets));
    }
    flags[i] = true;
  }
  return ConstraintSet(cardinality, std::vector<double>(n_assets, floor),
                       std::vector<double>(n_assets, ceiling), std::move(flags), lot);
}

void ConstraintSet::ensure_admissible() const {
  std::vector<Lots> f = floor_lots_;
  std::vector<Lots> c = ceiling_lots_;
  const auto k = static_cast<std::ptrdiff_t>(cardinality_);
  std::partial_sort(f.begin(), f.begin() + k, f.end(), std::greater<>());
  std::partial_sort(c.begin(), c.begin() + k, c.end());
  long long floor_sum = 0;
  long long ceiling_sum = 0;
  for (std::ptrdiff_t i = 0; i < k; ++i) {
    floor_sum += f[i];
    ceiling_sum += c[i];
  }
  if (floor_sum > lots_per_unit_) {
    throw InfeasibleError(fmt::format("floors of {} assets need {} lots, only {} available",
                                      cardinality_, floor_sum, lots_per_unit_));
  }
  if (ceiling_sum < lots_per_unit_) {
    throw InfeasibleError(fmt::format("ceilings of {} assets allow {} lots, {} required",
                                      cardinality_, ceiling_sum, lots_per_unit_));
  }
}

std::vector<double> Portfolio::weights() const {
  std::vector<double> w(lots.size());
  for (std::size_t i = 0; i < lots.size(); ++i) w[i] = weight(i);
  return w;
}

std::vector<std::size_t> Portfolio::held() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (selection[i] != 0) idx.push_back(i);
  }
  return idx;
}

ObjectiveVector evaluate(const Portfolio& p, const Instance& inst) {
  const std::size_t n = inst.n_assets();
  if (p.selection.size() != n || p.lots.size() != n) {
    throw DimensionError(fmt::format("portfolio has {} assets, instance has {}",
                                     p.selection.size(), n));
  }
  const std::vector<std::size_t> held = p.held();
  std::vector<double> w(held.size());
  for (std::size_t a = 0; a < held.size(); ++a) w[a] = p.weight(held[a]);

  const auto cov = inst.covariance_matrix();
  ObjectiveVector out;
  for (std::size_t a = 0; a < held.size(); ++a) {
    const std::size_t i = held[a];
    out.ret += w[a] * inst.mu(i);
    const double* row = cov.data() + i * n;
    double acc = 0.0;
    for (std::size_t b = 0; b < held.size(); ++b) acc += w[b] * row[held[b]];
    out.risk += w[a] * acc;
  }
  return out;
}

FeasibilityReport check_feasibility(const Portfolio& p, const ConstraintSet& c) {
  FeasibilityReport r;
  const std::size_t n = c.n_assets();
  if (p.selection.size() != n || p.lots.size() != n || p.lots_per_unit != c.lots_per_unit()) {
    return r;
  }
  r.binary = std::all_of(p.selection.begin(), p.selection.end(),
                         [](std::uint8_t s) { return s == 0 || s == 1; });
  r.round_lot = std::all_of(p.lots.begin(), p.lots.end(), [](Lots y) { return y >= 0; });

  long long total = 0;
  std::size_t count = 0;
  r.floor_ceiling = true;
  r.preassignment = true;
  for (std::size_t i = 0; i < n; ++i) {
    total += p.lots[i];
    const bool held = p.selection[i] != 0;
    if (held) ++count;
    if (held) {
      if (p.lots[i] < c.floor_lots(i) || p.lots[i] > c.ceiling_lots(i)) r.floor_ceiling = false;
    } else if (p.lots[i] != 0) {
      r.floor_ceiling = false;
    }
    if (c.preassigned(i) && !held) r.preassignment = false;
  }
  r.sum_to_one = total == c.lots_per_unit();
  r.cardinality = count == c.cardinality();
  return r;
}

std::string FeasibilityReport::to_string() const {
  auto line = [](const char* name, bool ok) {
    return fmt::format("{}: {}\n", name, ok ? "ok" : "violated");
  };
  return line("sum_to_one", sum_to_one) + line("cardinality", cardinality) +
         line("floor_ceiling", floor_ceiling) + line("preassignment", preassignment) +
         line("round_lot", round_lot) + line("binary", binary);
}

}  // namespace ccsmoea
