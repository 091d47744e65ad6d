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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "ccsmoea/encoding.hpp"
#include "ccsmoea/errors.hpp"
#include "support.hpp"

using namespace ccsmoea;

namespace {

const std::vector<double> kFig5{0.81, 0.91, 0.13, 0.91, 0.63};

// Sort every free asset by (gene desc, index asc) and take the first K - L.
std::vector<std::uint8_t> rank_oracle(const std::vector<double>& genes, const ConstraintSet& c) {
  const std::size_t n = genes.size();
  std::vector<std::size_t> order;
  std::vector<std::uint8_t> s(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.preassigned(i)) s[i] = 1;
    else order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return genes[a] > genes[b]; });
  for (std::size_t k = 0; k < c.cardinality() - c.n_preassigned(); ++k) s[order[k]] = 1;
  return s;
}

// Straight-line integer repair.
std::vector<Lots> repair_oracle(const Allocation& a, const ConstraintSet& c) {
  const Lots t = c.lots_per_unit();
  std::vector<Lots> y(a.weights.size(), 0);
  Lots sum = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!a.selection[i]) continue;
    Lots v = static_cast<Lots>(std::floor(a.weights[i] * t + 1e-9));
    v = std::max(v, c.floor_lots(i));
    v = std::min(v, c.ceiling_lots(i));
    y[i] = v;
    sum += v;
  }
  while (sum != t) {
    long best = -1;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!a.selection[i]) continue;
      if (sum > t && y[i] > c.floor_lots(i) && (best < 0 || y[i] > y[best])) best = static_cast<long>(i);
      if (sum < t && y[i] < c.ceiling_lots(i) && (best < 0 || y[i] < y[best])) best = static_cast<long>(i);
    }
    REQUIRE(best >= 0);
    const Lots step = sum > t ? -1 : 1;
    y[static_cast<std::size_t>(best)] += step;
    sum += step;
  }
  return y;
}

std::vector<double> scaled(const std::vector<double>& v, double d) {
  std::vector<double> out;
  for (double x : v) out.push_back(x / d);
  return out;
}

}  // namespace

TEST_CASE("CCS decode of the five-asset example") {
  const ConstraintSet c = ConstraintSet::uniform(5, 2, 0.01, 1.0, 0.008, {});
  const Allocation a = ccs_decode({Scheme::kCcs, kFig5}, c);
  CHECK(a.selection == std::vector<std::uint8_t>{0, 1, 0, 1, 0});
  CHECK(a.weights == std::vector<double>{0.0, 0.5, 0.0, 0.5, 0.0});
}

TEST_CASE("CCS decode with asset 5 pre-assigned") {
  const ConstraintSet c = ConstraintSet::uniform(5, 2, 0.01, 1.0, 0.008, {4});
  const Allocation a = ccs_decode({Scheme::kCcs, kFig5}, c);
  CHECK(a.selection == std::vector<std::uint8_t>{0, 1, 0, 0, 1});
  CHECK(a.selection == rank_oracle(kFig5, c));
  const std::vector<double> expect = scaled({0, 0.91, 0, 0, 0.63}, 0.91 + 0.63);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a.weights[i] == doctest::Approx(expect[i]).epsilon(1e-15));
}

TEST_CASE("K = N selects everything") {
  const ConstraintSet c = ConstraintSet::uniform(5, 5, 0.0, 1.0, 0.008, {});
  const Allocation a = ccs_decode({Scheme::kCcs, kFig5}, c);
  const double total = std::accumulate(kFig5.begin(), kFig5.end(), 0.0);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.selection[i] == 1);
    CHECK(a.weights[i] == doctest::Approx(kFig5[i] / total).epsilon(1e-15));
  }
}

TEST_CASE("all-zero selected genes give equal weights") {
  const ConstraintSet c = ConstraintSet::uniform(4, 2, 0.0, 1.0, 0.008, {});
  const Allocation a = ccs_decode({Scheme::kCcs, {0, 0, 0, 0}}, c);
  CHECK(a.selection == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(a.weights == std::vector<double>{0.5, 0.5, 0.0, 0.0});
}

TEST_CASE("DCS decode of the five-asset example") {
  const ConstraintSet c = ConstraintSet::uniform(5, 2, 0.01, 1.0, 0.008, {});
  const Genotype g{Scheme::kDcs, {0, 1, 0, 1, 0, 0.81, 0.28, 0.13, 0.96, 0.63}};
  const Allocation a = dcs_decode(g, c);
  CHECK(a.selection == std::vector<std::uint8_t>{0, 1, 0, 1, 0});
  const std::vector<double> two_dp{0.0, 0.23, 0.0, 0.77, 0.0};
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(std::round(a.weights[i] * 100.0) / 100.0 == doctest::Approx(two_dp[i]).epsilon(1e-12));

  const Allocation u = dcs_decode({Scheme::kDcs, {0, 1, 0, 1, 0, .4, .4, .4, .4, .4}}, c);
  CHECK(u.weights == std::vector<double>{0.0, 0.5, 0.0, 0.5, 0.0});
}

TEST_CASE("DCS decode composes the selection rule with normalization") {
  Rng rng(11);
  const ConstraintSet c = ConstraintSet::uniform(8, 3, 0.0, 1.0, 0.008, {});
  for (int trial = 0; trial < 100; ++trial) {
    const Genotype g = random_genotype(Scheme::kDcs, 8, rng);
    const std::vector<double> first(g.genes.begin(), g.genes.begin() + 8);
    const std::vector<double> second(g.genes.begin() + 8, g.genes.end());
    const std::vector<std::uint8_t> s = rank_oracle(first, c);
    double total = 0.0;
    for (std::size_t i = 0; i < 8; ++i) total += s[i] * second[i];
    const Allocation a = dcs_decode(g, c);
    CHECK(a.selection == s);
    for (std::size_t i = 0; i < 8; ++i)
      CHECK(a.weights[i] == doctest::Approx(s[i] * second[i] / total).epsilon(1e-14));
  }
}

TEST_CASE("CCS selection matches the rank oracle and ignores monotone transforms") {
  Rng rng(12);
  const ConstraintSet c = ConstraintSet::uniform(31, 10, 0.01, 1.0, 0.008, {29});
  for (int trial = 0; trial < 200; ++trial) {
    Genotype g = random_genotype(Scheme::kCcs, 31, rng);
    if (trial % 4 == 0) g.genes[3] = g.genes[7] = g.genes[20];  // ties
    const Allocation a = ccs_decode(g, c);
    CHECK(a.selection == rank_oracle(g.genes, c));
    Genotype sq = g;
    for (double& x : sq.genes) x = x * x;
    CHECK(ccs_decode(sq, c).selection == a.selection);
    CHECK(decode_and_repair(g, c) == decode_and_repair(g, c));
  }
}

TEST_CASE("decoders reject the wrong length or scheme") {
  const ConstraintSet c = ConstraintSet::uniform(5, 2, 0.01, 1.0, 0.008, {});
  CHECK_THROWS_AS(ccs_decode({Scheme::kCcs, {0.1, 0.2}}, c), DimensionError);
  CHECK_THROWS_AS(dcs_decode({Scheme::kCcs, kFig5}, c), DimensionError);
}

TEST_CASE("repair example: truncation then one lot to the smallest") {
  const ConstraintSet c = ConstraintSet::uniform(2, 2, 0.01, 1.0, 0.008, {});
  const Portfolio p = repair({{1, 1}, {0.23, 0.77}}, c);
  CHECK(p.lots == std::vector<Lots>{29, 96});
  CHECK(p.weight(0) == 0.232);
  CHECK(p.weight(1) == 0.768);
}

TEST_CASE("repair raises a tiny weight to the floor") {
  const ConstraintSet c = ConstraintSet::uniform(2, 2, 0.01, 1.0, 0.008, {});
  const Portfolio p = repair({{1, 1}, {0.005, 0.995}}, c);
  CHECK(p.lots[0] == 2);
  CHECK(p.weight(0) == 0.016);
  CHECK(p.lots[0] + p.lots[1] == 125);
}

TEST_CASE("repair leaves feasible portfolios alone") {
  const ConstraintSet c = ConstraintSet::uniform(5, 2, 0.01, 1.0, 0.008, {});
  const Portfolio p = repair({{0, 1, 0, 1, 0}, {0, 0.232, 0, 0.768, 0}}, c);
  CHECK(p.lots == std::vector<Lots>{0, 29, 0, 96, 0});
}

TEST_CASE("repair errors") {
  const ConstraintSet c = ConstraintSet::uniform(5, 2, 0.01, 1.0, 0.008, {0});
  CHECK_THROWS_AS(repair({{0, 1, 0, 1, 0}, {0, .5, 0, .5, 0}}, c), ConfigError);
  CHECK_THROWS_AS(repair({{1, 1, 0, 1, 0}, {.3, .3, 0, .4, 0}}, c), ConfigError);

  // Asset-specific floors: assets 1 and 2 together cannot fit.
  const ConstraintSet heavy(2, {0.6, 0.6, 0.01}, {1.0, 1.0, 1.0}, {false, false, false}, 0.008);
  CHECK_THROWS_AS(repair({{1, 1, 0}, {.5, .5, 0}}, heavy), InfeasibleError);
  CHECK_NOTHROW(repair({{1, 0, 1}, {.5, 0, .5}}, heavy));
}

TEST_CASE("repair agrees with the integer oracle on random allocations") {
  Rng rng(21);
  const ConstraintSet c(6, {0.01, 0.05, 0.0, 0.02, 0.1, 0.01, 0.03, 0.0, 0.04, 0.01},
                        {1.0, 0.3, 0.5, 0.25, 0.6, 1.0, 0.4, 0.2, 1.0, 0.35},
                        std::vector<bool>(10, false), 0.01);
  c.ensure_admissible();
  for (int trial = 0; trial < 2000; ++trial) {
    const Genotype g = random_genotype(Scheme::kCcs, 10, rng);
    const Allocation a = ccs_decode(g, c);
    const Portfolio p = repair(a, c);
    CHECK(p.lots == repair_oracle(a, c));
    CHECK(check_feasibility(p, c).overall());
  }
}

TEST_CASE("decode and repair always yield feasible portfolios") {
  const Instance bench = load_instance(testing::data_path("synth31.txt"));
  const Instance small = load_instance(testing::data_path("synth10.txt"));
  const std::vector<std::pair<std::size_t, ConstraintSet>> cases{
      {31, ConstraintSet::uniform(31, 10, 0.01, 1.0, 0.008, {29})},
      {31, ConstraintSet::uniform(31, 15, 0.01, 1.0, 0.008, {4})},
      {10, ConstraintSet::uniform(10, 5, 0.01, 1.0, 0.008, {9})},
      {10, ConstraintSet::uniform(10, 8, 0.01, 1.0, 0.008, {4})},
  };
  Rng rng(2024);
  for (const auto& [n, c] : cases) {
    for (Scheme scheme : {Scheme::kCcs, Scheme::kDcs}) {
      std::size_t ok = 0;
      for (int trial = 0; trial < 10000; ++trial) {
        const Portfolio p = decode_and_repair(random_genotype(scheme, n, rng), c);
        ok += check_feasibility(p, c).overall() ? 1 : 0;
      }
      CHECK(ok == 10000);
    }
  }
  CHECK(small.n_assets() == 10);
  CHECK(bench.n_assets() == 31);
}

TEST_CASE("random genotypes") {
  Rng a(5), b(5);
  const Genotype ccs = random_genotype(Scheme::kCcs, 31, a);
  const Genotype dcs = random_genotype(Scheme::kDcs, 31, a);
  CHECK(ccs.genes.size() == 31);
  CHECK(dcs.genes.size() == 62);
  CHECK(genotype_length(Scheme::kDcs, 31) == 62);
  for (double x : dcs.genes) CHECK((x >= 0.0 && x <= 1.0));
  CHECK(random_genotype(Scheme::kCcs, 31, b) == ccs);
  CHECK(parse_scheme("dcs") == Scheme::kDcs);
  CHECK_THROWS_AS(parse_scheme("binary"), ConfigError);
}
