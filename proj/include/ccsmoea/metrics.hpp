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

#ifndef CCSMOEA_METRICS_HPP_
#define CCSMOEA_METRICS_HPP_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "ccsmoea/instance.hpp"
#include "ccsmoea/problem.hpp"

namespace ccsmoea {

// Objective point in minimization form: (risk, -return).
using Point2 = std::array<double, 2>;

// a <= b componentwise with at least one strict inequality.
inline bool dominates(const Point2& a, const Point2& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

Point2 to_point(const FrontPoint& p);
Point2 to_point(const ObjectiveVector& v);

// Affine map sending the reference front's per-objective range onto [0, 1].
// Obtained points are mapped by the same bounds and are not clipped.
class FrontNormalizer {
 public:
  explicit FrontNormalizer(std::span<const Point2> reference);

  Point2 operator()(const Point2& p) const;
  std::vector<Point2> operator()(std::span<const Point2> points) const;

  const Point2& lower() const { return lower_; }
  const Point2& upper() const { return upper_; }

 private:
  Point2 lower_;
  Point2 upper_;
};

// Mean over reference points of the distance to the nearest obtained
// point. Throws std::invalid_argument on an empty set.
double igd(std::span<const Point2> obtained, std::span<const Point2> reference);

// Exact area dominated by `points` and bounded by `ref`, by a sort and sweep.
// Points not strictly better than `ref` in both objectives add nothing.
double hypervolume_2d(std::span<const Point2> points, const Point2& ref);

inline constexpr Point2 kIhReferencePoint{1.2, 1.2};

// Hypervolume shortfall against the reference front: HV(reference) -
// HV(obtained). Negative when the obtained front covers more. Throws
// std::invalid_argument on an empty obtained set.
double ih(std::span<const Point2> obtained, std::span<const Point2> reference,
          const Point2& ref = kIhReferencePoint);

enum class Comparison { kBetter, kWorse, kEqual };

char symbol(Comparison c);  // '+', '-', '='

struct RankSumResult {
  double u_statistic = 0.0;  // U for sample a
  double z = 0.0;
  double p_value = 1.0;
  Comparison outcome = Comparison::kEqual;
};

// Two-sided Mann-Whitney U test (normal approximation, tie correction,
// continuity correction). Lower values are better: a significant result
// with a lower median for `a` is kBetter. Throws std::invalid_argument
// when either sample has fewer than two values.
RankSumResult rank_sum(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

inline Comparison rank_sum_test(std::span<const double> a, std::span<const double> b,
                                double alpha = 0.05) {
  return rank_sum(a, b, alpha).outcome;
}

// Ascending ranks, ties sharing the average rank. Rank 1 is the smallest.
std::vector<double> average_ranks(std::span<const double> values);

// results[algorithm][instance]; per instance, algorithms are ranked by
// ascending value and the ranks are averaged over instances.
std::vector<double> mean_rank(const std::vector<std::vector<double>>& results);

// Per-instance ranks (same layout as `results`).
std::vector<std::vector<double>> instance_ranks(const std::vector<std::vector<double>>& results);

double median(std::vector<double> values);
double mean(std::span<const double> values);
// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(std::span<const double> values);

}  // namespace ccsmoea

#endif  // CCSMOEA_METRICS_HPP_
