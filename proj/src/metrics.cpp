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

#include "ccsmoea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ccsmoea {

Point2 to_point(const FrontPoint& p) { return {p.risk, -p.ret}; }
Point2 to_point(const ObjectiveVector& v) { return v.minimization(); }

FrontNormalizer::FrontNormalizer(std::span<const Point2> reference) {
  if (reference.empty()) throw std::invalid_argument("normalizing by an empty reference front");
  lower_ = reference.front();
  upper_ = reference.front();
  for (const Point2& p : reference) {
    for (int k = 0; k < 2; ++k) {
      lower_[k] = std::min(lower_[k], p[k]);
      upper_[k] = std::max(upper_[k], p[k]);
    }
  }
}

Point2 FrontNormalizer::operator()(const Point2& p) const {
  Point2 out;
  for (int k = 0; k < 2; ++k) {
    const double range = upper_[k] - lower_[k];
    out[k] = range > 0.0 ? (p[k] - lower_[k]) / range : p[k] - lower_[k];
  }
  return out;
}

std::vector<Point2> FrontNormalizer::operator()(std::span<const Point2> points) const {
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back((*this)(p));
  return out;
}

double igd(std::span<const Point2> obtained, std::span<const Point2> reference) {
  if (obtained.empty() || reference.empty()) {
    throw std::invalid_argument("IGD needs non-empty obtained and reference sets");
  }
  double total = 0.0;
  for (const Point2& q : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& s : obtained) {
      const double dx = q[0] - s[0];
      const double dy = q[1] - s[1];
      best = std::min(best, std::sqrt(dx * dx + dy * dy));
    }
    total += best;
  }
  return total / static_cast<double>(reference.size());
}

double hypervolume_2d(std::span<const Point2> points, const Point2& ref) {
  std::vector<Point2> inside;
  inside.reserve(points.size());
  for (const Point2& p : points) {
    if (p[0] < ref[0] && p[1] < ref[1]) inside.push_back(p);
  }
  std::sort(inside.begin(), inside.end());
  double area = 0.0;
  double ceiling = ref[1];
  for (const Point2& p : inside) {
    if (p[1] < ceiling) {
      area += (ref[0] - p[0]) * (ceiling - p[1]);
      ceiling = p[1];
    }
  }
  return area;
}

double ih(std::span<const Point2> obtained, std::span<const Point2> reference, const Point2& ref) {
  if (obtained.empty()) throw std::invalid_argument("IH of an empty obtained set");
  return hypervolume_2d(reference, ref) - hypervolume_2d(obtained, ref);
}

char symbol(Comparison c) {
  switch (c) {
    case Comparison::kBetter:
      return '+';
    case Comparison::kWorse:
      return '-';
    case Comparison::kEqual:
      return '=';
  }
  return '=';
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share ranks i+1..j+1.
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

RankSumResult rank_sum(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("rank-sum test needs at least two values per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = average_ranks(pooled);

  double rank_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_a += ranks[i];

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }

  RankSumResult r;
  r.u_statistic = rank_a - na * (na + 1.0) / 2.0;
  const double expected = na * nb / 2.0;
  const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) return r;  // every value tied

  const double diff = r.u_statistic - expected;
  const double correction = diff > 0.0 ? 0.5 : (diff < 0.0 ? -0.5 : 0.0);
  r.z = (diff - correction) / std::sqrt(variance);
  r.p_value = std::erfc(std::abs(r.z) / std::sqrt(2.0));
  if (r.p_value >= alpha) return r;

  const double ma = median({a.begin(), a.end()});
  const double mb = median({b.begin(), b.end()});
  bool a_lower = diff < 0.0;
  if (ma != mb) a_lower = ma < mb;
  r.outcome = a_lower ? Comparison::kBetter : Comparison::kWorse;
  return r;
}

std::vector<std::vector<double>> instance_ranks(const std::vector<std::vector<double>>& results) {
  if (results.empty()) return {};
  const std::size_t n_instances = results.front().size();
  for (const auto& row : results) {
    if (row.size() != n_instances) throw std::invalid_argument("ragged results matrix");
  }
  std::vector<std::vector<double>> ranks(results.size(), std::vector<double>(n_instances));
  std::vector<double> column(results.size());
  for (std::size_t j = 0; j < n_instances; ++j) {
    for (std::size_t a = 0; a < results.size(); ++a) column[a] = results[a][j];
    const std::vector<double> r = average_ranks(column);
    for (std::size_t a = 0; a < results.size(); ++a) ranks[a][j] = r[a];
  }
  return ranks;
}

std::vector<double> mean_rank(const std::vector<std::vector<double>>& results) {
  const auto ranks = instance_ranks(results);
  std::vector<double> out(ranks.size(), 0.0);
  for (std::size_t a = 0; a < ranks.size(); ++a) {
    if (!ranks[a].empty()) out[a] = mean(ranks[a]);
  }
  return out;
}

}  // namespace ccsmoea
