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

// Shared fixtures for the unit tests.

#ifndef CCSMOEA_TESTS_SUPPORT_HPP_
#define CCSMOEA_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "ccsmoea/instance.hpp"
#include "ccsmoea/problem.hpp"
#include "ccsmoea/rng.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& file) {
  return std::filesystem::path(CCSMOEA_DATA_DIR) / file;
}

// One-factor correlation, so the covariance is positive semidefinite.
inline ccsmoea::Instance random_instance(std::size_t n, std::uint64_t seed) {
  ccsmoea::Rng rng(seed);
  std::vector<double> mu(n), sigma(n), beta(n), rho(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    mu[i] = rng.uniform(-0.002, 0.01);
    sigma[i] = rng.uniform(0.01, 0.08);
    beta[i] = rng.uniform(0.1, 0.9);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho[i * n + j] = i == j ? 1.0 : beta[i] * beta[j];
  return ccsmoea::Instance("random" + std::to_string(n), mu, sigma, rho);
}

// Full N x N double loop over every weight, selected or not.
inline ccsmoea::ObjectiveVector dense_evaluate(const std::vector<double>& w,
                                               const ccsmoea::Instance& inst) {
  ccsmoea::ObjectiveVector v;
  const std::size_t n = inst.n_assets();
  for (std::size_t i = 0; i < n; ++i) {
    v.ret += w[i] * inst.mu(i);
    for (std::size_t j = 0; j < n; ++j)
      v.risk += w[i] * w[j] * inst.rho(i, j) * inst.sigma(i) * inst.sigma(j);
  }
  return v;
}

inline bool close_rel(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testing

#endif  // CCSMOEA_TESTS_SUPPORT_HPP_
