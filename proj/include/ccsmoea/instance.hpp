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

#ifndef CCSMOEA_INSTANCE_HPP_
#define CCSMOEA_INSTANCE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ccsmoea {

// Asset universe of a mean-variance problem. Immutable after construction;
// the dense covariance matrix is materialized once.
class Instance {
 public:
  // `rho` is row-major n x n. Throws CompletenessError when the inputs are
  // inconsistent (sizes, asymmetry beyond 1e-12, negative sigma).
  Instance(std::string name, std::vector<double> mu, std::vector<double> sigma,
           std::vector<double> rho);

  const std::string& name() const { return name_; }
  std::size_t n_assets() const { return mu_.size(); }
  std::span<const double> mu() const { return mu_; }
  std::span<const double> sigma() const { return sigma_; }

  double mu(std::size_t i) const { return mu_[i]; }
  double sigma(std::size_t i) const { return sigma_[i]; }

  // Bounds-checked correlation and covariance lookups (0-based).
  double rho(std::size_t i, std::size_t j) const;
  double covariance(std::size_t i, std::size_t j) const;

  // Unchecked row-major views for hot loops.
  std::span<const double> rho_matrix() const { return rho_; }
  std::span<const double> covariance_matrix() const { return cov_; }

 private:
  std::string name_;
  std::vector<double> mu_;
  std::vector<double> sigma_;
  std::vector<double> rho_;
  std::vector<double> cov_;
};

// Correlation block layout. kTriplets is the OR-Library layout ("i j rho"
// per line, 1-based, at least the upper triangle). kDenseMatrix is the
// variant accepted for other distributions: n rows of n correlations.
enum class InstanceFormat { kAuto, kTriplets, kDenseMatrix };

Instance parse_orlibrary(std::string_view text, std::string name = "instance",
                         InstanceFormat format = InstanceFormat::kAuto);

// Writes the OR-Library layout (upper-triangle triplets) with round-trip
// precision.
std::string serialize_orlibrary(const Instance& inst);

Instance load_instance(const std::filesystem::path& path,
                       InstanceFormat format = InstanceFormat::kAuto);

// Only the header of an instance file: the asset count.
std::size_t peek_asset_count(const std::filesystem::path& path);

struct FrontPoint {
  double ret = 0.0;
  double risk = 0.0;
  friend bool operator==(const FrontPoint&, const FrontPoint&) = default;
};

// Reference efficient frontier, sorted by strictly increasing risk with no
// dominated points (minimize risk, maximize return).
struct ReferenceFront {
  std::vector<FrontPoint> points;
  // Points dropped while cleaning (dominated or duplicated).
  std::size_t removed = 0;
};

// Parses "return variance" lines.
ReferenceFront parse_frontier(std::string_view text);
ReferenceFront load_frontier(const std::filesystem::path& path);

// Sorts by risk and drops dominated and duplicate points.
ReferenceFront clean_front(std::vector<FrontPoint> points);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ccsmoea

#endif  // CCSMOEA_INSTANCE_HPP_
