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

#include "ccsmoea/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "ccsmoea/errors.hpp"

namespace ccsmoea {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDuplicateTol = 1e-9;

struct Token {
  std::string_view text;
  std::size_t line;
};

// Splits into whitespace-delimited tokens, remembering the source line.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      tokens.push_back({text.substr(start, i - start), line});
    }
  }
  return tokens;
}

double to_real(const Token& tok) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(fmt::format("expected a number, got '{}'", tok.text), tok.line);
  }
  return value;
}

long long to_integer(const Token& tok) {
  long long value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(fmt::format("expected an integer, got '{}'", tok.text), tok.line);
  }
  return value;
}

std::size_t count_tokens_on_line(const std::vector<Token>& tokens, std::size_t pos) {
  std::size_t n = 0;
  const std::size_t line = tokens[pos].line;
  while (pos + n < tokens.size() && tokens[pos + n].line == line) ++n;
  return n;
}

}  // namespace

Instance::Instance(std::string name, std::vector<double> mu, std::vector<double> sigma,
                   std::vector<double> rho)
    : name_(std::move(name)), mu_(std::move(mu)), sigma_(std::move(sigma)), rho_(std::move(rho)) {
  const std::size_t n = mu_.size();
  if (n == 0) throw CompletenessError("instance has no assets");
  if (sigma_.size() != n || rho_.size() != n * n) {
    throw CompletenessError("instance vectors disagree on the asset count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sigma_[i] >= 0.0)) {
      throw CompletenessError(fmt::format("negative standard deviation for asset {}", i + 1));
    }
    rho_[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(rho_[i * n + j] - rho_[j * n + i]) > kSymmetryTol) {
        throw CompletenessError(
            fmt::format("correlation matrix not symmetric at ({}, {})", i + 1, j + 1));
      }
      rho_[j * n + i] = rho_[i * n + j];
    }
  }
  cov_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      // Smaller index first, so cov(i, j) and cov(j, i) are bit-identical.
      const double c = rho_[i * n + j] * sigma_[i] * sigma_[j];
      cov_[i * n + j] = c;
      cov_[j * n + i] = c;
    }
  }
}

double Instance::rho(std::size_t i, std::size_t j) const {
  const std::size_t n = n_assets();
  if (i >= n || j >= n) {
    throw BoundsError(fmt::format("asset index ({}, {}) out of range for {} assets", i, j, n));
  }
  return rho_[i * n + j];
}

double Instance::covariance(std::size_t i, std::size_t j) const {
  const std::size_t n = n_assets();
  if (i >= n || j >= n) {
    throw BoundsError(fmt::format("asset index ({}, {}) out of range for {} assets", i, j, n));
  }
  return cov_[i * n + j];
}

Instance parse_orlibrary(std::string_view text, std::string name, InstanceFormat format) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty instance file", 0);

  const long long declared = to_integer(tokens[0]);
  if (declared <= 0) throw ParseError("asset count must be positive", tokens[0].line);
  const auto n = static_cast<std::size_t>(declared);

  std::size_t pos = 1;
  std::vector<double> mu(n), sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pos + 1 >= tokens.size()) {
      throw ParseError(fmt::format("expected return and deviation for asset {}", i + 1),
                       tokens.back().line);
    }
    mu[i] = to_real(tokens[pos]);
    sigma[i] = to_real(tokens[pos + 1]);
    if (sigma[i] < 0.0) {
      throw ParseError(fmt::format("negative standard deviation for asset {}", i + 1),
                       tokens[pos + 1].line);
    }
    pos += 2;
  }

  if (format == InstanceFormat::kAuto) {
    format = InstanceFormat::kTriplets;
    if (pos < tokens.size() && n != 3 && count_tokens_on_line(tokens, pos) == n) {
      format = InstanceFormat::kDenseMatrix;
    }
  }

  constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> rho(n * n, kUnset);

  if (format == InstanceFormat::kDenseMatrix) {
    if (tokens.size() - pos < n * n) {
      throw CompletenessError(
          fmt::format("dense correlation block needs {} entries, found {}", n * n,
                      tokens.size() - pos));
    }
    for (std::size_t k = 0; k < n * n; ++k) rho[k] = to_real(tokens[pos + k]);
    pos += n * n;
    if (pos != tokens.size()) throw ParseError("trailing tokens after correlation block", tokens[pos].line);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::abs(rho[i * n + j] - rho[j * n + i]) > kDuplicateTol) {
          throw CompletenessError(
              fmt::format("correlation ({}, {}) disagrees between triangles", i + 1, j + 1));
        }
        rho[j * n + i] = rho[i * n + j];
      }
    }
  } else {
    while (pos < tokens.size()) {
      if (pos + 2 >= tokens.size()) {
        throw ParseError("incomplete correlation triplet", tokens[pos].line);
      }
      const long long a = to_integer(tokens[pos]);
      const long long b = to_integer(tokens[pos + 1]);
      const double value = to_real(tokens[pos + 2]);
      if (a < 1 || b < 1 || a > declared || b > declared) {
        throw BoundsError(fmt::format("line {}: correlation index ({}, {}) outside [1, {}]",
                                      tokens[pos].line, a, b, n));
      }
      const auto i = static_cast<std::size_t>(a - 1);
      const auto j = static_cast<std::size_t>(b - 1);
      for (const auto& [r, c] : {std::pair{i, j}, std::pair{j, i}}) {
        double& slot = rho[r * n + c];
        if (!std::isnan(slot) && std::abs(slot - value) > kDuplicateTol) {
          throw CompletenessError(fmt::format(
              "line {}: correlation ({}, {}) given twice with different values",
              tokens[pos].line, a, b));
        }
        slot = value;
      }
      pos += 3;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    rho[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::isnan(rho[i * n + j])) {
        throw CompletenessError(fmt::format("missing correlation for assets ({}, {})", i + 1, j + 1));
      }
    }
  }
  return Instance(std::move(name), std::move(mu), std::move(sigma), std::move(rho));
}

std::string serialize_orlibrary(const Instance& inst) {
  const std::size_t n = inst.n_assets();
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "{}\n", n);
  for (std::size_t i = 0; i < n; ++i) {
    fmt::format_to(std::back_inserter(out), "{} {}\n", inst.mu(i), inst.sigma(i));
  }
  const auto rho = inst.rho_matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      fmt::format_to(std::back_inserter(out), "{} {} {}\n", i + 1, j + 1, rho[i * n + j]);
    }
  }
  return fmt::to_string(out);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::filesystem::path& path, InstanceFormat format) {
  return parse_orlibrary(read_text_file(path), path.stem().string(), format);
}

std::size_t peek_asset_count(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  std::string first;
  in >> first;
  const long long n = to_integer({first, 1});
  if (n <= 0) throw ParseError("asset count must be positive", 1);
  return static_cast<std::size_t>(n);
}

ReferenceFront clean_front(std::vector<FrontPoint> points) {
  const std::size_t total = points.size();
  std::sort(points.begin(), points.end(), [](const FrontPoint& a, const FrontPoint& b) {
    if (a.risk != b.risk) return a.risk < b.risk;
    return a.ret > b.ret;
  });
  ReferenceFront front;
  for (const FrontPoint& p : points) {
    if (front.points.empty() || p.ret > front.points.back().ret) {
      if (!front.points.empty() && p.risk == front.points.back().risk) continue;
      front.points.push_back(p);
    }
  }
  front.removed = total - front.points.size();
  return front;
}

ReferenceFront parse_frontier(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) throw ParseError("empty frontier file", 0);
  if (tokens.size() % 2 != 0) {
    throw ParseError("frontier needs (return, variance) pairs", tokens.back().line);
  }
  std::vector<FrontPoint> points;
  points.reserve(tokens.size() / 2);
  for (std::size_t k = 0; k < tokens.size(); k += 2) {
    if (tokens[k].line != tokens[k + 1].line) {
      throw ParseError("expected 'return variance' on one line", tokens[k].line);
    }
    points.push_back({to_real(tokens[k]), to_real(tokens[k + 1])});
  }
  return clean_front(std::move(points));
}

ReferenceFront load_frontier(const std::filesystem::path& path) {
  return parse_frontier(read_text_file(path));
}

}  // namespace ccsmoea
