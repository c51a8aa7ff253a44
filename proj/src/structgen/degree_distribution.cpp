// Copyright 2026 The graphsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphsynth/structgen/degree_distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "graphsynth/error.hpp"
#include "graphsynth/store/csv.hpp"

namespace graphsynth::structgen {
namespace {

constexpr double kTailMass = 1e-15;

}  // namespace

DegreeDistribution::DegreeDistribution(
    std::vector<std::pair<std::uint64_t, double>> support)
    : support_(std::move(support)) {
  if (support_.empty()) throw DataError("degree distribution is empty");
  std::sort(support_.begin(), support_.end());
  double total = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    const auto& [degree, p] = support_[i];
    if (!(p >= 0) || !std::isfinite(p)) {
      throw DataError("degree " + std::to_string(degree) +
                      ": probability must be a finite non-negative number");
    }
    if (i > 0 && support_[i - 1].first == degree) {
      throw DataError("degree " + std::to_string(degree) + " listed twice");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DataError("degree probabilities sum to " + std::to_string(total) +
                    ", expected 1");
  }
  cumulative_.reserve(support_.size());
  double acc = 0;
  for (const auto& [degree, p] : support_) {
    acc += p;
    cumulative_.push_back(acc);
    mean_ += static_cast<double>(degree) * p;
  }
  cumulative_.back() = 1.0;
}

DegreeDistribution DegreeDistribution::from_weights(
    std::vector<double> weights) {
  double total = 0;
  for (double w : weights) total += w;
  std::vector<std::pair<std::uint64_t, double>> support;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0) support.emplace_back(k, weights[k] / total);
  }
  // Renormalise once more so the sum check sees rounding noise only.
  double again = 0;
  for (const auto& [k, p] : support) again += p;
  for (auto& [k, p] : support) p /= again;
  return DegreeDistribution(std::move(support));
}

DegreeDistribution DegreeDistribution::point(std::uint64_t degree) {
  return DegreeDistribution({{degree, 1.0}});
}

DegreeDistribution DegreeDistribution::poisson(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda) || lambda > 1e6) {
    throw DataError("poisson mean must be in (0, 1e6]");
  }
  // Work in log space so large means do not underflow at k = 0.
  std::vector<double> weights;
  for (std::uint64_t k = 0;; ++k) {
    const double kd = static_cast<double>(k);
    const double w = std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1));
    weights.push_back(w);
    // Past the mode the tail is bounded by a geometric series of ratio 1/2
    // once k >= 2 lambda.
    if (kd >= 2 * lambda && w < kTailMass) break;
  }
  return from_weights(std::move(weights));
}

DegreeDistribution DegreeDistribution::geometric(double mean) {
  if (!(mean > 0) || !std::isfinite(mean) || mean > 1e6) {
    throw DataError("geometric mean must be in (0, 1e6]");
  }
  const double p = 1.0 / (1.0 + mean);
  std::vector<double> weights;
  // The mass beyond degree k is (1-p)^(k+1).
  for (std::uint64_t k = 0; std::pow(1 - p, static_cast<double>(k)) >= kTailMass; ++k) {
    weights.push_back(p * std::pow(1 - p, static_cast<double>(k)));
  }
  return from_weights(std::move(weights));
}

DegreeDistribution DegreeDistribution::load(const std::filesystem::path& path) {
  const auto rows = read_csv_file(path);
  std::vector<std::pair<std::uint64_t, double>> support;
  double total = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    const auto where = path.string() + ":" + std::to_string(rows[r].line);
    if (r == 0 && f.size() == 2 && f[0] == "degree") continue;
    if (f.size() != 2) throw DataError(where + ": expected degree,probability");
    std::uint64_t degree = 0;
    const char* end0 = f[0].data() + f[0].size();
    auto [p0, e0] = std::from_chars(f[0].data(), end0, degree);
    double prob = 0;
    const char* end1 = f[1].data() + f[1].size();
    auto [p1, e1] = std::from_chars(f[1].data(), end1, prob);
    if (e0 != std::errc() || p0 != end0) {
      throw DataError(where + ": degree must be a non-negative integer");
    }
    if (e1 != std::errc() || p1 != end1) {
      throw DataError(where + ": probability must be a number");
    }
    total += prob;
    support.emplace_back(degree, prob);
  }
  if (support.empty()) throw DataError(path.string() + ": no degrees");
  if (std::abs(total - 1.0) > 1e-6) {
    throw DataError(path.string() + ": probabilities sum to " +
                    std::to_string(total) + ", expected 1");
  }
  for (auto& [d, p] : support) p /= total;
  double again = 0;
  for (const auto& [d, p] : support) again += p;
  for (auto& [d, p] : support) p /= again;
  try {
    return DegreeDistribution(std::move(support));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::uint64_t DegreeDistribution::max_degree() const {
  for (auto it = support_.rbegin(); it != support_.rend(); ++it) {
    if (it->second > 0) return it->first;
  }
  return 0;
}

double DegreeDistribution::probability(std::uint64_t degree) const {
  const auto it = std::lower_bound(
      support_.begin(), support_.end(), degree,
      [](const auto& entry, std::uint64_t d) { return entry.first < d; });
  return it != support_.end() && it->first == degree ? it->second : 0.0;
}

std::uint64_t DegreeDistribution::sample(double u) const {
  if (support_.empty()) throw DataError("sampling an empty degree distribution");
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto index = std::min<std::size_t>(it - cumulative_.begin(),
                                           support_.size() - 1);
  return support_[index].first;
}

}  // namespace graphsynth::structgen
