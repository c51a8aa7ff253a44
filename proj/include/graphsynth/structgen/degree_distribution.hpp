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

#ifndef GRAPHSYNTH_STRUCTGEN_DEGREE_DISTRIBUTION_HPP_
#define GRAPHSYNTH_STRUCTGEN_DEGREE_DISTRIBUTION_HPP_

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace graphsynth::structgen {

// Discrete distribution over non-negative degrees, sampled by inverse
// transform.
class DegreeDistribution {
 public:
  DegreeDistribution() = default;
  // Throws DataError on negative probabilities, repeated degrees or a total
  // that is not 1 within 1e-9.
  explicit DegreeDistribution(
      std::vector<std::pair<std::uint64_t, double>> support);

  static DegreeDistribution point(std::uint64_t degree);
  // Truncated where the remaining tail mass drops below 1e-15, then
  // renormalised.
  static DegreeDistribution poisson(double lambda);
  // On {0, 1, 2, ...} with the given mean; truncated like poisson().
  static DegreeDistribution geometric(double mean);
  // CSV rows `degree,probability`; a `degree,probability` header is skipped.
  // Totals within 1e-6 of 1 are accepted and renormalised.
  static DegreeDistribution load(const std::filesystem::path& path);

  const std::vector<std::pair<std::uint64_t, double>>& support() const {
    return support_;
  }
  double mean() const { return mean_; }
  std::uint64_t max_degree() const;
  double probability(std::uint64_t degree) const;
  // u in [0, 1).
  std::uint64_t sample(double u) const;

 private:
  static DegreeDistribution from_weights(std::vector<double> weights);

  std::vector<std::pair<std::uint64_t, double>> support_;
  std::vector<double> cumulative_;
  double mean_ = 0;
};

}  // namespace graphsynth::structgen

#endif  // GRAPHSYNTH_STRUCTGEN_DEGREE_DISTRIBUTION_HPP_
