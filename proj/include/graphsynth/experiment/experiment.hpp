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

// Matching-quality experiment: a graph is partitioned by LDG into k groups
// of geometrically decaying size, the groups become the values of one
// property, and SBM-Part must recover the measured joint distribution from
// the bare structure and the value counts.

#ifndef GRAPHSYNTH_EXPERIMENT_EXPERIMENT_HPP_
#define GRAPHSYNTH_EXPERIMENT_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "graphsynth/matcher/joint.hpp"
#include "graphsynth/matcher/sbm_part.hpp"
#include "graphsynth/structgen/structure.hpp"

namespace graphsynth::experiment {

enum class GraphKind { kPlanted, kRmat };

struct ExperimentConfig {
  GraphKind generator = GraphKind::kPlanted;
  Id nodes = 0;        // planted
  unsigned scale = 0;  // rmat: 2^scale nodes
  std::size_t k = 16;
  double geo_p = 0.4;
  std::uint64_t seed = 42;
  structgen::PlantedParams planted;
  structgen::RmatParams rmat;
  matcher::TargetMode target_mode = matcher::TargetMode::kCounts;
  matcher::ScoreRule rule = matcher::ScoreRule::kBalancedGain;
};

struct ExperimentResult {
  Id n = 0;
  Id m = 0;
  std::size_t k = 0;
  std::vector<std::uint64_t> sizes;  // q
  std::vector<std::uint64_t> fill;   // s after SBM-Part
  matcher::JointDistribution expected;
  matcher::JointDistribution observed;
  double l1_distance = 0;
  double seconds = 0;  // SBM-Part only
  std::vector<matcher::CdfRow> cdf;
};

// q_i = largest-remainder rounding of n w_i / sum(w), w_i = max(geo(p, i), 1/k),
// geo(p, i) = p (1-p)^(i-1) for i = 1..k. Remainder ties go to the lower
// index. Throws ConfigError unless k >= 1, n >= k and 0 < p <= 1.
std::vector<std::uint64_t> geometric_group_sizes(Id n, std::size_t k, double p);

// Throws ConfigError on a bad configuration and DataError when the graph has
// no edges.
ExperimentResult run_experiment(const ExperimentConfig& config);

// {"n", "m", "k", "l1_distance", "seconds"}.
std::string experiment_report_json(const ExperimentResult& result);

}  // namespace graphsynth::experiment

#endif  // GRAPHSYNTH_EXPERIMENT_EXPERIMENT_HPP_
