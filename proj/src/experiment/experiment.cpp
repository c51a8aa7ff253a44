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

#include "graphsynth/experiment/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "graphsynth/error.hpp"
#include "graphsynth/rng/permutation.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "json.hpp"

namespace graphsynth::experiment {

std::vector<std::uint64_t> geometric_group_sizes(Id n, std::size_t k, double p) {
  if (k == 0) throw ConfigError("experiment needs at least one value");
  if (n < k) {
    throw ConfigError("experiment needs at least as many nodes as values (" +
                      std::to_string(n) + " < " + std::to_string(k) + ")");
  }
  if (!(p > 0 && p <= 1)) throw ConfigError("geometric parameter must lie in (0, 1]");
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) {
    w[i] = std::max(p * std::pow(1 - p, static_cast<double>(i)),
                    1.0 / static_cast<double>(k));
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::uint64_t> q(k);
  std::vector<double> remainder(k);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = static_cast<double>(n) * w[i] / total;
    q[i] = static_cast<std::uint64_t>(std::floor(exact));
    remainder[i] = exact - static_cast<double>(q[i]);
    assigned += q[i];
  }
  std::vector<std::size_t> by_remainder(k);
  std::iota(by_remainder.begin(), by_remainder.end(), std::size_t{0});
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) q[by_remainder[i % k]]++;
  return q;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  EdgeTable g;
  if (config.generator == GraphKind::kPlanted) {
    g = structgen::planted_partition_edges(
            config.nodes, config.planted,
            rng::derive_stream(config.seed, "experiment#structure"))
            .edges;
  } else {
    if (config.scale < 1 || config.scale > 40) {
      throw ConfigError("rmat scale must lie in [1, 40]");
    }
    g = structgen::rmat_edges(config.scale, config.rmat,
                              rng::derive_stream(config.seed, "experiment#structure"));
  }
  const Id n = g.tail_count();
  if (g.empty()) throw DataError("experiment graph has no edges");

  ExperimentResult r;
  r.n = n;
  r.m = g.size();
  r.k = config.k;
  r.sizes = geometric_group_sizes(n, config.k, config.geo_p);

  std::vector<std::string> labels(config.k);
  for (std::size_t i = 0; i < config.k; ++i) labels[i] = std::to_string(i);

  const auto ldg_order = rng::random_permutation(
      n, rng::derive_stream(config.seed, "experiment#ldg"));
  const auto ldg = matcher::ldg_partition(g, config.k, r.sizes, ldg_order);
  r.expected = matcher::empirical_joint(g, ldg.assignment, labels);

  const auto target =
      matcher::build_target_matrix(r.expected, r.m, r.sizes, config.target_mode);
  const auto order = rng::random_permutation(
      n, rng::derive_stream(config.seed, "experiment#order"));
  const auto start = std::chrono::steady_clock::now();
  auto state = matcher::sbm_part(g, r.sizes, target, order, {}, config.rule);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (state.fill != r.sizes) throw Error("SBM-Part left a group under- or over-filled");
  r.fill = std::move(state.fill);
  r.observed = matcher::empirical_joint(g, state.assignment, labels);
  r.l1_distance = matcher::distribution_distance(r.expected, r.observed);
  r.cdf = matcher::cdf_report(r.expected, r.observed);
  return r;
}

std::string experiment_report_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["n"] = result.n;
  j["m"] = result.m;
  j["k"] = result.k;
  j["l1_distance"] = result.l1_distance;
  j["seconds"] = result.seconds;
  return j.dump(2) + "\n";
}

}  // namespace graphsynth::experiment
