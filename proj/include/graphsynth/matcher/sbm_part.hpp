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

// Property-to-structure matching.
//
// Nodes of a structure graph are streamed one at a time; each is put in the
// group (property value) whose hypothetical edge-count matrix C is closest to
// the target W in squared Frobenius norm over unordered pairs, balanced by the
// group's remaining capacity c_t = 1 - s_t / q_t. Only edges to already placed
// neighbours count when a node arrives; an edge to a later node is counted
// when that node is placed. Full groups are skipped.
//
// Two balancing rules are offered:
//
//   kBalancedGain (default). After a fraction phi of the nodes is placed
//   (this node included) only about phi^2 of the edges have both ends
//   placed, so C is compared with phi^2 W. The node goes to the group with
//   the largest gain_t * c_t, where gain_t is the drop of ||C - phi^2 W||^2
//   when joining t; a negative gain is divided by c_t instead. Ties go to the
//   larger c_t, then the lowest index.
//
//   kResidualRatio. score(t) = (R + delta_t) / c_t, minimised, where R is
//   ||C - W||^2 and delta_t its change. Ties go to the lowest index. Early in
//   the stream R is far larger than any delta_t, so the capacity factor
//   decides almost every placement.

#ifndef GRAPHSYNTH_MATCHER_SBM_PART_HPP_
#define GRAPHSYNTH_MATCHER_SBM_PART_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graphsynth/matcher/joint.hpp"
#include "graphsynth/store/tables.hpp"

namespace graphsynth::matcher {

enum class TargetMode {
  kCounts,   // W[i][j] = m p({i,j})
  kDensity,  // W[i][i] = 2m p / (q_i (q_i - 1)), W[i][j] = 2m p / (q_i q_j)
};

// W together with the per-cell factor that turns edge counts into W's units
// (1 in counts mode, the density denominators' reciprocal times 2 in density
// mode). The residual compares scale(i,j) * C(i,j) with w(i,j).
struct TargetMatrix {
  Matrix w;
  Matrix scale;
  bool symmetric = true;
  TargetMode mode = TargetMode::kCounts;
};

// Throws DataError when m is 0, the group counts do not match the
// distribution's shape, or density mode divides by zero with a non-zero
// probability. For bipartite distributions `head_sizes` gives the head
// groups; symmetric distributions ignore it.
TargetMatrix build_target_matrix(const JointDistribution& p, Id m,
                                 std::span<const std::uint64_t> sizes,
                                 TargetMode mode = TargetMode::kCounts,
                                 std::span<const std::uint64_t> head_sizes = {});

enum class ScoreRule { kBalancedGain, kResidualRatio };

struct PartitionState {
  std::vector<std::int32_t> assignment;  // -1 while unassigned
  std::vector<std::uint64_t> fill;       // s_t
  Matrix counts;                         // C, symmetric
  double residual = 0;                   // ||scale*C - W||^2 over i <= j
};

// Recomputes the residual of `counts` against `target` from scratch.
double residual_from_scratch(const Matrix& counts, const TargetMatrix& target);

// Called after every placement with the node just placed.
using PlacementObserver =
    std::function<void(Id node, const PartitionState& state)>;

// The graph is read as undirected; tail_count must equal head_count. Throws
// DataError when node_order is not a permutation of the nodes, the group
// sizes do not sum to the node count, or W's shape differs from the sizes.
PartitionState sbm_part(const EdgeTable& g, std::span<const std::uint64_t> sizes,
                        const TargetMatrix& target,
                        std::span<const Id> node_order,
                        const PlacementObserver& observer = {},
                        ScoreRule rule = ScoreRule::kBalancedGain);

// Linear deterministic greedy: the node goes to the non-full group that
// maximises |placed neighbours in t| * (1 - s_t / cap_t). Ties go to the
// larger remaining fraction, then the lowest index. The returned residual is
// ||C||^2.
PartitionState ldg_partition(const EdgeTable& g, std::size_t k,
                             std::span<const std::uint64_t> capacities,
                             std::span<const Id> node_order);

struct BipartitePartition {
  std::vector<std::int32_t> tail_assignment;
  std::vector<std::int32_t> head_assignment;
  std::vector<std::uint64_t> tail_fill;
  std::vector<std::uint64_t> head_fill;
  Matrix counts;  // tail group x head group
  double residual = 0;
};

using BipartiteObserver =
    std::function<void(Id combined_node, const BipartitePartition& state)>;

// node_order ranges over the combined index space: tails are
// 0..tail_count-1, heads follow at tail_count + head id. A tail only touches
// its row of C, a head only its column.
BipartitePartition sbm_part_bipartite(const EdgeTable& g,
                                      std::span<const std::uint64_t> tail_sizes,
                                      std::span<const std::uint64_t> head_sizes,
                                      const TargetMatrix& target,
                                      std::span<const Id> node_order,
                                      const BipartiteObserver& observer = {},
                                      ScoreRule rule = ScoreRule::kBalancedGain);

// q_t = number of rows of `pt` whose formatted value is labels[t]. Throws
// DataError for a value that is not among the labels.
std::vector<std::uint64_t> group_sizes(const PropertyTable& pt,
                                       const std::vector<std::string>& labels);

// f: structure node -> property-table id. Within each group, nodes in
// ascending id receive the ids of the group's value in ascending order.
// Throws DataError when group fills differ from the value frequencies.
std::vector<Id> build_mapping(std::span<const std::int32_t> assignment,
                              const std::vector<std::string>& labels,
                              const PropertyTable& pt);

}  // namespace graphsynth::matcher

#endif  // GRAPHSYNTH_MATCHER_SBM_PART_HPP_
