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

#include "graphsynth/matcher/sbm_part.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphsynth/error.hpp"
#include "graphsynth/store/value.hpp"

namespace graphsynth::matcher {
namespace {

// Above this many unordered cells the residual is recomputed every
// kRecomputeEvery placements instead of after each one.
constexpr std::size_t kExactCells = 4096;
constexpr std::uint64_t kRecomputeEvery = 1024;

struct Adjacency {
  std::vector<Id> offset;
  std::vector<Id> neighbours;
  std::vector<std::uint64_t> loops;

  std::span<const Id> of(Id v) const {
    return {neighbours.data() + offset[v], neighbours.data() + offset[v + 1]};
  }
};

// Undirected view; a self-loop is kept out of the neighbour lists.
Adjacency undirected(const EdgeTable& g) {
  const Id n = g.tail_count();
  Adjacency a;
  a.offset.assign(n + 1, 0);
  a.loops.assign(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.tail == e.head) {
      a.loops[e.tail]++;
    } else {
      a.offset[e.tail + 1]++;
      a.offset[e.head + 1]++;
    }
  }
  for (Id v = 0; v < n; ++v) a.offset[v + 1] += a.offset[v];
  a.neighbours.resize(a.offset[n]);
  std::vector<Id> next(a.offset.begin(), a.offset.end() - 1);
  for (const Edge& e : g.edges()) {
    if (e.tail == e.head) continue;
    a.neighbours[next[e.tail]++] = e.head;
    a.neighbours[next[e.head]++] = e.tail;
  }
  return a;
}

// Tail -> heads (forward) or head -> tails.
Adjacency one_sided(const EdgeTable& g, bool forward) {
  const Id n = forward ? g.tail_count() : g.head_count();
  Adjacency a;
  a.offset.assign(n + 1, 0);
  a.loops.assign(n, 0);
  for (const Edge& e : g.edges()) a.offset[(forward ? e.tail : e.head) + 1]++;
  for (Id v = 0; v < n; ++v) a.offset[v + 1] += a.offset[v];
  a.neighbours.resize(a.offset[n]);
  std::vector<Id> next(a.offset.begin(), a.offset.end() - 1);
  for (const Edge& e : g.edges()) {
    const Id from = forward ? e.tail : e.head;
    a.neighbours[next[from]++] = forward ? e.head : e.tail;
  }
  return a;
}

void check_order(std::span<const Id> order, Id n) {
  if (order.size() != n) {
    throw DataError("node order has " + std::to_string(order.size()) +
                    " entries for " + std::to_string(n) + " nodes");
  }
  std::vector<bool> seen(n, false);
  for (Id v : order) {
    if (v >= n) throw DataError("node order references unknown node " + std::to_string(v));
    if (seen[v]) throw DataError("node order lists node " + std::to_string(v) + " twice");
    seen[v] = true;
  }
}

void check_sizes(std::span<const std::uint64_t> sizes, Id n, const char* what) {
  if (sizes.empty()) throw DataError(std::string(what) + ": no groups");
  const auto total = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0});
  if (total != n) {
    throw DataError(std::string(what) + " sum to " + std::to_string(total) +
                    " but the graph has " + std::to_string(n) + " nodes");
  }
}

// True when num_a / (1 - s_a/q_a) < num_b / (1 - s_b/q_b); both groups have
// room, so the comparison cross-multiplies positive factors.
bool lower_score(double num_a, std::uint64_t q_a, std::uint64_t s_a,
                 double num_b, std::uint64_t q_b, std::uint64_t s_b) {
  const auto d = [](std::uint64_t x) { return static_cast<double>(x); };
  return num_a * d(q_a) * d(q_b - s_b) < num_b * d(q_b) * d(q_a - s_a);
}

// True when gain a, balanced by its group's room, beats gain b. A positive
// gain is multiplied by c = (q - s) / q, a negative one divided by it.
bool higher_gain(double gain_a, std::uint64_t q_a, std::uint64_t s_a,
                 double gain_b, std::uint64_t q_b, std::uint64_t s_b) {
  const auto d = [](std::uint64_t x) { return static_cast<double>(x); };
  const double room_a = d(q_a - s_a) * d(q_b);
  const double room_b = d(q_b - s_b) * d(q_a);
  if (gain_a > 0 && gain_b > 0) {
    const double a = gain_a * room_a, b = gain_b * room_b;
    if (a != b) return a > b;
  } else if (gain_a < 0 && gain_b < 0) {
    // gain q / (q - s), compared over the common positive denominator.
    const double a = gain_a * d(q_a) * d(q_b - s_b);
    const double b = gain_b * d(q_b) * d(q_a - s_a);
    if (a != b) return a > b;
  } else if (gain_a != gain_b) {
    return gain_a > gain_b;
  }
  return room_a > room_b;
}

// Histogram of already placed neighbours' groups; `nonzero` lists the groups
// with a positive count in first-seen order.
struct Histogram {
  std::vector<double> count;
  std::vector<std::size_t> nonzero;

  explicit Histogram(std::size_t k) : count(k, 0.0) {}

  void fill(std::span<const Id> neighbours,
            const std::vector<std::int32_t>& assignment) {
    for (Id u : neighbours) {
      const auto g = assignment[u];
      if (g < 0) continue;
      if (count[g] == 0) nonzero.push_back(g);
      count[g] += 1;
    }
  }
  void clear() {
    for (auto g : nonzero) count[g] = 0;
    nonzero.clear();
  }
};

}  // namespace

TargetMatrix build_target_matrix(const JointDistribution& p, Id m,
                                 std::span<const std::uint64_t> sizes,
                                 TargetMode mode,
                                 std::span<const std::uint64_t> head_sizes) {
  if (m == 0) throw DataError("target matrix needs at least one edge");
  const bool sym = p.is_symmetric();
  if (!sym && head_sizes.empty()) head_sizes = sizes;
  if (sizes.size() != p.rows() || (!sym && head_sizes.size() != p.cols())) {
    throw DataError("group counts do not match the joint distribution's values");
  }
  const auto q_row = [&](std::size_t i) { return static_cast<double>(sizes[i]); };
  const auto q_col = [&](std::size_t j) {
    return static_cast<double>(sym ? sizes[j] : head_sizes[j]);
  };
  TargetMatrix t{Matrix(p.rows(), p.cols()), Matrix(p.rows(), p.cols(), 1.0), sym, mode};
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (mode == TargetMode::kCounts) {
        t.w(i, j) = md * p.p(i, j);
        continue;
      }
      // Density: pairs available between the two groups.
      const double pairs = sym && i == j ? q_row(i) * (q_row(i) - 1) : q_row(i) * q_col(j);
      const double numerator = (sym ? 2 * md : md) * p.p(i, j);
      const double factor = sym ? 2.0 : 1.0;
      if (pairs <= 0) {
        if (numerator > 0) {
          throw DataError("density target for values (" + p.row_labels()[i] + ", " +
                          p.col_labels()[j] + ") divides by a group of size " +
                          std::to_string(sizes[i]) + (sym && i == j ? "" : " or less"));
        }
        t.w(i, j) = 0;
        t.scale(i, j) = 0;
        continue;
      }
      t.w(i, j) = numerator / pairs;
      t.scale(i, j) = factor / pairs;
    }
  }
  return t;
}

double residual_from_scratch(const Matrix& counts, const TargetMatrix& target) {
  double r = 0;
  for (std::size_t i = 0; i < counts.rows(); ++i) {
    for (std::size_t j = target.symmetric ? i : 0; j < counts.cols(); ++j) {
      const double d = target.scale(i, j) * counts(i, j) - target.w(i, j);
      r += d * d;
    }
  }
  return r;
}

PartitionState sbm_part(const EdgeTable& g, std::span<const std::uint64_t> sizes,
                        const TargetMatrix& target,
                        std::span<const Id> node_order,
                        const PlacementObserver& observer, ScoreRule rule) {
  const Id n = g.tail_count();
  if (g.head_count() != n) {
    throw DataError("sbm_part needs one node set; use sbm_part_bipartite");
  }
  const std::size_t k = sizes.size();
  if (!target.symmetric || target.w.rows() != k || target.w.cols() != k) {
    throw DataError("target matrix shape does not match the group sizes");
  }
  check_sizes(sizes, n, "group sizes");
  check_order(node_order, n);

  const auto adj = undirected(g);
  PartitionState state{std::vector<std::int32_t>(n, -1),
                       std::vector<std::uint64_t>(k, 0), Matrix(k, k), 0};
  // D = scale * C - W, kept in step with C.
  Matrix diff(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) diff(i, j) = -target.w(i, j);
  }
  state.residual = residual_from_scratch(state.counts, target);
  const bool exact = k * (k + 1) / 2 <= kExactCells;

  Histogram h(k);
  std::uint64_t step = 0;
  for (Id v : node_order) {
    h.fill(adj.of(v), state.assignment);
    const double loops = static_cast<double>(adj.loops[v]);
    // Adding h (plus v's self-loops on the diagonal) to row/column t.
    const auto delta_for = [&](std::size_t t) {
      double delta = 0;
      bool diagonal_seen = false;
      for (auto j : h.nonzero) {
        double hj = h.count[j];
        if (j == t) {
          hj += loops;
          diagonal_seen = true;
        }
        const double s = target.scale(t, j);
        delta += s * hj * (2 * diff(t, j) + s * hj);
      }
      if (!diagonal_seen && loops > 0) {
        const double s = target.scale(t, t);
        delta += s * loops * (2 * diff(t, t) + s * loops);
      }
      return delta;
    };

    // Against phi^2 W, scaled by n^2 so integer inputs stay exact:
    // D = n^2 S C - (placed)^2 W.
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const double placed = static_cast<double>(step + 1);
    const auto progress_gain = [&](std::size_t t) {
      const auto term = [&](std::size_t j, double hj) {
        const double s = target.scale(t, j);
        const double d = n2 * s * state.counts(t, j) - placed * placed * target.w(t, j);
        return s * hj * (2 * d + n2 * s * hj);
      };
      double delta = 0;
      bool diagonal_seen = false;
      for (auto j : h.nonzero) {
        diagonal_seen |= j == t;
        delta += term(j, h.count[j] + (j == t ? loops : 0));
      }
      if (!diagonal_seen && loops > 0) delta += term(t, loops);
      return -delta;
    };

    std::size_t best = k;
    double best_key = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if (state.fill[t] >= sizes[t]) continue;
      bool better;
      double key;
      if (rule == ScoreRule::kBalancedGain) {
        key = progress_gain(t);
        better = best == k || higher_gain(key, sizes[t], state.fill[t], best_key,
                                          sizes[best], state.fill[best]);
      } else {
        key = state.residual + delta_for(t);
        better = best == k || lower_score(key, sizes[t], state.fill[t], best_key,
                                          sizes[best], state.fill[best]);
      }
      if (better) {
        best = t;
        best_key = key;
      }
    }
    const double best_delta = delta_for(best);

    const std::size_t t = best;
    state.assignment[v] = static_cast<std::int32_t>(t);
    state.fill[t]++;
    const auto add = [&](std::size_t j, double amount) {
      state.counts(t, j) += amount;
      diff(t, j) = target.scale(t, j) * state.counts(t, j) - target.w(t, j);
      if (j != t) {
        state.counts(j, t) = state.counts(t, j);
        diff(j, t) = diff(t, j);
      }
    };
    bool diagonal_seen = false;
    for (auto j : h.nonzero) {
      diagonal_seen |= j == t;
      add(j, h.count[j] + (j == t ? loops : 0));
    }
    if (!diagonal_seen && loops > 0) add(t, loops);
    h.clear();

    ++step;
    if (exact || step % kRecomputeEvery == 0) {
      state.residual = residual_from_scratch(state.counts, target);
    } else {
      state.residual += best_delta;
    }
    if (observer) observer(v, state);
  }
  state.residual = residual_from_scratch(state.counts, target);
  return state;
}

PartitionState ldg_partition(const EdgeTable& g, std::size_t k,
                             std::span<const std::uint64_t> capacities,
                             std::span<const Id> node_order) {
  const Id n = g.tail_count();
  if (g.head_count() != n) throw DataError("ldg_partition needs one node set");
  if (k == 0 || capacities.size() != k) {
    throw DataError("ldg_partition needs one capacity per group");
  }
  const auto total = std::accumulate(capacities.begin(), capacities.end(), std::uint64_t{0});
  if (total < n) {
    throw DataError("capacities sum to " + std::to_string(total) + " for " +
                    std::to_string(n) + " nodes");
  }
  check_order(node_order, n);
  const auto adj = undirected(g);
  PartitionState state{std::vector<std::int32_t>(n, -1),
                       std::vector<std::uint64_t>(k, 0), Matrix(k, k), 0};
  Histogram h(k);
  const auto d = [](std::uint64_t x) { return static_cast<double>(x); };
  for (Id v : node_order) {
    h.fill(adj.of(v), state.assignment);
    std::size_t best = k;
    for (std::size_t t = 0; t < k; ++t) {
      if (state.fill[t] >= capacities[t]) continue;
      if (best == k) {
        best = t;
        continue;
      }
      // |N_t| (cap_t - s_t) / cap_t against the same for `best`.
      const double room_t = d(capacities[t] - state.fill[t]) * d(capacities[best]);
      const double room_b = d(capacities[best] - state.fill[best]) * d(capacities[t]);
      const double score_t = h.count[t] * room_t;
      const double score_b = h.count[best] * room_b;
      if (score_t > score_b || (score_t == score_b && room_t > room_b)) best = t;
    }
    state.assignment[v] = static_cast<std::int32_t>(best);
    state.fill[best]++;
    for (auto j : h.nonzero) {
      state.counts(best, j) += h.count[j];
      if (j != best) state.counts(j, best) = state.counts(best, j);
    }
    state.counts(best, best) += d(adj.loops[v]);
    h.clear();
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) state.residual += state.counts(i, j) * state.counts(i, j);
  }
  return state;
}

BipartitePartition sbm_part_bipartite(const EdgeTable& g,
                                      std::span<const std::uint64_t> tail_sizes,
                                      std::span<const std::uint64_t> head_sizes,
                                      const TargetMatrix& target,
                                      std::span<const Id> node_order,
                                      const BipartiteObserver& observer,
                                      ScoreRule rule) {
  const Id nt = g.tail_count();
  const Id nh = g.head_count();
  const std::size_t kt = tail_sizes.size();
  const std::size_t kh = head_sizes.size();
  if (target.symmetric || target.w.rows() != kt || target.w.cols() != kh) {
    throw DataError("target matrix shape does not match the group sizes");
  }
  check_sizes(tail_sizes, nt, "tail group sizes");
  check_sizes(head_sizes, nh, "head group sizes");
  check_order(node_order, nt + nh);

  const auto forward = one_sided(g, true);
  const auto backward = one_sided(g, false);
  BipartitePartition state{std::vector<std::int32_t>(nt, -1),
                           std::vector<std::int32_t>(nh, -1),
                           std::vector<std::uint64_t>(kt, 0),
                           std::vector<std::uint64_t>(kh, 0),
                           Matrix(kt, kh), 0};
  Matrix diff(kt, kh);
  for (std::size_t i = 0; i < kt; ++i) {
    for (std::size_t j = 0; j < kh; ++j) diff(i, j) = -target.w(i, j);
  }
  state.residual = residual_from_scratch(state.counts, target);
  const bool exact = kt * kh <= kExactCells;

  Histogram h_tail(kt), h_head(kh);
  const double n2 = static_cast<double>(nt + nh) * static_cast<double>(nt + nh);
  std::uint64_t step = 0;
  for (Id combined : node_order) {
    const bool is_tail = combined < nt;
    const Id v = is_tail ? combined : combined - nt;
    // A tail sees placed heads (columns); a head sees placed tails (rows).
    Histogram& h = is_tail ? h_head : h_tail;
    h.fill(is_tail ? forward.of(v) : backward.of(v),
           is_tail ? state.head_assignment : state.tail_assignment);
    const auto sizes = is_tail ? tail_sizes : head_sizes;
    auto& fill = is_tail ? state.tail_fill : state.head_fill;
    const auto cell = [&](std::size_t group, std::size_t other) {
      return is_tail ? std::pair{group, other} : std::pair{other, group};
    };

    const double placed = static_cast<double>(step + 1);
    const auto delta_for = [&](std::size_t t) {
      double delta = 0;
      for (auto j : h.nonzero) {
        const auto [r, c] = cell(t, j);
        const double s = target.scale(r, c);
        delta += s * h.count[j] * (2 * diff(r, c) + s * h.count[j]);
      }
      return delta;
    };
    const auto progress_gain = [&](std::size_t t) {
      double delta = 0;
      for (auto j : h.nonzero) {
        const auto [r, c] = cell(t, j);
        const double s = target.scale(r, c);
        const double d = n2 * s * state.counts(r, c) - placed * placed * target.w(r, c);
        delta += s * h.count[j] * (2 * d + n2 * s * h.count[j]);
      }
      return -delta;
    };

    std::size_t best = sizes.size();
    double best_key = 0;
    for (std::size_t t = 0; t < sizes.size(); ++t) {
      if (fill[t] >= sizes[t]) continue;
      bool better;
      double key;
      if (rule == ScoreRule::kBalancedGain) {
        key = progress_gain(t);
        better = best == sizes.size() ||
                 higher_gain(key, sizes[t], fill[t], best_key, sizes[best], fill[best]);
      } else {
        key = state.residual + delta_for(t);
        better = best == sizes.size() ||
                 lower_score(key, sizes[t], fill[t], best_key, sizes[best], fill[best]);
      }
      if (better) {
        best = t;
        best_key = key;
      }
    }
    const double best_delta = delta_for(best);
    (is_tail ? state.tail_assignment : state.head_assignment)[v] =
        static_cast<std::int32_t>(best);
    fill[best]++;
    for (auto j : h.nonzero) {
      const auto [r, c] = cell(best, j);
      state.counts(r, c) += h.count[j];
      diff(r, c) = target.scale(r, c) * state.counts(r, c) - target.w(r, c);
    }
    h.clear();
    ++step;
    if (exact || step % kRecomputeEvery == 0) {
      state.residual = residual_from_scratch(state.counts, target);
    } else {
      state.residual += best_delta;
    }
    if (observer) observer(combined, state);
  }
  state.residual = residual_from_scratch(state.counts, target);
  return state;
}

std::vector<std::uint64_t> group_sizes(const PropertyTable& pt,
                                       const std::vector<std::string>& labels) {
  std::vector<std::uint64_t> q(labels.size(), 0);
  for (const Value& v : pt.values()) {
    const auto text = format_value(v);
    const auto it = std::find(labels.begin(), labels.end(), text);
    if (it == labels.end()) {
      throw DataError("value '" + text + "' of " + pt.tag() +
                      " does not appear in the joint distribution");
    }
    q[it - labels.begin()]++;
  }
  return q;
}

std::vector<Id> build_mapping(std::span<const std::int32_t> assignment,
                              const std::vector<std::string>& labels,
                              const PropertyTable& pt) {
  const std::size_t k = labels.size();
  if (assignment.size() != pt.size()) {
    throw DataError("mapping needs as many structure nodes as table rows");
  }
  std::vector<std::vector<Id>> ids(k);
  for (Id id = 0; id < pt.size(); ++id) {
    const auto text = format_value(pt.value(id));
    const auto it = std::find(labels.begin(), labels.end(), text);
    if (it == labels.end()) {
      throw DataError("value '" + text + "' of " + pt.tag() + " has no group");
    }
    ids[it - labels.begin()].push_back(id);
  }
  std::vector<std::uint64_t> fill(k, 0);
  for (auto g : assignment) {
    if (g < 0 || static_cast<std::size_t>(g) >= k) {
      throw DataError("mapping needs every node assigned to a group");
    }
    fill[g]++;
  }
  for (std::size_t t = 0; t < k; ++t) {
    if (fill[t] != ids[t].size()) {
      throw DataError("group '" + labels[t] + "' holds " + std::to_string(fill[t]) +
                      " nodes but " + pt.tag() + " has " +
                      std::to_string(ids[t].size()) + " rows with that value");
    }
  }
  std::vector<Id> f(assignment.size());
  std::vector<std::size_t> next(k, 0);
  for (Id v = 0; v < assignment.size(); ++v) {
    const auto g = assignment[v];
    f[v] = ids[g][next[g]++];
  }
  return f;
}

}  // namespace graphsynth::matcher
