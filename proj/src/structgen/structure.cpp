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

#include "graphsynth/structgen/structure.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <tuple>
#include <unordered_set>

#include "graphsynth/error.hpp"
#include "graphsynth/parallel.hpp"
#include "graphsynth/rng/permutation.hpp"

namespace graphsynth::structgen {
namespace {

constexpr int kRmatAttempts = 64;
constexpr int kWiringRounds = 10;
constexpr int kSwapAttempts = 50;

unsigned ceil_log2(Id n) {
  return n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1));
}

Edge rmat_edge(const RmatParams& p, unsigned scale,
               const rng::RandomStream& edge_stream, std::uint64_t attempt) {
  Edge e;
  const double ab = p.a + p.b;
  const double abc = ab + p.c;
  for (unsigned level = 0; level < scale; ++level) {
    const double u = edge_stream.uniform_at(attempt * scale + level);
    const Id bit = Id{1} << (scale - 1 - level);
    if (u < p.a) {
      continue;
    } else if (u < ab) {
      e.head |= bit;
    } else if (u < abc) {
      e.tail |= bit;
    } else {
      e.tail |= bit;
      e.head |= bit;
    }
  }
  return e;
}

std::vector<Edge> drop_repeats(const std::vector<Edge>& edges) {
  struct Key {
    Id lo, hi, index;
  };
  std::vector<Key> keys;
  keys.reserve(edges.size());
  for (Id i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.tail == e.head) continue;
    keys.push_back({std::min(e.tail, e.head), std::max(e.tail, e.head), i});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
    return std::tie(x.lo, x.hi, x.index) < std::tie(y.lo, y.hi, y.index);
  });
  std::vector<bool> keep(edges.size(), false);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i == 0 || keys[i].lo != keys[i - 1].lo || keys[i].hi != keys[i - 1].hi) {
      keep[keys[i].index] = true;
    }
  }
  std::vector<Edge> out;
  for (Id i = 0; i < edges.size(); ++i) {
    if (keep[i]) out.push_back(edges[i]);
  }
  return out;
}

std::vector<Edge> rmat_raw(Id n, unsigned scale, const RmatParams& params,
                           const rng::RandomStream& stream, unsigned threads) {
  const Id m = n * params.edge_factor;
  std::vector<Edge> edges(m);
  parallel_for_ranges(m, threads, [&](Id begin, Id end) {
    for (Id e = begin; e < end; ++e) {
      const auto sub = stream.substream(e);
      Edge edge;
      bool placed = false;
      for (int attempt = 0; attempt < kRmatAttempts; ++attempt) {
        edge = rmat_edge(params, scale, sub, attempt);
        if (edge.tail < n && edge.head < n) {
          placed = true;
          break;
        }
      }
      if (!placed) edge = {edge.tail % n, edge.head % n};
      edges[e] = edge;
    }
  });
  return params.dedup ? drop_repeats(edges) : edges;
}

// Mean of P(k) ~ k^-2 on [k_min, k_max].
double power_law_mean(std::uint64_t k_min, std::uint64_t k_max) {
  double s1 = 0, s2 = 0;
  for (std::uint64_t k = k_min; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    s1 += 1.0 / kd;
    s2 += 1.0 / (kd * kd);
  }
  return s1 / s2;
}

void add_power_law(std::vector<double>& weights, std::uint64_t k_min,
                   std::uint64_t k_max, double mass) {
  double z = 0;
  for (std::uint64_t k = k_min; k <= k_max; ++k) {
    z += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
  }
  for (std::uint64_t k = k_min; k <= k_max; ++k) {
    weights[k] += mass / (static_cast<double>(k) * static_cast<double>(k)) / z;
  }
}

std::uint64_t pair_key(Id u, Id v, Id n) {
  return std::min(u, v) * n + std::max(u, v);
}

// Pairs stubs at random, keeping pairs accepted by `ok` and not yet present.
// Rejected stubs are reshuffled and retried for a bounded number of rounds;
// pairs still left over are then placed by swapping with an edge (x, y) made
// in this call: (x, y) becomes (u, x) and (v, y).
template <typename Ok>
void wire_stubs(std::vector<Id> stubs, const rng::RandomStream& stream, Id n,
                std::unordered_set<std::uint64_t>& present,
                std::vector<Edge>& out, Ok ok) {
  const std::size_t first = out.size();
  for (int round = 0; round < kWiringRounds && stubs.size() >= 2; ++round) {
    rng::shuffle(std::span<Id>(stubs), stream.substream(round));
    std::vector<Id> rejected;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const Id u = stubs[i];
      const Id v = stubs[i + 1];
      if (u != v && ok(u, v) && present.insert(pair_key(u, v, n)).second) {
        out.push_back({u, v});
      } else {
        rejected.push_back(u);
        rejected.push_back(v);
      }
    }
    if (rejected.size() == stubs.size()) break;
    stubs = std::move(rejected);
  }
  rng::StreamCursor cursor(stream.substream(kWiringRounds));
  const auto fits = [&](Id a, Id b) {
    return a != b && ok(a, b) && !present.contains(pair_key(a, b, n));
  };
  for (std::size_t i = 0; i + 1 < stubs.size() && out.size() > first; i += 2) {
    const Id u = stubs[i];
    const Id v = stubs[i + 1];
    for (int attempt = 0; attempt < kSwapAttempts; ++attempt) {
      const std::size_t idx = first + cursor.bounded(out.size() - first);
      const auto [x, y] = out[idx];
      if (!fits(u, x) || !fits(v, y) || pair_key(u, x, n) == pair_key(v, y, n)) {
        continue;
      }
      present.erase(pair_key(x, y, n));
      present.insert(pair_key(u, x, n));
      present.insert(pair_key(v, y, n));
      out[idx] = {u, x};
      out.push_back({v, y});
      break;
    }
  }
}

std::optional<double> parse_number(const std::string& text) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

[[noreturn]] void fail(const StructureContext& context,
                       const dsl::GeneratorBinding& binding,
                       const std::string& message) {
  throw ConfigError(context.owner + ": " + binding.generator_name + "(): " +
                    message);
}

double number(const dsl::GeneratorBinding& b, const StructureContext& c,
              std::string_view key, double fallback) {
  const auto* arg = b.find(key);
  if (!arg) return fallback;
  const auto v = parse_number(arg->text);
  if (!v) fail(c, b, "parameter '" + std::string(key) + "' must be a number");
  return *v;
}

std::uint64_t count(const dsl::GeneratorBinding& b, const StructureContext& c,
                    std::string_view key, std::uint64_t fallback) {
  const double v = number(b, c, key, static_cast<double>(fallback));
  if (v < 0 || v != std::floor(v) || v > 1e15) {
    fail(c, b, "parameter '" + std::string(key) +
                   "' must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

bool flag(const dsl::GeneratorBinding& b, const StructureContext& c,
          std::string_view key) {
  const auto* arg = b.find(key);
  if (!arg) return false;
  if (arg->text == "true" || arg->text == "1") return true;
  if (arg->text == "false" || arg->text == "0") return false;
  fail(c, b, "parameter '" + std::string(key) + "' must be true or false");
}

void check_keys(const dsl::GeneratorBinding& b, const StructureContext& c,
                std::initializer_list<std::string_view> known) {
  for (const auto& arg : b.parameters) {
    if (std::find(known.begin(), known.end(), arg.key) == known.end()) {
      fail(c, b, arg.key.empty() ? "positional arguments are not accepted"
                                 : "unknown parameter '" + arg.key + "'");
    }
  }
}

}  // namespace

void check_rmat_params(const RmatParams& p) {
  for (double x : {p.a, p.b, p.c, p.d}) {
    if (!(x >= 0) || !std::isfinite(x)) {
      throw DataError("rmat probabilities must be finite and non-negative");
    }
  }
  if (std::abs(p.a + p.b + p.c + p.d - 1.0) > 1e-9) {
    throw DataError("rmat probabilities a+b+c+d must sum to 1");
  }
}

EdgeTable rmat_edges(unsigned scale, const RmatParams& params,
                     const rng::RandomStream& stream, unsigned threads) {
  check_rmat_params(params);
  if (scale < 1 || scale > 40) throw DataError("rmat scale must be in [1, 40]");
  const Id n = Id{1} << scale;
  return EdgeTable("rmat", n, n, rmat_raw(n, scale, params, stream, threads));
}

EdgeTable rmat_edges_n(Id n, const RmatParams& params,
                       const rng::RandomStream& stream, unsigned threads) {
  check_rmat_params(params);
  if (n > (Id{1} << 40)) throw DataError("rmat node count too large");
  if (n == 0) return EdgeTable("rmat", 0, 0, {});
  return EdgeTable("rmat", n, n,
                   rmat_raw(n, ceil_log2(n), params, stream, threads));
}

DegreeDistribution planted_degree_distribution(double avg_degree,
                                               std::uint64_t max_degree) {
  if (max_degree < 1) throw DataError("max_degree must be at least 1");
  if (!(avg_degree >= 1) || avg_degree > static_cast<double>(max_degree)) {
    throw DataError("avg_degree must lie in [1, max_degree]");
  }
  std::vector<double> weights(max_degree + 1, 0.0);
  const double mean_one = power_law_mean(1, max_degree);
  if (avg_degree <= mean_one) {
    // Blend with a point mass at degree 1 to pull the mean down.
    const double alpha =
        mean_one > 1 ? (avg_degree - 1) / (mean_one - 1) : 1.0;
    add_power_law(weights, 1, max_degree, alpha);
    weights[1] += 1 - alpha;
  } else {
    std::uint64_t k = 1;
    double lo = mean_one;
    double hi = power_law_mean(2, max_degree);
    while (hi < avg_degree) {
      ++k;
      lo = hi;
      hi = power_law_mean(k + 1, max_degree);
    }
    const double alpha = hi > lo ? (hi - avg_degree) / (hi - lo) : 0.0;
    add_power_law(weights, k, max_degree, alpha);
    add_power_law(weights, k + 1, max_degree, 1 - alpha);
  }
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::pair<std::uint64_t, double>> support;
  for (std::uint64_t k = 1; k <= max_degree; ++k) {
    if (weights[k] > 0) support.emplace_back(k, weights[k] / total);
  }
  total = 0;
  for (const auto& [k, p] : support) total += p;
  for (auto& [k, p] : support) p /= total;
  return DegreeDistribution(std::move(support));
}

PlantedGraph planted_partition_edges(Id n, const PlantedParams& params,
                                     const rng::RandomStream& stream) {
  if (!(params.mixing >= 0 && params.mixing <= 1)) {
    throw DataError("mixing must lie in [0, 1]");
  }
  if (params.min_comm < 1 || params.min_comm > params.max_comm) {
    throw DataError("community sizes need 1 <= min_comm <= max_comm");
  }
  if (n == 0) return {EdgeTable("planted", 0, 0, {}), {}, 0};
  if (params.max_comm > n) {
    throw DataError("max_comm " + std::to_string(params.max_comm) +
                    " exceeds the node count " + std::to_string(n));
  }
  const auto dist = planted_degree_distribution(params.avg_degree,
                                                params.max_degree);
  const auto deg_stream = stream.substream(0);
  const auto round_stream = stream.substream(1);

  std::vector<std::uint64_t> degree(n), internal(n);
  for (Id v = 0; v < n; ++v) {
    degree[v] = std::min<std::uint64_t>(dist.sample(deg_stream.uniform_at(v)),
                                        n - 1);
    const double x = (1 - params.mixing) * static_cast<double>(degree[v]);
    const double whole = std::floor(x);
    internal[v] = static_cast<std::uint64_t>(whole) +
                  (round_stream.uniform_at(v) < x - whole ? 1 : 0);
  }

  // Community sizes; a short final community is spread over the others.
  std::vector<std::uint64_t> sizes;
  {
    rng::StreamCursor cursor(stream.substream(2));
    std::uint64_t total = 0;
    while (total < n) {
      const std::uint64_t s =
          params.min_comm + cursor.bounded(params.max_comm - params.min_comm + 1);
      sizes.push_back(std::min(s, n - total));
      total += sizes.back();
    }
    if (sizes.size() > 1 && sizes.back() < params.min_comm) {
      const std::uint64_t extra = sizes.back();
      sizes.pop_back();
      for (std::uint64_t i = 0; i < extra; ++i) sizes[i % sizes.size()]++;
    }
  }
  const auto k = static_cast<std::uint32_t>(sizes.size());

  std::vector<Id> order(n);
  std::iota(order.begin(), order.end(), Id{0});
  std::stable_sort(order.begin(), order.end(), [&](Id a, Id b) {
    return internal[a] > internal[b];
  });
  std::vector<std::uint32_t> community(n);
  std::vector<std::uint64_t> room = sizes;
  std::vector<std::uint32_t> open(k);
  std::iota(open.begin(), open.end(), 0u);
  rng::StreamCursor pick(stream.substream(3));
  std::vector<std::vector<Id>> members(k);
  // Highest internal degree first. When no open community is large enough,
  // a random member of a large enough full one is evicted and requeued.
  std::vector<Id> pending(order.rbegin(), order.rend());
  std::uint64_t evictions = 0;
  while (!pending.empty()) {
    const Id v = pending.back();
    pending.pop_back();
    std::optional<std::size_t> slot;
    for (int attempt = 0; attempt < 32 && !slot && !open.empty(); ++attempt) {
      const auto s = pick.bounded(open.size());
      if (sizes[open[s]] > internal[v]) slot = s;
    }
    if (!slot && !open.empty()) {
      const auto start = pick.bounded(open.size());
      for (std::size_t i = 0; i < open.size() && !slot; ++i) {
        const auto s = (start + i) % open.size();
        if (sizes[open[s]] > internal[v]) slot = s;
      }
    }
    if (slot) {
      const std::uint32_t c = open[*slot];
      community[v] = c;
      members[c].push_back(v);
      if (--room[c] == 0) {
        open[*slot] = open.back();
        open.pop_back();
      }
      continue;
    }
    std::vector<std::uint32_t> hosts;
    std::uint32_t largest = 0;
    for (std::uint32_t c = 0; c < k; ++c) {
      if (sizes[c] > internal[v]) hosts.push_back(c);
      if (sizes[c] > sizes[largest]) largest = c;
    }
    if (hosts.empty() || ++evictions > 10 * n + 100) {
      throw DataError("planted partition infeasible: node " + std::to_string(v) +
                      " needs " + std::to_string(internal[v]) +
                      " intra-community neighbours but community " +
                      std::to_string(largest) + ", the largest, has " +
                      std::to_string(sizes[largest]) + " members");
    }
    const std::uint32_t c = hosts[pick.bounded(hosts.size())];
    auto& slot_owner = members[c][pick.bounded(members[c].size())];
    pending.push_back(slot_owner);
    slot_owner = v;
    community[v] = c;
  }

  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  const auto wire_stream = stream.substream(4);
  for (std::uint32_t c = 0; c < k; ++c) {
    std::sort(members[c].begin(), members[c].end());
    std::vector<Id> stubs;
    for (Id v : members[c]) stubs.insert(stubs.end(), internal[v], v);
    wire_stubs(std::move(stubs), wire_stream.substream(c), n, present, edges,
               [](Id, Id) { return true; });
  }
  std::vector<Id> stubs;
  for (Id v = 0; v < n; ++v) stubs.insert(stubs.end(), degree[v] - internal[v], v);
  wire_stubs(std::move(stubs), stream.substream(5), n, present, edges,
             [&](Id u, Id v) { return community[u] != community[v]; });

  return {EdgeTable("planted", n, n, std::move(edges)), std::move(community), k};
}

EdgeTable degree_driven_edges(Id n_tail, const DegreeDistribution& dist,
                              const rng::RandomStream& stream,
                              unsigned threads) {
  std::vector<std::uint64_t> offset(n_tail + 1, 0);
  parallel_for_ranges(n_tail, threads, [&](Id begin, Id end) {
    for (Id t = begin; t < end; ++t) offset[t + 1] = dist.sample(stream.uniform_at(t));
  });
  for (Id t = 0; t < n_tail; ++t) offset[t + 1] += offset[t];
  const Id m = offset[n_tail];
  std::vector<Edge> edges(m);
  parallel_for_ranges(n_tail, threads, [&](Id begin, Id end) {
    for (Id t = begin; t < end; ++t) {
      for (Id e = offset[t]; e < offset[t + 1]; ++e) edges[e] = {t, e};
    }
  });
  return EdgeTable("degree", n_tail, m, std::move(edges));
}

RmatGenerator::RmatGenerator(RmatParams params) : params_(params) {
  check_rmat_params(params_);
  if (params_.edge_factor == 0) throw DataError("edge_factor must be positive");
}

EdgeTable RmatGenerator::run(Id n, const rng::RandomStream& stream,
                             unsigned threads) const {
  return rmat_edges_n(n, params_, stream, threads);
}

Id RmatGenerator::invert_size(Id m) const {
  return (m + params_.edge_factor - 1) / params_.edge_factor;
}

PlantedGenerator::PlantedGenerator(PlantedParams params) : params_(params) {
  planted_degree_distribution(params_.avg_degree, params_.max_degree);
}

EdgeTable PlantedGenerator::run(Id n, const rng::RandomStream& stream,
                                unsigned /*threads*/) const {
  return planted_partition_edges(n, params_, stream).edges;
}

Id PlantedGenerator::invert_size(Id m) const {
  return static_cast<Id>(std::ceil(2.0 * static_cast<double>(m) /
                                   params_.avg_degree));
}

DegreeGenerator::DegreeGenerator(DegreeDistribution dist)
    : dist_(std::move(dist)) {}

EdgeTable DegreeGenerator::run(Id n, const rng::RandomStream& stream,
                               unsigned threads) const {
  return degree_driven_edges(n, dist_, stream, threads);
}

Id DegreeGenerator::invert_size(Id m) const {
  if (!(dist_.mean() > 0)) {
    throw DataError("degree generator with zero mean degree cannot size a graph");
  }
  if (m == 0) return 0;
  const double ratio = static_cast<double>(m) / dist_.mean();
  // A mean off by rounding noise must not push an exact quotient up by one.
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<Id>(nearest);
  }
  return static_cast<Id>(std::ceil(ratio));
}

StructureGeneratorLibrary StructureGeneratorLibrary::with_builtins() {
  StructureGeneratorLibrary lib;
  lib.add("rmat", [](const dsl::GeneratorBinding& b, const StructureContext& c) {
    check_keys(b, c, {"edge_factor", "a", "b", "c", "d", "dedup"});
    RmatParams p;
    p.edge_factor = count(b, c, "edge_factor", p.edge_factor);
    p.a = number(b, c, "a", p.a);
    p.b = number(b, c, "b", p.b);
    p.c = number(b, c, "c", p.c);
    p.d = number(b, c, "d", p.d);
    p.dedup = flag(b, c, "dedup");
    return std::make_unique<RmatGenerator>(p);
  });
  lib.add("planted", [](const dsl::GeneratorBinding& b, const StructureContext& c) {
    check_keys(b, c, {"avg_degree", "max_degree", "min_comm", "max_comm", "mixing"});
    PlantedParams p;
    p.avg_degree = number(b, c, "avg_degree", p.avg_degree);
    p.max_degree = count(b, c, "max_degree", p.max_degree);
    p.min_comm = count(b, c, "min_comm", p.min_comm);
    p.max_comm = count(b, c, "max_comm", p.max_comm);
    p.mixing = number(b, c, "mixing", p.mixing);
    if (p.min_comm < 1 || p.min_comm > p.max_comm) {
      fail(c, b, "need 1 <= min_comm <= max_comm");
    }
    if (!(p.mixing >= 0 && p.mixing <= 1)) fail(c, b, "mixing must lie in [0, 1]");
    return std::make_unique<PlantedGenerator>(p);
  });
  lib.add("degree", [](const dsl::GeneratorBinding& b, const StructureContext& c) {
    check_keys(b, c, {"constant", "poisson", "geometric", "file"});
    if (b.parameters.size() != 1) {
      fail(c, b, "expects exactly one of constant, poisson, geometric, file");
    }
    const auto& arg = b.parameters.front();
    if (arg.key == "file") {
      std::filesystem::path p = arg.text;
      return std::make_unique<DegreeGenerator>(
          DegreeDistribution::load(p.is_absolute() ? p : c.base_dir / p));
    }
    if (arg.key == "constant") {
      return std::make_unique<DegreeGenerator>(
          DegreeDistribution::point(count(b, c, "constant", 0)));
    }
    const double mean = number(b, c, arg.key, 0);
    return std::make_unique<DegreeGenerator>(
        arg.key == "poisson" ? DegreeDistribution::poisson(mean)
                             : DegreeDistribution::geometric(mean));
  });
  return lib;
}

void StructureGeneratorLibrary::add(std::string name,
                                    StructureGeneratorFactory factory) {
  factories_[std::move(name)] = std::move(factory);
}

bool StructureGeneratorLibrary::contains(std::string_view name) const {
  return factories_.find(name) != factories_.end();
}

std::set<std::string, std::less<>> StructureGeneratorLibrary::names() const {
  std::set<std::string, std::less<>> out;
  for (const auto& [name, f] : factories_) out.insert(name);
  return out;
}

std::unique_ptr<StructureGenerator> StructureGeneratorLibrary::create(
    const dsl::GeneratorBinding& binding,
    const StructureContext& context) const {
  const auto it = factories_.find(binding.generator_name);
  if (it == factories_.end()) {
    throw ConfigError(context.owner + ": unknown structure generator '" +
                      binding.generator_name + "'");
  }
  try {
    return it->second(binding, context);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(context.owner + ": " + binding.generator_name +
                      "(): " + e.what());
  }
}

}  // namespace graphsynth::structgen
