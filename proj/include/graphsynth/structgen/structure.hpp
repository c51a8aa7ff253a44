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

// Structure generators.
//
// A structure generator is configured once, then run(n) produces the edge
// table of a graph over n tail nodes, and invert_size(m) returns the node
// count whose expected edge count first reaches m. Edge placement draws come
// from a random stream keyed by edge id (rmat) or tail id (degree), so the
// output does not depend on the worker count.
//
// Built-in generators:
//   rmat(edge_factor=16, a=0.57, b=0.19, c=0.19, d=0.05, dedup=false)
//   planted(avg_degree=20, max_degree=50, min_comm=10, max_comm=50,
//           mixing=0.1)
//   degree(constant=k | poisson=l | geometric=mean | file="degrees.csv")

#ifndef GRAPHSYNTH_STRUCTGEN_STRUCTURE_HPP_
#define GRAPHSYNTH_STRUCTGEN_STRUCTURE_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphsynth/dsl/schema.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "graphsynth/store/tables.hpp"
#include "graphsynth/structgen/degree_distribution.hpp"

namespace graphsynth::structgen {

struct RmatParams {
  std::uint64_t edge_factor = 16;
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
  // Drop self-loops and repeated pairs, keeping the first occurrence.
  bool dedup = false;
};

// Throws DataError unless the quadrant probabilities are non-negative and
// sum to 1 within 1e-9.
void check_rmat_params(const RmatParams& params);

// 2^scale nodes and 2^scale * edge_factor edges. Edge e descends the
// adjacency matrix one level per draw of stream.substream(e).
EdgeTable rmat_edges(unsigned scale, const RmatParams& params,
                     const rng::RandomStream& stream, unsigned threads = 1);

// Same process on n nodes that need not be a power of two: the matrix is
// 2^ceil(log2 n) wide and an edge falling outside [0, n) is redrawn from the
// next draws of its substream. After 64 rejected attempts the endpoints are
// folded modulo n.
EdgeTable rmat_edges_n(Id n, const RmatParams& params,
                       const rng::RandomStream& stream, unsigned threads = 1);

struct PlantedParams {
  double avg_degree = 20;
  std::uint64_t max_degree = 50;
  std::uint64_t min_comm = 10;
  std::uint64_t max_comm = 50;
  double mixing = 0.1;
};

struct PlantedGraph {
  EdgeTable edges;
  // community[v] is the community of node v, numbered 0..communities-1.
  std::vector<std::uint32_t> community;
  std::uint32_t communities = 0;
};

// Degree law used by the planted-partition generator: P(k) ~ k^-2 on
// [k_min, max_degree], mixed between two adjacent k_min so the mean is
// exactly `avg_degree`. Throws DataError when the mean is out of reach.
DegreeDistribution planted_degree_distribution(double avg_degree,
                                               std::uint64_t max_degree);

// Community-structured graph. Throws DataError on infeasible parameters,
// naming the node and the community that cannot host it.
PlantedGraph planted_partition_edges(Id n, const PlantedParams& params,
                                     const rng::RandomStream& stream);

// deg(t) is drawn for every tail t by inverse transform; tail t then owns the
// next deg(t) edges, and edge e points at head e.
EdgeTable degree_driven_edges(Id n_tail, const DegreeDistribution& dist,
                              const rng::RandomStream& stream,
                              unsigned threads = 1);

class StructureGenerator {
 public:
  virtual ~StructureGenerator() = default;

  virtual std::string_view name() const = 0;
  virtual EdgeTable run(Id n, const rng::RandomStream& stream,
                        unsigned threads) const = 0;
  // Smallest n whose expected edge count reaches m. Throws DataError when
  // the generator cannot be sized.
  virtual Id invert_size(Id m) const = 0;
  // True when run() mints a fresh head per edge (one-to-many), so the head
  // count equals the edge count.
  virtual bool fresh_heads() const { return false; }
  // True when |run(n)| is fixed by n alone.
  virtual bool exact_edge_count() const = 0;
};

class RmatGenerator : public StructureGenerator {
 public:
  explicit RmatGenerator(RmatParams params);
  std::string_view name() const override { return "rmat"; }
  EdgeTable run(Id n, const rng::RandomStream& stream,
                unsigned threads) const override;
  Id invert_size(Id m) const override;
  bool exact_edge_count() const override { return !params_.dedup; }
  const RmatParams& params() const { return params_; }

 private:
  RmatParams params_;
};

class PlantedGenerator : public StructureGenerator {
 public:
  explicit PlantedGenerator(PlantedParams params);
  std::string_view name() const override { return "planted"; }
  EdgeTable run(Id n, const rng::RandomStream& stream,
                unsigned threads) const override;
  Id invert_size(Id m) const override;
  bool exact_edge_count() const override { return false; }

 private:
  PlantedParams params_;
};

class DegreeGenerator : public StructureGenerator {
 public:
  explicit DegreeGenerator(DegreeDistribution dist);
  std::string_view name() const override { return "degree"; }
  EdgeTable run(Id n, const rng::RandomStream& stream,
                unsigned threads) const override;
  Id invert_size(Id m) const override;
  bool fresh_heads() const override { return true; }
  bool exact_edge_count() const override { return false; }
  const DegreeDistribution& distribution() const { return dist_; }

 private:
  DegreeDistribution dist_;
};

struct StructureContext {
  std::string owner;               // edge type name, for messages
  std::filesystem::path base_dir;  // relative file paths resolve here
};

using StructureGeneratorFactory =
    std::function<std::unique_ptr<StructureGenerator>(
        const dsl::GeneratorBinding&, const StructureContext&)>;

class StructureGeneratorLibrary {
 public:
  static StructureGeneratorLibrary with_builtins();

  void add(std::string name, StructureGeneratorFactory factory);
  bool contains(std::string_view name) const;
  std::set<std::string, std::less<>> names() const;

  // Throws ConfigError for unknown generators or bad parameters.
  std::unique_ptr<StructureGenerator> create(
      const dsl::GeneratorBinding& binding,
      const StructureContext& context) const;

 private:
  std::map<std::string, StructureGeneratorFactory, std::less<>> factories_;
};

}  // namespace graphsynth::structgen

#endif  // GRAPHSYNTH_STRUCTGEN_STRUCTURE_HPP_
