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

// Schema execution: task graph, size inference and the ordered run of
// property generation, structure generation and matching.

#ifndef GRAPHSYNTH_PIPELINE_PIPELINE_HPP_
#define GRAPHSYNTH_PIPELINE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphsynth/dsl/schema.hpp"
#include "graphsynth/dsl/validate.hpp"
#include "graphsynth/error.hpp"
#include "graphsynth/matcher/sbm_part.hpp"
#include "graphsynth/propgen/generator.hpp"
#include "graphsynth/propgen/model.hpp"
#include "graphsynth/store/tables.hpp"
#include "graphsynth/structgen/structure.hpp"

namespace graphsynth::pipeline {

// Raised when schema validation reports errors.
class ValidationError : public ConfigError {
 public:
  explicit ValidationError(std::vector<dsl::Diagnostic> diagnostics);
  const std::vector<dsl::Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<dsl::Diagnostic> diagnostics_;
};

// Raised when a task fails during execution; the message names the task.
class ExecutionError : public Error {
 public:
  using Error::Error;
};

// Property and structure generators known to a run.
struct Catalog {
  propgen::PropertyGeneratorLibrary properties;
  structgen::StructureGeneratorLibrary structures;

  static Catalog builtins();
  dsl::GeneratorRegistry registry() const;
};

enum class SizeSource {
  kScale,     // the scale directive names the type
  kInverted,  // invert_size of an edge-denominated scale
  kHeadsOf,   // one head per edge of a fresh-head edge type
  kSameAs,    // equal to the other endpoint of an edge type
};

struct SizeRule {
  SizeSource source = SizeSource::kScale;
  std::string edge;   // for kInverted, kHeadsOf, kSameAs
  Id count = 0;       // for kScale, kInverted
};

// Node type name -> how its size is obtained.
using SizePlan = std::map<std::string, SizeRule, std::less<>>;

std::string describe(const SizeRule& rule);

// Throws ConfigError for "undetermined size: <Type>" and for conflicting
// size sources.
SizePlan infer_sizes(
    const dsl::Schema& schema,
    const std::map<std::string, const structgen::StructureGenerator*, std::less<>>&
        structures);

enum class TaskKind { kGenProperty, kGenStructure, kMatch };

struct Task {
  TaskKind kind = TaskKind::kGenProperty;
  std::string owner;     // node or edge type
  std::string property;  // kGenProperty only
  std::string name() const;  // e.g. "generate Person.name", "match knows"
};

struct TaskDag {
  std::vector<Task> tasks;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (before, after)
  std::vector<std::size_t> order;                          // topological

  std::optional<std::size_t> find(TaskKind kind, std::string_view owner,
                                  std::string_view property = {}) const;
};

// One generate-property task per (type, property), one generate-structure
// task per edge type and one match task per correlated edge type, with
// property-dependency, size and match-input edges. Ties in the topological
// order follow declaration order. Throws ConfigError naming the members of a
// dependency cycle.
TaskDag build_task_dag(const dsl::Schema& schema, const SizePlan& sizes);

struct ExecuteOptions {
  std::uint64_t seed = 42;
  unsigned threads = 1;
  matcher::TargetMode target_mode = matcher::TargetMode::kCounts;
};

struct NodeReport {
  std::string name;
  Id size = 0;
  std::string size_source;
};

struct EdgeReport {
  std::string name;
  Id edges = 0;
  Id tail_count = 0;
  Id head_count = 0;
  std::string structure;
  std::string structure_stream;
  std::string matching;  // "sbm-part" or "random"
  std::optional<double> l1_distance;
};

struct PropertyReport {
  std::string table;  // "<Type>.<property>", also the stream tag
  Id rows = 0;
  std::string generator;
  std::uint64_t fallback_rows = 0;
};

struct GenerationReport {
  std::uint64_t seed = 0;
  std::vector<NodeReport> node_types;
  std::vector<EdgeReport> edge_types;
  std::vector<PropertyReport> properties;
};

// Deterministic JSON rendering of the report.
std::string report_json(const GenerationReport& report);

struct Dataset {
  std::vector<PropertyTable> property_tables;  // in task order
  std::vector<EdgeTable> edge_tables;          // endpoints are table ids
  GenerationReport report;

  const PropertyTable* find_property(std::string_view tag) const;
  const EdgeTable* find_edge(std::string_view name) const;
};

// A validated schema bound to its generators. Relative file paths resolve
// against `base_dir`.
class Pipeline {
 public:
  // Throws ValidationError when the schema has errors and ConfigError when a
  // generator cannot be configured or sizes cannot be inferred.
  Pipeline(dsl::Schema schema, std::filesystem::path base_dir,
           Catalog catalog = Catalog::builtins());
  ~Pipeline();
  Pipeline(Pipeline&&) noexcept;
  Pipeline& operator=(Pipeline&&) noexcept;

  // Reads and parses a schema file; the file's directory becomes base_dir.
  // Throws DataError when the file cannot be read and dsl::ParseError on
  // syntax errors.
  static Pipeline from_file(const std::filesystem::path& path,
                            Catalog catalog = Catalog::builtins());

  const dsl::Schema& schema() const { return schema_; }
  const SizePlan& sizes() const { return sizes_; }
  const TaskDag& dag() const { return dag_; }
  const std::vector<dsl::Diagnostic>& warnings() const { return warnings_; }

  // Runs every task in topological order. Throws ExecutionError naming the
  // failing task.
  Dataset execute(const ExecuteOptions& options) const;

  // Generators of one node type under `seed`; any of its property values can
  // be regenerated from the model and an id alone.
  propgen::TypeModel node_model(std::uint64_t seed, std::string_view type) const;

  // Regenerates one node property value from (seed, id) alone.
  Value regenerate(std::uint64_t seed, std::string_view type,
                   std::string_view property, Id id) const;

 private:
  dsl::Schema schema_;
  std::filesystem::path base_dir_;
  Catalog catalog_;
  std::map<std::string, std::unique_ptr<structgen::StructureGenerator>, std::less<>>
      structures_;
  std::map<std::string, matcher::JointDistribution, std::less<>> joints_;
  SizePlan sizes_;
  TaskDag dag_;
  std::vector<dsl::Diagnostic> warnings_;
};

// Writes <out>/<Type>.<property>.csv, <out>/<edge>.csv and <out>/report.json.
void write_dataset(const Dataset& dataset, const std::filesystem::path& out_dir);

}  // namespace graphsynth::pipeline

#endif  // GRAPHSYNTH_PIPELINE_PIPELINE_HPP_
