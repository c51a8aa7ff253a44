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

#ifndef GRAPHSYNTH_PROPGEN_MODEL_HPP_
#define GRAPHSYNTH_PROPGEN_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graphsynth/dsl/schema.hpp"
#include "graphsynth/propgen/generator.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "graphsynth/store/tables.hpp"

namespace graphsynth::propgen {

// The initialised generators of every property of one node or edge type.
//
// Dependency values are never read from materialised tables: value() invokes
// the dependency chain's generators at the same id, recursively, so a single
// value can be regenerated from (master seed, id) alone. For edge types,
// tail./head. references recurse into the endpoint types' models at the
// endpoint ids of the bound edge table.
class TypeModel {
 public:
  // Node type. Throws ConfigError on unresolved generators, unknown
  // references or dependency cycles.
  TypeModel(const dsl::NodeTypeDecl& decl, std::uint64_t master_seed,
            const PropertyGeneratorLibrary& library,
            const std::filesystem::path& base_dir);

  // Edge type; `tail` and `head` must outlive this model.
  TypeModel(const dsl::EdgeTypeDecl& decl, std::uint64_t master_seed,
            const PropertyGeneratorLibrary& library,
            const std::filesystem::path& base_dir, const TypeModel* tail,
            const TypeModel* head);

  TypeModel(const TypeModel&) = delete;
  TypeModel& operator=(const TypeModel&) = delete;
  TypeModel(TypeModel&&) = default;
  TypeModel& operator=(TypeModel&&) = default;

  const std::string& type_name() const { return type_name_; }
  std::size_t property_count() const { return properties_.size(); }
  // Throws ConfigError when absent.
  std::size_t index_of(std::string_view property) const;
  const std::string& property_name(std::size_t index) const;
  ValueType value_type(std::size_t index) const;
  rng::RandomStream stream(std::size_t index) const;
  // "<Type>.<property>", the tag the property's stream is derived from.
  std::string table_tag(std::size_t index) const;
  const PropertyGenerator& generator(std::size_t index) const;

  // Edge models read endpoint ids from this table; it must outlive the model.
  void bind_edges(const EdgeTable* edges) { edges_ = edges; }

  // Regenerates the value of property `index` for instance `id`.
  Value value(std::size_t index, Id id) const;

  // True when the property's own generator falls back for this id.
  bool uses_fallback(std::size_t index, Id id) const;

 private:
  struct DepRef {
    dsl::RefScope scope = dsl::RefScope::kSelf;
    std::size_t index = 0;
  };
  struct Compiled {
    std::string name;
    ValueType type = ValueType::kString;
    std::unique_ptr<PropertyGenerator> generator;
    rng::RandomStream stream;
    std::vector<DepRef> deps;
  };

  void compile(const std::vector<dsl::PropertyDecl>& decls,
               std::uint64_t master_seed,
               const PropertyGeneratorLibrary& library,
               const std::filesystem::path& base_dir);
  std::vector<Value> dependency_values(const Compiled& c, Id id) const;

  std::string type_name_;
  bool is_edge_ = false;
  const TypeModel* tail_ = nullptr;
  const TypeModel* head_ = nullptr;
  const EdgeTable* edges_ = nullptr;
  std::vector<Compiled> properties_;
};

struct TableStats {
  std::uint64_t fallback_rows = 0;
};

// Generates the n-row table of one property: row i is value(i). Disjoint id
// ranges are evaluated on up to `threads` workers; the output does not depend
// on the thread count.
PropertyTable generate_property_table(const TypeModel& model,
                                      std::string_view property, Id n,
                                      unsigned threads,
                                      TableStats* stats = nullptr);

}  // namespace graphsynth::propgen

#endif  // GRAPHSYNTH_PROPGEN_MODEL_HPP_
