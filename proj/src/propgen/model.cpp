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

#include "graphsynth/propgen/model.hpp"

#include <functional>

#include "graphsynth/error.hpp"
#include "graphsynth/parallel.hpp"

namespace graphsynth::propgen {

TypeModel::TypeModel(const dsl::NodeTypeDecl& decl, std::uint64_t master_seed,
                     const PropertyGeneratorLibrary& library,
                     const std::filesystem::path& base_dir)
    : type_name_(decl.name) {
  compile(decl.properties, master_seed, library, base_dir);
}

TypeModel::TypeModel(const dsl::EdgeTypeDecl& decl, std::uint64_t master_seed,
                     const PropertyGeneratorLibrary& library,
                     const std::filesystem::path& base_dir,
                     const TypeModel* tail, const TypeModel* head)
    : type_name_(decl.name), is_edge_(true), tail_(tail), head_(head) {
  compile(decl.properties, master_seed, library, base_dir);
}

void TypeModel::compile(const std::vector<dsl::PropertyDecl>& decls,
                        std::uint64_t master_seed,
                        const PropertyGeneratorLibrary& library,
                        const std::filesystem::path& base_dir) {
  properties_.resize(decls.size());
  for (std::size_t i = 0; i < decls.size(); ++i) {
    properties_[i].name = decls[i].name;
    properties_[i].type = decls[i].value_type;
  }
  for (std::size_t i = 0; i < decls.size(); ++i) {
    const auto& decl = decls[i];
    Compiled& c = properties_[i];
    GeneratorContext context;
    context.owner = type_name_ + "." + decl.name;
    context.base_dir = base_dir;
    context.output_type = decl.value_type;
    for (const auto& ref : decl.depends_on) {
      const TypeModel* source = this;
      if (ref.scope != dsl::RefScope::kSelf) {
        if (!is_edge_) {
          throw ConfigError(context.owner + ": '" + dsl::to_string(ref) +
                            "' is only valid on edge properties");
        }
        source = ref.scope == dsl::RefScope::kTail ? tail_ : head_;
        if (!source) {
          throw ConfigError(context.owner + ": no model for '" +
                            dsl::to_string(ref) + "'");
        }
      }
      const std::size_t index = source->index_of(ref.property);
      c.deps.push_back({ref.scope, index});
      context.dependency_types.push_back(source->properties_[index].type);
    }
    c.generator = library.create(decl.generator, context);
    c.stream = rng::derive_stream(master_seed, table_tag(i));
  }
  // Reject self-scope cycles so value() always terminates.
  std::vector<int> state(properties_.size(), 0);
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    state[v] = 1;
    for (const auto& d : properties_[v].deps) {
      if (d.scope != dsl::RefScope::kSelf) continue;
      if (state[d.index] == 1) {
        throw ConfigError("dependency cycle through " + type_name_ + "." +
                          properties_[d.index].name);
      }
      if (state[d.index] == 0) visit(d.index);
    }
    state[v] = 2;
  };
  for (std::size_t v = 0; v < properties_.size(); ++v) {
    if (state[v] == 0) visit(v);
  }
}

std::size_t TypeModel::index_of(std::string_view property) const {
  for (std::size_t i = 0; i < properties_.size(); ++i) {
    if (properties_[i].name == property) return i;
  }
  throw ConfigError("type '" + type_name_ + "' has no property '" +
                    std::string(property) + "'");
}

const std::string& TypeModel::property_name(std::size_t index) const {
  return properties_.at(index).name;
}

ValueType TypeModel::value_type(std::size_t index) const {
  return properties_.at(index).type;
}

rng::RandomStream TypeModel::stream(std::size_t index) const {
  return properties_.at(index).stream;
}

std::string TypeModel::table_tag(std::size_t index) const {
  return type_name_ + "." + properties_.at(index).name;
}

const PropertyGenerator& TypeModel::generator(std::size_t index) const {
  return *properties_.at(index).generator;
}

std::vector<Value> TypeModel::dependency_values(const Compiled& c,
                                                Id id) const {
  std::vector<Value> deps;
  deps.reserve(c.deps.size());
  for (const DepRef& d : c.deps) {
    switch (d.scope) {
      case dsl::RefScope::kSelf:
        deps.push_back(value(d.index, id));
        break;
      case dsl::RefScope::kTail:
        deps.push_back(tail_->value(d.index, edges_->edge(id).tail));
        break;
      case dsl::RefScope::kHead:
        deps.push_back(head_->value(d.index, edges_->edge(id).head));
        break;
    }
  }
  return deps;
}

Value TypeModel::value(std::size_t index, Id id) const {
  const Compiled& c = properties_.at(index);
  if (is_edge_ && !edges_) {
    throw ConfigError(type_name_ + ": edge properties need a bound edge table");
  }
  const auto deps = dependency_values(c, id);
  const Edge* endpoints = is_edge_ ? &edges_->edge(id) : nullptr;
  return run_generator(*c.generator, id, c.stream.value_at(id), deps,
                       endpoints);
}

bool TypeModel::uses_fallback(std::size_t index, Id id) const {
  const Compiled& c = properties_.at(index);
  return c.generator->uses_fallback(dependency_values(c, id));
}

PropertyTable generate_property_table(const TypeModel& model,
                                      std::string_view property, Id n,
                                      unsigned threads, TableStats* stats) {
  const std::size_t index = model.index_of(property);
  std::vector<Value> values(n);
  const auto shards = split_range(n, threads);
  std::vector<std::uint64_t> fallbacks(shards.size(), 0);
  parallel_for_ranges(n, threads, [&](Id begin, Id end) {
    std::uint64_t fallback = 0;
    for (Id id = begin; id < end; ++id) {
      values[id] = model.value(index, id);
      if (stats && model.uses_fallback(index, id)) ++fallback;
    }
    for (std::size_t s = 0; s < shards.size(); ++s) {
      if (shards[s].begin == begin) fallbacks[s] = fallback;
    }
  });
  if (stats) {
    stats->fallback_rows = 0;
    for (auto f : fallbacks) stats->fallback_rows += f;
  }
  return PropertyTable(model.table_tag(index), model.value_type(index),
                       std::move(values));
}

}  // namespace graphsynth::propgen
