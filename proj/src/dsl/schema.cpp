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

#include "graphsynth/dsl/schema.hpp"

namespace graphsynth::dsl {

const GeneratorArg* GeneratorBinding::find(
    std::string_view key, std::optional<std::size_t> position) const {
  for (const GeneratorArg& arg : parameters) {
    if (arg.key == key) return &arg;
  }
  if (position) {
    std::size_t index = 0;
    for (const GeneratorArg& arg : parameters) {
      if (!arg.key.empty()) continue;
      if (index++ == *position) return &arg;
    }
  }
  return nullptr;
}

std::string to_string(const PropertyRef& ref) {
  switch (ref.scope) {
    case RefScope::kSelf:
      return ref.property;
    case RefScope::kTail:
      return "tail." + ref.property;
    case RefScope::kHead:
      return "head." + ref.property;
  }
  return ref.property;
}

std::string_view to_string(Cardinality cardinality) {
  switch (cardinality) {
    case Cardinality::kOneToOne:
      return "one-to-one";
    case Cardinality::kOneToMany:
      return "one-to-many";
    case Cardinality::kManyToMany:
      return "many-to-many";
  }
  return "?";
}

const PropertyDecl* NodeTypeDecl::find_property(
    std::string_view property) const {
  for (const auto& p : properties) {
    if (p.name == property) return &p;
  }
  return nullptr;
}

const PropertyDecl* EdgeTypeDecl::find_property(
    std::string_view property) const {
  for (const auto& p : properties) {
    if (p.name == property) return &p;
  }
  return nullptr;
}

const NodeTypeDecl* Schema::find_node_type(std::string_view name) const {
  for (const auto& n : node_types) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

const EdgeTypeDecl* Schema::find_edge_type(std::string_view name) const {
  for (const auto& e : edge_types) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

void strip(GeneratorBinding& g) {
  g.span = {};
  for (auto& a : g.parameters) a.span = {};
}

void strip(PropertyDecl& p) {
  p.span = {};
  strip(p.generator);
}

}  // namespace

Schema strip_spans(Schema schema) {
  for (auto& n : schema.node_types) {
    n.span = {};
    for (auto& p : n.properties) strip(p);
  }
  for (auto& e : schema.edge_types) {
    e.span = {};
    strip(e.structure);
    if (e.correlation) e.correlation->span = {};
    for (auto& p : e.properties) strip(p);
  }
  for (auto& s : schema.scales) s.span = {};
  return schema;
}

}  // namespace graphsynth::dsl
