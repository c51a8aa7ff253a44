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

// Schema declarations produced by the DSL parser.
//
//   schema      := (node_decl | edge_decl | scale_decl)*
//   node_decl   := "node" IDENT "{" prop_decl* "}"
//   prop_decl   := IDENT ":" type "=" gen_call
//                  [ "correlated" "(" ref ("," ref)* ")" ]
//   ref         := IDENT | ("tail" | "head") "." IDENT
//   type        := "string" | "integer" | "date"
//   edge_decl   := "edge" IDENT ":" IDENT arrow IDENT "{"
//                  "structure" "=" gen_call
//                  [ "join" "=" IDENT [ "," IDENT ] "~" STRING ]
//                  prop_decl* "}"
//   arrow       := "->" | "--"
//   scale_decl  := "scale" IDENT "=" INTEGER
//   gen_call    := IDENT "(" [ arg ("," arg)* ] ")"
//   arg         := [ IDENT "=" ] (NUMBER | STRING | WORD)
//
// WORD is a bare literal such as an identifier or a relative file path
// (names.csv, data/x.csv). `#` starts a comment running to end of line.

#ifndef GRAPHSYNTH_DSL_SCHEMA_HPP_
#define GRAPHSYNTH_DSL_SCHEMA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphsynth/store/value.hpp"

namespace graphsynth::dsl {

// Location of a declaration in the source text. Line and column are 1-based;
// offset/length are byte positions.
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

enum class ArgKind { kNumber, kString, kWord };

struct GeneratorArg {
  std::string key;  // empty for positional arguments
  ArgKind kind = ArgKind::kWord;
  std::string text;  // literal text; strings are unescaped
  Span span;
  friend bool operator==(const GeneratorArg&, const GeneratorArg&) = default;
};

struct GeneratorBinding {
  std::string generator_name;
  std::vector<GeneratorArg> parameters;
  Span span;

  // First argument named `key`, or the positional argument at `position`.
  const GeneratorArg* find(std::string_view key,
                           std::optional<std::size_t> position = {}) const;

  friend bool operator==(const GeneratorBinding&,
                         const GeneratorBinding&) = default;
};

// A dependency of a property on another value. For node properties only
// kSelf is legal; edge properties may also read endpoint node properties.
enum class RefScope { kSelf, kTail, kHead };

struct PropertyRef {
  RefScope scope = RefScope::kSelf;
  std::string property;
  friend bool operator==(const PropertyRef&, const PropertyRef&) = default;
};

std::string to_string(const PropertyRef& ref);

struct PropertyDecl {
  std::string name;
  ValueType value_type = ValueType::kString;
  GeneratorBinding generator;
  std::vector<PropertyRef> depends_on;  // in declaration order
  Span span;
  friend bool operator==(const PropertyDecl&, const PropertyDecl&) = default;
};

struct NodeTypeDecl {
  std::string name;
  std::vector<PropertyDecl> properties;
  Span span;

  const PropertyDecl* find_property(std::string_view property) const;

  friend bool operator==(const NodeTypeDecl&, const NodeTypeDecl&) = default;
};

enum class Cardinality { kOneToOne, kOneToMany, kManyToMany };

std::string_view to_string(Cardinality cardinality);

// `join = tailProp[, headProp] ~ "file"`. With one property name, both
// endpoints use it.
struct CorrelationDecl {
  std::string tail_property;
  std::string head_property;
  std::string distribution_path;
  Span span;
  friend bool operator==(const CorrelationDecl&,
                         const CorrelationDecl&) = default;
};

struct EdgeTypeDecl {
  std::string name;
  std::string tail_type;
  std::string head_type;
  Cardinality cardinality = Cardinality::kManyToMany;
  GeneratorBinding structure;
  std::optional<CorrelationDecl> correlation;
  std::vector<PropertyDecl> properties;
  Span span;

  const PropertyDecl* find_property(std::string_view property) const;

  friend bool operator==(const EdgeTypeDecl&, const EdgeTypeDecl&) = default;
};

struct ScaleDirective {
  std::string target;
  std::uint64_t count = 0;
  Span span;
  friend bool operator==(const ScaleDirective&,
                         const ScaleDirective&) = default;
};

struct Schema {
  std::vector<NodeTypeDecl> node_types;
  std::vector<EdgeTypeDecl> edge_types;
  // The parser keeps every scale statement; validation requires exactly one.
  std::vector<ScaleDirective> scales;

  const NodeTypeDecl* find_node_type(std::string_view name) const;
  const EdgeTypeDecl* find_edge_type(std::string_view name) const;

  friend bool operator==(const Schema&, const Schema&) = default;
};

// Copy of `schema` with every span zeroed, for structural comparison.
Schema strip_spans(Schema schema);

}  // namespace graphsynth::dsl

#endif  // GRAPHSYNTH_DSL_SCHEMA_HPP_
