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

#include "graphsynth/dsl/validate.hpp"

#include <algorithm>
#include <map>

namespace graphsynth::dsl {
namespace {

class Validator {
 public:
  Validator(const Schema& schema, const GeneratorRegistry& registry)
      : schema_(schema), registry_(registry) {}

  std::vector<Diagnostic> run() {
    check_scale();
    check_unique_types();
    for (const auto& node : schema_.node_types) check_node(node);
    for (const auto& edge : schema_.edge_types) check_edge(edge);
    return std::move(out_);
  }

 private:
  void error(std::string message, const Span& span) {
    out_.push_back({Severity::kError, std::move(message), span});
  }

  void check_scale() {
    if (schema_.scales.empty()) {
      error("missing scale directive (exactly one 'scale <Type> = <count>' "
            "is required)",
            Span{0, 0, 1, 1});
      return;
    }
    for (std::size_t i = 1; i < schema_.scales.size(); ++i) {
      error("duplicate scale directive; only one scale denomination is "
            "allowed per schema",
            schema_.scales[i].span);
    }
    for (const auto& scale : schema_.scales) {
      if (!schema_.find_node_type(scale.target) &&
          !schema_.find_edge_type(scale.target)) {
        error("scale target '" + scale.target +
                  "' is not a declared node or edge type",
              scale.span);
      }
    }
  }

  void check_unique_types() {
    std::map<std::string, int, std::less<>> seen;
    auto visit = [&](const std::string& name, const Span& span) {
      if (seen[name]++ > 0) {
        error("duplicate declaration of type '" + name + "'", span);
      }
    };
    for (const auto& n : schema_.node_types) visit(n.name, n.span);
    for (const auto& e : schema_.edge_types) visit(e.name, e.span);
  }

  void check_generator(const GeneratorBinding& g, bool structure) {
    const auto& known = structure ? registry_.structure_generators
                                  : registry_.property_generators;
    if (!known.contains(g.generator_name)) {
      error(std::string("unknown ") + (structure ? "structure" : "property") +
                " generator '" + g.generator_name + "'",
            g.span);
    }
  }

  // Checks names, generators and references; `edge` is null for node types.
  void check_properties(const std::string& owner,
                        const std::vector<PropertyDecl>& properties,
                        const EdgeTypeDecl* edge) {
    std::map<std::string, int, std::less<>> seen;
    for (const auto& p : properties) {
      if (seen[p.name]++ > 0) {
        error("duplicate declaration of property '" + owner + "." + p.name +
                  "'",
              p.span);
      }
    }
    for (const auto& p : properties) {
      check_generator(p.generator, false);
      for (const auto& ref : p.depends_on) {
        check_ref(owner, properties, p, ref, edge);
      }
    }
    check_cycles(owner, properties);
  }

  void check_ref(const std::string& owner,
                 const std::vector<PropertyDecl>& siblings,
                 const PropertyDecl& p, const PropertyRef& ref,
                 const EdgeTypeDecl* edge) {
    if (ref.scope == RefScope::kSelf) {
      const bool found =
          std::any_of(siblings.begin(), siblings.end(),
                      [&](const PropertyDecl& q) { return q.name == ref.property; });
      if (!found) {
        error("property '" + owner + "." + p.name + "' depends on undeclared "
                  "property '" + owner + "." + ref.property + "'",
              p.span);
      }
      return;
    }
    if (!edge) {
      error("node property '" + owner + "." + p.name + "' cannot reference '" +
                to_string(ref) + "'; endpoint references are only valid on "
                "edge properties",
            p.span);
      return;
    }
    const std::string& type =
        ref.scope == RefScope::kTail ? edge->tail_type : edge->head_type;
    const NodeTypeDecl* node = schema_.find_node_type(type);
    if (node && !node->find_property(ref.property)) {
      error("property '" + owner + "." + p.name + "' depends on undeclared "
                "property '" + type + "." + ref.property + "'",
            p.span);
    }
  }

  void check_cycles(const std::string& owner,
                    const std::vector<PropertyDecl>& properties) {
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < properties.size(); ++i) {
      index.emplace(properties[i].name, i);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<int> state(properties.size(), 0);
    std::vector<std::size_t> stack;
    auto dfs = [&](auto&& self, std::size_t v) -> void {
      state[v] = 1;
      stack.push_back(v);
      for (const auto& ref : properties[v].depends_on) {
        if (ref.scope != RefScope::kSelf) continue;
        auto it = index.find(ref.property);
        if (it == index.end()) continue;
        const std::size_t w = it->second;
        if (state[w] == 1) {
          std::string chain;
          auto from = std::find(stack.begin(), stack.end(), w);
          for (auto s = from; s != stack.end(); ++s) {
            chain += owner + "." + properties[*s].name + " -> ";
          }
          chain += owner + "." + properties[w].name;
          error("dependency cycle: " + chain, properties[w].span);
        } else if (state[w] == 0) {
          self(self, w);
        }
      }
      stack.pop_back();
      state[v] = 2;
    };
    for (std::size_t v = 0; v < properties.size(); ++v) {
      if (state[v] == 0) dfs(dfs, v);
    }
  }

  void check_node(const NodeTypeDecl& node) {
    check_properties(node.name, node.properties, nullptr);
  }

  void check_edge(const EdgeTypeDecl& edge) {
    const NodeTypeDecl* tail = schema_.find_node_type(edge.tail_type);
    const NodeTypeDecl* head = schema_.find_node_type(edge.head_type);
    if (!tail) {
      error("unresolved type '" + edge.tail_type + "' in edge '" + edge.name +
                "'",
            edge.span);
    }
    if (!head && edge.head_type != edge.tail_type) {
      error("unresolved type '" + edge.head_type + "' in edge '" + edge.name +
                "'",
            edge.span);
    }
    check_generator(edge.structure, true);
    if (edge.correlation) {
      const auto& c = *edge.correlation;
      if (tail && !tail->find_property(c.tail_property)) {
        error("correlated property '" + c.tail_property +
                  "' is not declared on '" + tail->name + "'",
              c.span);
      }
      const bool same_check =
          head == tail && c.head_property == c.tail_property;
      if (head && !same_check && !head->find_property(c.head_property)) {
        error("correlated property '" + c.head_property +
                  "' is not declared on '" + head->name + "'",
              c.span);
      }
      if (edge.tail_type == edge.head_type &&
          c.tail_property != c.head_property) {
        error("edge '" + edge.name + "' joins a type with itself and must "
                  "correlate a single property",
              c.span);
      }
      if (c.distribution_path.empty()) {
        error("correlation of edge '" + edge.name +
                  "' needs a distribution file",
              c.span);
      }
    }
    check_properties(edge.name, edge.properties, &edge);
  }

  const Schema& schema_;
  const GeneratorRegistry& registry_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::string format_diagnostic(const Diagnostic& d) {
  return std::to_string(d.span.line) + ":" + std::to_string(d.span.column) +
         ": " + (d.severity == Severity::kError ? "error" : "warning") + ": " +
         d.message;
}

std::vector<Diagnostic> validate_schema(const Schema& schema,
                                        const GeneratorRegistry& registry) {
  return Validator(schema, registry).run();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

}  // namespace graphsynth::dsl
