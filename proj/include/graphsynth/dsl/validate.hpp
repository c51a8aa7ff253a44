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

#ifndef GRAPHSYNTH_DSL_VALIDATE_HPP_
#define GRAPHSYNTH_DSL_VALIDATE_HPP_

#include <set>
#include <string>
#include <vector>

#include "graphsynth/dsl/schema.hpp"

namespace graphsynth::dsl {

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  Span span;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string format_diagnostic(const Diagnostic& d);

struct GeneratorRegistry {
  std::set<std::string, std::less<>> property_generators;
  std::set<std::string, std::less<>> structure_generators;
};

// Pure: the same schema always yields the same diagnostics in the same order.
// An empty result means the schema is executable.
std::vector<Diagnostic> validate_schema(const Schema& schema,
                                        const GeneratorRegistry& registry);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace graphsynth::dsl

#endif  // GRAPHSYNTH_DSL_VALIDATE_HPP_
