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

#ifndef GRAPHSYNTH_DSL_PARSER_HPP_
#define GRAPHSYNTH_DSL_PARSER_HPP_

#include <string>
#include <string_view>

#include "graphsynth/dsl/schema.hpp"
#include "graphsynth/error.hpp"

namespace graphsynth::dsl {

class ParseError : public Error {
 public:
  ParseError(const std::string& message, Span span);

  const Span& span() const { return span_; }
  // Message without the "line:column: " prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  Span span_;
};

// Throws ParseError on syntax errors, unknown top-level keywords and
// duplicate declarations (type names, property names within a type).
Schema parse_schema(std::string_view text);

// Renders a schema back to DSL text that parses to a structurally equal
// schema.
std::string print_schema(const Schema& schema);

}  // namespace graphsynth::dsl

#endif  // GRAPHSYNTH_DSL_PARSER_HPP_
