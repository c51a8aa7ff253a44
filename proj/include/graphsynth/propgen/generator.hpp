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

// Property generators.
//
// A generator is configured once (the factory plays the role of
// initialize) and then produces the value of instance `id` from `id`, one
// 64-bit draw r(id) of the table's random stream, and the values of the
// properties it depends on, in declaration order. run() must not consult any
// other state, so any value can be regenerated in isolation.
//
// Built-in generators:
//   dictionary(file)              weighted `value,weight` CSV
//   conditional(file)             `dep1,..,depk,value,weight` CSV with a `*` fallback
//   uniformInt(lo, hi)            uniform integer in [lo, hi]
//   uuid()                        the instance id itself
//   date(lo, hi)                  uniform date in [lo, hi] (YYYY-MM-DD)
//   after(min=1, max=365)         max(dependencies) + uniform delta in [min, max]

#ifndef GRAPHSYNTH_PROPGEN_GENERATOR_HPP_
#define GRAPHSYNTH_PROPGEN_GENERATOR_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphsynth/dsl/schema.hpp"
#include "graphsynth/store/tables.hpp"
#include "graphsynth/store/value.hpp"

namespace graphsynth::propgen {

class PropertyGenerator {
 public:
  virtual ~PropertyGenerator() = default;

  virtual std::string_view name() const = 0;
  virtual ValueType output_type() const = 0;
  // Number of dependency values run() expects.
  virtual std::size_t arity() const = 0;

  // `endpoints` is set when generating an edge property.
  virtual Value run(Id id, std::uint64_t draw, std::span<const Value> deps,
                    const Edge* endpoints) const = 0;

  // True when run() would sample the fallback for these dependency values.
  virtual bool uses_fallback(std::span<const Value> /*deps*/) const {
    return false;
  }
};

// Checks the dependency arity and types, then runs the generator. Throws
// ConfigError on a mismatch.
Value run_generator(const PropertyGenerator& generator, Id id,
                    std::uint64_t draw, std::span<const Value> deps,
                    const Edge* endpoints = nullptr);

struct GeneratorContext {
  std::string owner;                 // e.g. "Person.name", for messages
  std::filesystem::path base_dir;    // relative file paths resolve here
  ValueType output_type = ValueType::kString;
  std::vector<ValueType> dependency_types;
};

using PropertyGeneratorFactory =
    std::function<std::unique_ptr<PropertyGenerator>(
        const dsl::GeneratorBinding&, const GeneratorContext&)>;

// Name -> factory map. Users may register their own generators next to the
// built-ins.
class PropertyGeneratorLibrary {
 public:
  // Library holding the built-in generators.
  static PropertyGeneratorLibrary with_builtins();

  void add(std::string name, PropertyGeneratorFactory factory);
  bool contains(std::string_view name) const;
  std::set<std::string, std::less<>> names() const;

  // Throws ConfigError for unknown generators or bad parameters.
  std::unique_ptr<PropertyGenerator> create(
      const dsl::GeneratorBinding& binding,
      const GeneratorContext& context) const;

 private:
  std::map<std::string, PropertyGeneratorFactory, std::less<>> factories_;
};

// Parameter helpers shared by generator factories. Each throws ConfigError
// naming the generator owner when the parameter is missing or malformed.
std::string string_param(const dsl::GeneratorBinding& binding,
                         const GeneratorContext& context, std::string_view key,
                         std::optional<std::size_t> position = {});
double number_param(const dsl::GeneratorBinding& binding,
                    const GeneratorContext& context, std::string_view key,
                    std::optional<double> fallback = {});
std::filesystem::path path_param(const dsl::GeneratorBinding& binding,
                                 const GeneratorContext& context,
                                 std::string_view key = "file");

}  // namespace graphsynth::propgen

#endif  // GRAPHSYNTH_PROPGEN_GENERATOR_HPP_
