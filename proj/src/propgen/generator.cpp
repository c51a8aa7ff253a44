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

#include "graphsynth/propgen/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "graphsynth/error.hpp"
#include "graphsynth/propgen/dictionary.hpp"
#include "graphsynth/rng/random_stream.hpp"

namespace graphsynth::propgen {
namespace {

[[noreturn]] void fail(const GeneratorContext& context,
                       const dsl::GeneratorBinding& binding,
                       const std::string& message) {
  throw ConfigError(context.owner + ": " + binding.generator_name + "(): " +
                    message);
}

void require_output(const GeneratorContext& context,
                    const dsl::GeneratorBinding& binding,
                    std::initializer_list<ValueType> allowed) {
  if (std::find(allowed.begin(), allowed.end(), context.output_type) ==
      allowed.end()) {
    fail(context, binding,
         "cannot produce values of type " +
             std::string(to_string(context.output_type)));
  }
}

void require_arity(const GeneratorContext& context,
                   const dsl::GeneratorBinding& binding, std::size_t arity) {
  if (context.dependency_types.size() != arity) {
    fail(context, binding,
         "expects " + std::to_string(arity) + " correlated values, got " +
             std::to_string(context.dependency_types.size()));
  }
}

// Converts a generated integer or date to the declared output type.
Value as_output(ValueType type, Value v) {
  if (type == ValueType::kString && type_of(v) != ValueType::kString) {
    return format_value(v);
  }
  return v;
}

class DictionaryGenerator final : public PropertyGenerator {
 public:
  DictionaryGenerator(WeightedDictionary dict, ValueType type)
      : dict_(std::move(dict)), type_(type) {
    for (const auto& v : dict_.values()) values_.push_back(parse_value(type_, v));
  }

  std::string_view name() const override { return "dictionary"; }
  ValueType output_type() const override { return type_; }
  std::size_t arity() const override { return 0; }

  Value run(Id, std::uint64_t draw, std::span<const Value>,
            const Edge*) const override {
    return values_[dict_.sample_index(rng::to_unit(draw))];
  }

 private:
  WeightedDictionary dict_;
  ValueType type_;
  std::vector<Value> values_;
};

class ConditionalGenerator final : public PropertyGenerator {
 public:
  ConditionalGenerator(ConditionalDictionary dict, ValueType type)
      : dict_(std::move(dict)), type_(type) {
    // Validate every value once so run() cannot throw on a bad literal.
    for (const auto& [key, d] : dict_.entries()) {
      for (const auto& v : d.values()) parse_value(type_, v);
    }
    for (const auto& v : dict_.fallback().values()) parse_value(type_, v);
  }

  std::string_view name() const override { return "conditional"; }
  ValueType output_type() const override { return type_; }
  std::size_t arity() const override { return dict_.arity(); }

  Value run(Id, std::uint64_t draw, std::span<const Value> deps,
            const Edge*) const override {
    const auto& d = dict_.lookup(key_of(deps));
    return parse_value(type_, d.value(d.sample_index(rng::to_unit(draw))));
  }

  bool uses_fallback(std::span<const Value> deps) const override {
    return dict_.find(key_of(deps)) == nullptr;
  }

 private:
  static std::vector<std::string> key_of(std::span<const Value> deps) {
    std::vector<std::string> key;
    key.reserve(deps.size());
    for (const auto& d : deps) key.push_back(format_value(d));
    return key;
  }

  ConditionalDictionary dict_;
  ValueType type_;
};

class UniformIntGenerator final : public PropertyGenerator {
 public:
  UniformIntGenerator(std::int64_t lo, std::int64_t hi, ValueType type)
      : lo_(lo), span_(static_cast<std::uint64_t>(hi - lo) + 1), type_(type) {}

  std::string_view name() const override { return "uniformInt"; }
  ValueType output_type() const override { return type_; }
  std::size_t arity() const override { return 0; }

  Value run(Id, std::uint64_t draw, std::span<const Value>,
            const Edge*) const override {
    // span_ == 0 encodes the full 64-bit range.
    const std::uint64_t offset = span_ == 0 ? draw : rng::to_bounded(draw, span_);
    return as_output(type_, static_cast<std::int64_t>(
                                static_cast<std::uint64_t>(lo_) + offset));
  }

 private:
  std::int64_t lo_;
  std::uint64_t span_;
  ValueType type_;
};

class UuidGenerator final : public PropertyGenerator {
 public:
  explicit UuidGenerator(ValueType type) : type_(type) {}

  std::string_view name() const override { return "uuid"; }
  ValueType output_type() const override { return type_; }
  std::size_t arity() const override { return 0; }

  Value run(Id id, std::uint64_t, std::span<const Value>,
            const Edge*) const override {
    return as_output(type_, static_cast<std::int64_t>(id));
  }

 private:
  ValueType type_;
};

class DateGenerator final : public PropertyGenerator {
 public:
  DateGenerator(Date lo, Date hi, ValueType type)
      : lo_(lo), span_(static_cast<std::uint64_t>(hi.days - lo.days) + 1),
        type_(type) {}

  std::string_view name() const override { return "date"; }
  ValueType output_type() const override { return type_; }
  std::size_t arity() const override { return 0; }

  Value run(Id, std::uint64_t draw, std::span<const Value>,
            const Edge*) const override {
    return as_output(type_, Date{lo_.days + static_cast<std::int64_t>(
                                                rng::to_bounded(draw, span_))});
  }

 private:
  Date lo_;
  std::uint64_t span_;
  ValueType type_;
};

// max(deps) + delta with delta uniform in [min, max], min >= 1, so the result
// is strictly greater than every dependency value.
class AfterGenerator final : public PropertyGenerator {
 public:
  AfterGenerator(std::size_t arity, std::int64_t min_delta,
                 std::int64_t max_delta, ValueType type)
      : arity_(arity),
        min_(min_delta),
        span_(static_cast<std::uint64_t>(max_delta - min_delta) + 1),
        type_(type) {}

  std::string_view name() const override { return "after"; }
  ValueType output_type() const override { return type_; }
  std::size_t arity() const override { return arity_; }

  Value run(Id, std::uint64_t draw, std::span<const Value> deps,
            const Edge*) const override {
    const std::int64_t delta =
        min_ + static_cast<std::int64_t>(rng::to_bounded(draw, span_));
    std::int64_t latest = std::numeric_limits<std::int64_t>::min();
    for (const auto& d : deps) latest = std::max(latest, ordinal(d));
    const std::int64_t out = latest + delta;
    return type_ == ValueType::kDate ? Value{Date{out}} : Value{out};
  }

 private:
  static std::int64_t ordinal(const Value& v) {
    return type_of(v) == ValueType::kDate ? std::get<Date>(v).days
                                          : std::get<std::int64_t>(v);
  }

  std::size_t arity_;
  std::int64_t min_;
  std::uint64_t span_;
  ValueType type_;
};

std::int64_t integer_param(const dsl::GeneratorBinding& binding,
                           const GeneratorContext& context,
                           std::string_view key,
                           std::optional<std::int64_t> fallback = {}) {
  const auto* arg = binding.find(key);
  if (!arg) {
    if (fallback) return *fallback;
    fail(context, binding, "missing parameter '" + std::string(key) + "'");
  }
  std::int64_t v = 0;
  const char* end = arg->text.data() + arg->text.size();
  auto [ptr, ec] = std::from_chars(arg->text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    fail(context, binding,
         "parameter '" + std::string(key) + "' must be an integer");
  }
  return v;
}

Date date_param(const dsl::GeneratorBinding& binding,
                const GeneratorContext& context, std::string_view key) {
  const auto text = string_param(binding, context, key);
  const auto d = parse_date(text);
  if (!d) {
    fail(context, binding,
         "parameter '" + std::string(key) + "' must be a YYYY-MM-DD date");
  }
  return *d;
}

}  // namespace

Value run_generator(const PropertyGenerator& generator, Id id,
                    std::uint64_t draw, std::span<const Value> deps,
                    const Edge* endpoints) {
  if (deps.size() != generator.arity()) {
    throw ConfigError(std::string(generator.name()) + ": expected " +
                      std::to_string(generator.arity()) +
                      " dependency values, got " + std::to_string(deps.size()));
  }
  Value out = generator.run(id, draw, deps, endpoints);
  if (type_of(out) != generator.output_type()) {
    throw ConfigError(std::string(generator.name()) +
                      ": produced a value of the wrong type");
  }
  return out;
}

std::string string_param(const dsl::GeneratorBinding& binding,
                         const GeneratorContext& context, std::string_view key,
                         std::optional<std::size_t> position) {
  const auto* arg = binding.find(key, position);
  if (!arg) fail(context, binding, "missing parameter '" + std::string(key) + "'");
  return arg->text;
}

double number_param(const dsl::GeneratorBinding& binding,
                    const GeneratorContext& context, std::string_view key,
                    std::optional<double> fallback) {
  const auto* arg = binding.find(key);
  if (!arg) {
    if (fallback) return *fallback;
    fail(context, binding, "missing parameter '" + std::string(key) + "'");
  }
  double v = 0;
  const char* end = arg->text.data() + arg->text.size();
  auto [ptr, ec] = std::from_chars(arg->text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(context, binding,
         "parameter '" + std::string(key) + "' must be a number");
  }
  return v;
}

std::filesystem::path path_param(const dsl::GeneratorBinding& binding,
                                 const GeneratorContext& context,
                                 std::string_view key) {
  std::filesystem::path p = string_param(binding, context, key, 0);
  return p.is_absolute() ? p : context.base_dir / p;
}

void PropertyGeneratorLibrary::add(std::string name,
                                   PropertyGeneratorFactory factory) {
  factories_[std::move(name)] = std::move(factory);
}

bool PropertyGeneratorLibrary::contains(std::string_view name) const {
  return factories_.find(name) != factories_.end();
}

std::set<std::string, std::less<>> PropertyGeneratorLibrary::names() const {
  std::set<std::string, std::less<>> out;
  for (const auto& [name, f] : factories_) out.insert(name);
  return out;
}

std::unique_ptr<PropertyGenerator> PropertyGeneratorLibrary::create(
    const dsl::GeneratorBinding& binding,
    const GeneratorContext& context) const {
  const auto it = factories_.find(binding.generator_name);
  if (it == factories_.end()) {
    throw ConfigError(context.owner + ": unknown property generator '" +
                      binding.generator_name + "'");
  }
  try {
    return it->second(binding, context);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(context.owner + ": " + binding.generator_name +
                      "(): " + e.what());
  }
}

PropertyGeneratorLibrary PropertyGeneratorLibrary::with_builtins() {
  PropertyGeneratorLibrary lib;
  lib.add("dictionary", [](const dsl::GeneratorBinding& b,
                           const GeneratorContext& c) {
    require_arity(c, b, 0);
    return std::make_unique<DictionaryGenerator>(
        WeightedDictionary::load(path_param(b, c)), c.output_type);
  });
  lib.add("conditional", [](const dsl::GeneratorBinding& b,
                            const GeneratorContext& c) {
    auto dict = ConditionalDictionary::load(path_param(b, c));
    require_arity(c, b, dict.arity());
    return std::make_unique<ConditionalGenerator>(std::move(dict),
                                                  c.output_type);
  });
  lib.add("uniformInt", [](const dsl::GeneratorBinding& b,
                           const GeneratorContext& c) {
    require_arity(c, b, 0);
    require_output(c, b, {ValueType::kInteger, ValueType::kString});
    const auto lo = integer_param(b, c, "lo");
    const auto hi = integer_param(b, c, "hi");
    if (hi < lo) fail(c, b, "requires lo <= hi");
    return std::make_unique<UniformIntGenerator>(lo, hi, c.output_type);
  });
  lib.add("uuid", [](const dsl::GeneratorBinding& b, const GeneratorContext& c) {
    require_arity(c, b, 0);
    require_output(c, b, {ValueType::kInteger, ValueType::kString});
    return std::make_unique<UuidGenerator>(c.output_type);
  });
  lib.add("date", [](const dsl::GeneratorBinding& b, const GeneratorContext& c) {
    require_arity(c, b, 0);
    require_output(c, b, {ValueType::kDate, ValueType::kString});
    const Date lo = date_param(b, c, "lo");
    const Date hi = date_param(b, c, "hi");
    if (hi < lo) fail(c, b, "requires lo <= hi");
    return std::make_unique<DateGenerator>(lo, hi, c.output_type);
  });
  lib.add("after", [](const dsl::GeneratorBinding& b, const GeneratorContext& c) {
    require_output(c, b, {ValueType::kDate, ValueType::kInteger});
    if (c.dependency_types.empty()) {
      fail(c, b, "needs at least one correlated value to follow");
    }
    for (const auto t : c.dependency_types) {
      if (t != c.output_type) {
        fail(c, b, "correlated values must have the output type " +
                       std::string(to_string(c.output_type)));
      }
    }
    const auto min_delta = integer_param(b, c, "min", 1);
    const auto max_delta = integer_param(b, c, "max", 365);
    if (min_delta < 1) fail(c, b, "min must be >= 1 so the result is later");
    if (max_delta < min_delta) fail(c, b, "requires min <= max");
    return std::make_unique<AfterGenerator>(c.dependency_types.size(),
                                            min_delta, max_delta,
                                            c.output_type);
  });
  return lib;
}

}  // namespace graphsynth::propgen
