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

#ifndef GRAPHSYNTH_STORE_VALUE_HPP_
#define GRAPHSYNTH_STORE_VALUE_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace graphsynth {

enum class ValueType { kString, kInteger, kDate };

// Calendar date stored as days since 1970-01-01; printed as YYYY-MM-DD.
struct Date {
  std::int64_t days = 0;
  friend auto operator<=>(const Date&, const Date&) = default;
};

using Value = std::variant<std::string, std::int64_t, Date>;

std::string_view to_string(ValueType type);
std::optional<ValueType> parse_value_type(std::string_view text);

ValueType type_of(const Value& value);

std::string format_value(const Value& value);

// Throws DataError when `text` is not a valid literal of `type`.
Value parse_value(ValueType type, std::string_view text);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date date);

}  // namespace graphsynth

#endif  // GRAPHSYNTH_STORE_VALUE_HPP_
