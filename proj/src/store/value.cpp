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

#include "graphsynth/store/value.hpp"

#include <charconv>
#include <cstdio>

#include "graphsynth/error.hpp"

namespace graphsynth {
namespace {

// Howard Hinnant's civil calendar conversions (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m,
                     unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2 ? 1 : 0;
}

bool is_leap(std::int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30,
                                       31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kString:
      return "string";
    case ValueType::kInteger:
      return "integer";
    case ValueType::kDate:
      return "date";
  }
  return "?";
}

std::optional<ValueType> parse_value_type(std::string_view text) {
  if (text == "string") return ValueType::kString;
  if (text == "integer") return ValueType::kInteger;
  if (text == "date") return ValueType::kDate;
  return std::nullopt;
}

ValueType type_of(const Value& value) {
  return static_cast<ValueType>(value.index());
}

std::optional<Date> parse_date(std::string_view text) {
  // YYYY-MM-DD, four-digit year.
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  std::int64_t y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (!parse_number(text.substr(0, 4), y) ||
      !parse_number(text.substr(5, 2), m) ||
      !parse_number(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) return std::nullopt;
  return Date{days_from_civil(y, m, d)};
}

std::string format_date(Date date) {
  std::int64_t y = 0;
  unsigned m = 0;
  unsigned d = 0;
  civil_from_days(date.days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u",
                static_cast<long long>(y), m, d);
  return buf;
}

std::string format_value(const Value& value) {
  switch (type_of(value)) {
    case ValueType::kString:
      return std::get<std::string>(value);
    case ValueType::kInteger:
      return std::to_string(std::get<std::int64_t>(value));
    case ValueType::kDate:
      return format_date(std::get<Date>(value));
  }
  return {};
}

Value parse_value(ValueType type, std::string_view text) {
  switch (type) {
    case ValueType::kString:
      return std::string(text);
    case ValueType::kInteger: {
      std::int64_t v = 0;
      if (!parse_number(text, v)) {
        throw DataError("not an integer: '" + std::string(text) + "'");
      }
      return v;
    }
    case ValueType::kDate: {
      if (auto d = parse_date(text)) return *d;
      throw DataError("not a YYYY-MM-DD date: '" + std::string(text) + "'");
    }
  }
  throw DataError("unknown value type");
}

}  // namespace graphsynth
