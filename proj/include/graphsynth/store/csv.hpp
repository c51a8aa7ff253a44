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

// CSV persistence for property and edge tables, plus the small record reader
// shared by every CSV-backed input (dictionaries, degree and joint
// distributions).
//
// Table files are UTF-8 with LF line endings:
//   property table:  "id,value" header, then "<id>,<value>" rows
//   edge table:      "id,tail,head" header, then "<id>,<tail>,<head>" rows
// Fields containing a comma, quote, CR or LF are double-quoted with embedded
// quotes doubled.

#ifndef GRAPHSYNTH_STORE_CSV_HPP_
#define GRAPHSYNTH_STORE_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphsynth/store/tables.hpp"

namespace graphsynth {

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// Parses RFC-4180 style text. Blank lines are skipped. Throws DataError on an
// unterminated quoted field.
std::vector<CsvRecord> parse_csv(std::string_view text);

// Reads and parses a file; I/O errors carry the path and OS cause.
std::vector<CsvRecord> read_csv_file(const std::filesystem::path& path);

std::string quote_csv_field(std::string_view field);

void write_table_csv(const PropertyTable& table, std::ostream& out);
void write_table_csv(const EdgeTable& table, std::ostream& out);
void write_table_csv(const PropertyTable& table,
                     const std::filesystem::path& path);
void write_table_csv(const EdgeTable& table, const std::filesystem::path& path);

// Rows may appear in any order but ids must be exactly 0..n-1.
PropertyTable read_property_table_csv(const std::filesystem::path& path,
                                      ValueType type, std::string tag = {});
PropertyTable parse_property_table_csv(std::string_view text, ValueType type,
                                       std::string tag = {});

// Without explicit counts, each count is one past the largest endpoint seen.
EdgeTable read_edge_table_csv(const std::filesystem::path& path,
                              std::string name = {},
                              std::optional<Id> tail_count = std::nullopt,
                              std::optional<Id> head_count = std::nullopt);
EdgeTable parse_edge_table_csv(std::string_view text, std::string name = {},
                               std::optional<Id> tail_count = std::nullopt,
                               std::optional<Id> head_count = std::nullopt);

}  // namespace graphsynth

#endif  // GRAPHSYNTH_STORE_CSV_HPP_
