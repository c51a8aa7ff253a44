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

#include "graphsynth/store/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "graphsynth/error.hpp"

namespace graphsynth {
namespace {

std::string io_failure(const std::filesystem::path& path, const char* what) {
  return std::string(what) + " '" + path.string() + "': " +
         std::strerror(errno);
}

Id parse_id(const CsvRecord& record, std::size_t column) {
  const std::string& text = record.fields[column];
  Id id = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, id);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw DataError("line " + std::to_string(record.line) + ": '" + text +
                    "' is not a non-negative integer id");
  }
  return id;
}

void expect_header(const std::vector<CsvRecord>& records,
                   const std::vector<std::string>& header) {
  if (records.empty() || records.front().fields != header) {
    std::string want;
    for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
    throw DataError("missing header '" + want + "'");
  }
}

void expect_columns(const CsvRecord& record, std::size_t n) {
  if (record.fields.size() != n) {
    throw DataError("line " + std::to_string(record.line) + ": expected " +
                    std::to_string(n) + " columns, got " +
                    std::to_string(record.fields.size()));
  }
}

// Places rows by id, rejecting duplicates and gaps.
template <typename Row>
std::vector<Row> place_by_id(std::vector<std::pair<Id, Row>> rows) {
  const Id n = rows.size();
  std::vector<Row> out(n);
  std::vector<bool> seen(n, false);
  bool out_of_range = false;
  for (auto& [id, row] : rows) {
    if (id >= n) {
      out_of_range = true;
      continue;
    }
    if (seen[id]) throw DataError("duplicate id " + std::to_string(id));
    seen[id] = true;
    out[id] = std::move(row);
  }
  if (out_of_range) {
    for (Id missing = 0; missing < n; ++missing) {
      if (!seen[missing]) {
        throw DataError("id gap: id " + std::to_string(missing) +
                        " missing (ids must be 0.." + std::to_string(n - 1) +
                        ")");
      }
    }
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  errno = 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(io_failure(path, "cannot open"));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  errno = 0;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(io_failure(path, "cannot create"));
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw DataError(io_failure(path, "write failed for"));
}

void append_id(std::string& line, Id id) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), id);
  line.append(buf, ptr);
}

}  // namespace

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t pos = 0;
  std::size_t line = 1;
  while (pos < text.size()) {
    if (text[pos] == '\n' || text[pos] == '\r') {
      if (text[pos] == '\n') ++line;
      ++pos;
      continue;
    }
    CsvRecord record;
    record.line = line;
    std::string field;
    bool at_end = false;
    while (!at_end) {
      if (pos < text.size() && text[pos] == '"') {
        const std::size_t quote_line = line;
        ++pos;
        while (true) {
          if (pos >= text.size()) {
            throw DataError("line " + std::to_string(quote_line) +
                            ": unterminated quoted field");
          }
          const char c = text[pos++];
          if (c == '"') {
            if (pos < text.size() && text[pos] == '"') {
              field.push_back('"');
              ++pos;
            } else {
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
          }
        }
      }
      while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' &&
             text[pos] != '\r') {
        field.push_back(text[pos++]);
      }
      record.fields.push_back(std::move(field));
      field.clear();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
      } else {
        at_end = true;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<CsvRecord> read_csv_file(const std::filesystem::path& path) {
  return parse_csv(slurp(path));
}

std::string quote_csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_table_csv(const PropertyTable& table, std::ostream& out) {
  out << "id,value\n";
  std::string line;
  for (Id id = 0; id < table.size(); ++id) {
    line.clear();
    append_id(line, id);
    line.push_back(',');
    line += quote_csv_field(format_value(table.value(id)));
    line.push_back('\n');
    out << line;
  }
}

void write_table_csv(const EdgeTable& table, std::ostream& out) {
  out << "id,tail,head\n";
  std::string line;
  for (Id id = 0; id < table.size(); ++id) {
    const Edge& e = table.edge(id);
    line.clear();
    append_id(line, id);
    line.push_back(',');
    append_id(line, e.tail);
    line.push_back(',');
    append_id(line, e.head);
    line.push_back('\n');
    out << line;
  }
}

void write_table_csv(const PropertyTable& table,
                     const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_table_csv(table, static_cast<std::ostream&>(out));
  finish(out, path);
}

void write_table_csv(const EdgeTable& table,
                     const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_table_csv(table, static_cast<std::ostream&>(out));
  finish(out, path);
}

PropertyTable parse_property_table_csv(std::string_view text, ValueType type,
                                       std::string tag) {
  const auto records = parse_csv(text);
  expect_header(records, {"id", "value"});
  std::vector<std::pair<Id, Value>> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    expect_columns(records[r], 2);
    try {
      rows.emplace_back(parse_id(records[r], 0),
                        parse_value(type, records[r].fields[1]));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(records[r].line) + ": " +
                      e.what());
    }
  }
  return PropertyTable(std::move(tag), type, place_by_id(std::move(rows)));
}

PropertyTable read_property_table_csv(const std::filesystem::path& path,
                                      ValueType type, std::string tag) {
  try {
    return parse_property_table_csv(slurp(path), type, std::move(tag));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

EdgeTable parse_edge_table_csv(std::string_view text, std::string name,
                               std::optional<Id> tail_count,
                               std::optional<Id> head_count) {
  const auto records = parse_csv(text);
  expect_header(records, {"id", "tail", "head"});
  std::vector<std::pair<Id, Edge>> rows;
  rows.reserve(records.size() - 1);
  Id max_tail_plus_one = 0;
  Id max_head_plus_one = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    expect_columns(records[r], 3);
    const Edge e{parse_id(records[r], 1), parse_id(records[r], 2)};
    max_tail_plus_one = std::max(max_tail_plus_one, e.tail + 1);
    max_head_plus_one = std::max(max_head_plus_one, e.head + 1);
    rows.emplace_back(parse_id(records[r], 0), e);
  }
  return EdgeTable(std::move(name), tail_count.value_or(max_tail_plus_one),
                   head_count.value_or(max_head_plus_one),
                   place_by_id(std::move(rows)));
}

EdgeTable read_edge_table_csv(const std::filesystem::path& path,
                              std::string name, std::optional<Id> tail_count,
                              std::optional<Id> head_count) {
  try {
    return parse_edge_table_csv(slurp(path), std::move(name), tail_count,
                                head_count);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace graphsynth
