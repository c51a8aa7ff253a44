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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "graphsynth/error.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "graphsynth/store/csv.hpp"
#include "graphsynth/store/tables.hpp"
#include "gtest/gtest.h"

namespace graphsynth {
namespace {

std::string to_csv(const PropertyTable& t) {
  std::ostringstream out;
  write_table_csv(t, out);
  return out.str();
}

std::string to_csv(const EdgeTable& t) {
  std::ostringstream out;
  write_table_csv(t, out);
  return out.str();
}

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "graphsynth_store_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(ValueTest, DatesRoundTrip) {
  EXPECT_EQ(parse_date("1970-01-01")->days, 0);
  EXPECT_EQ(parse_date("2000-03-01")->days, 11017);
  EXPECT_EQ(format_date(Date{11017}), "2000-03-01");
  EXPECT_EQ(format_date(Date{-1}), "1969-12-31");
  EXPECT_FALSE(parse_date("2001-02-29"));
  EXPECT_TRUE(parse_date("2004-02-29"));
  EXPECT_FALSE(parse_date("2004-2-29"));
  for (std::int64_t d = -800000; d < 800000; d += 997) {
    EXPECT_EQ(parse_date(format_date(Date{d}))->days, d);
  }
}

TEST(ValueTest, ParseRejectsBadLiterals) {
  EXPECT_EQ(std::get<std::int64_t>(parse_value(ValueType::kInteger, "-12")), -12);
  EXPECT_THROW(parse_value(ValueType::kInteger, "12x"), DataError);
  EXPECT_THROW(parse_value(ValueType::kDate, "yesterday"), DataError);
}

TEST(TableCsvTest, PropertyTableFormat) {
  const PropertyTable t("Person.country", ValueType::kString,
                        {Value{"ES"}, Value{"US"}});
  EXPECT_EQ(to_csv(t), "id,value\n0,ES\n1,US\n");
}

TEST(TableCsvTest, EmptyEdgeTableIsHeaderOnly) {
  EXPECT_EQ(to_csv(EdgeTable("knows", 0, 0, {})), "id,tail,head\n");
}

TEST(TableCsvTest, EdgeTableFormat) {
  const EdgeTable t("knows", 3, 3, {{0, 1}, {2, 0}});
  EXPECT_EQ(to_csv(t), "id,tail,head\n0,0,1\n1,2,0\n");
}

TEST(TableCsvTest, SpecialCharactersAreQuoted) {
  const PropertyTable t("x", ValueType::kString,
                        {Value{"a,b"}, Value{"say \"hi\""}, Value{"two\nlines"}});
  EXPECT_EQ(to_csv(t),
            "id,value\n0,\"a,b\"\n1,\"say \"\"hi\"\"\"\n2,\"two\nlines\"\n");
}

TEST(TableCsvTest, ReadSingleRow) {
  const auto t = parse_property_table_csv("id,value\n0,ES\n", ValueType::kString);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(std::get<std::string>(t.value(0)), "ES");
}

TEST(TableCsvTest, RowsMayArriveOutOfOrder) {
  const auto t =
      parse_property_table_csv("id,value\n1,b\n0,a\n", ValueType::kString);
  EXPECT_EQ(std::get<std::string>(t.value(0)), "a");
}

TEST(TableCsvTest, DuplicateIdRejected) {
  try {
    parse_property_table_csv("id,value\n0,ES\n0,US\n", ValueType::kString);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate id 0"), std::string::npos);
  }
}

TEST(TableCsvTest, IdGapRejected) {
  try {
    parse_property_table_csv("id,value\n0,ES\n2,US\n", ValueType::kString);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("gap"), std::string::npos);
  }
}

TEST(TableCsvTest, MalformedRowsRejected) {
  EXPECT_THROW(parse_property_table_csv("id,value\n0\n", ValueType::kString),
               DataError);
  EXPECT_THROW(parse_property_table_csv("id,value\nx,ES\n", ValueType::kString),
               DataError);
  EXPECT_THROW(parse_property_table_csv("ident,value\n0,ES\n", ValueType::kString),
               DataError);
  EXPECT_THROW(parse_edge_table_csv("id,tail,head\n0,1\n"), DataError);
  EXPECT_THROW(parse_edge_table_csv("id,tail,head\n0,5,1\n", "e", 3, 3),
               DataError);
  EXPECT_THROW(parse_property_table_csv("id,value\n0,\"open\n", ValueType::kString),
               DataError);
}

TEST(TableCsvTest, IoFailureNamesPath) {
  try {
    read_property_table_csv("/nonexistent/dir/x.csv", ValueType::kString);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.csv"),
              std::string::npos);
  }
  EXPECT_THROW(write_table_csv(EdgeTable(), "/nonexistent/dir/e.csv"),
               DataError);
}

// Random tables of every value type, with strings drawn from an alphabet that
// includes the CSV metacharacters.
TEST(TableCsvTest, RoundTripProperty) {
  const std::string alphabet = "ab,\"\n\r xyz\xc3\xa9";
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    rng::StreamCursor r(rng::derive_stream(trial, "roundtrip"));
    const auto type = static_cast<ValueType>(trial % 3);
    const Id n = r.bounded(50);
    std::vector<Value> values;
    for (Id i = 0; i < n; ++i) {
      switch (type) {
        case ValueType::kString: {
          std::string s;
          const auto len = r.bounded(8);
          for (std::uint64_t c = 0; c < len; ++c) {
            s.push_back(alphabet[r.bounded(alphabet.size())]);
          }
          values.emplace_back(s);
          break;
        }
        case ValueType::kInteger:
          values.emplace_back(static_cast<std::int64_t>(r()));
          break;
        case ValueType::kDate:
          values.emplace_back(Date{static_cast<std::int64_t>(r.bounded(100000)) - 20000});
          break;
      }
    }
    const PropertyTable pt("t", type, values);
    const auto path = temp_file("pt.csv");
    write_table_csv(pt, path);
    EXPECT_EQ(read_property_table_csv(path, type, "t"), pt) << "trial " << trial;

    std::vector<Edge> edges;
    const Id nodes = 1 + r.bounded(20);
    const Id m = r.bounded(40);
    for (Id e = 0; e < m; ++e) edges.push_back({r.bounded(nodes), r.bounded(nodes)});
    const EdgeTable et("e", nodes, nodes, edges);
    write_table_csv(et, temp_file("et.csv"));
    EXPECT_EQ(read_edge_table_csv(temp_file("et.csv"), "e", nodes, nodes), et);
  }
}

TEST(PropertyTableTest, BuildIsIndependentOfPartitionCount) {
  auto fn = [](Id id) -> Value {
    return static_cast<std::int64_t>(rng::derive_stream(3, "p").value_at(id) % 1000);
  };
  const auto one = PropertyTable::build("p", ValueType::kInteger, 10007, 1, fn);
  for (unsigned threads : {2u, 3u, 8u, 64u}) {
    EXPECT_EQ(PropertyTable::build("p", ValueType::kInteger, 10007, threads, fn),
              one);
  }
}

TEST(PropertyTableTest, RejectsMixedTypes) {
  EXPECT_THROW(PropertyTable("p", ValueType::kInteger, {Value{"x"}}), DataError);
}

TEST(EdgeTableTest, RejectsOutOfRangeEndpoints) {
  EXPECT_THROW(EdgeTable("e", 2, 2, {{0, 2}}), DataError);
  EXPECT_NO_THROW(EdgeTable("e", 2, 5, {{1, 4}}));
}

}  // namespace
}  // namespace graphsynth
