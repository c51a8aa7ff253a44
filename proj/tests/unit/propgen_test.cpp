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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "graphsynth/dsl/parser.hpp"
#include "graphsynth/error.hpp"
#include "graphsynth/propgen/dictionary.hpp"
#include "graphsynth/propgen/generator.hpp"
#include "graphsynth/propgen/model.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "graphsynth/store/csv.hpp"
#include "gtest/gtest.h"

namespace graphsynth::propgen {
namespace {

const std::filesystem::path kSocial = GRAPHSYNTH_DATA_DIR "/social";

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "graphsynth_propgen_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path write_file(const std::string& name,
                                 const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path;
}

dsl::NodeTypeDecl parse_node(const std::string& text) {
  return dsl::parse_schema(text).node_types.at(0);
}

std::string csv_of(const PropertyTable& t) {
  std::ostringstream out;
  write_table_csv(t, out);
  return out.str();
}

TEST(InverseTransformTest, StrictExceedRule) {
  const WeightedDictionary d({{"a", 1}, {"b", 1}});
  EXPECT_EQ(sample_inverse_transform(d, 0.3), "a");
  EXPECT_EQ(sample_inverse_transform(d, 0.5), "b");
  EXPECT_EQ(sample_inverse_transform(d, 0.0), "a");
  EXPECT_EQ(sample_inverse_transform(d, std::nextafter(1.0, 0.0)), "b");
}

TEST(InverseTransformTest, CumulativeInvariants) {
  const WeightedDictionary d({{"a", 7}, {"b", 2}, {"c", 1}});
  EXPECT_DOUBLE_EQ(d.cumulative()[0], 0.7);
  EXPECT_EQ(d.cumulative().back(), 1.0);
  EXPECT_NEAR(d.probability(2), 0.1, 1e-12);
}

TEST(InverseTransformTest, RejectsBadDictionaries) {
  EXPECT_THROW(WeightedDictionary(std::vector<std::pair<std::string, double>>{}), DataError);
  EXPECT_THROW(WeightedDictionary({{"a", 0}}), DataError);
  EXPECT_THROW(WeightedDictionary({{"a", -1}}), DataError);
  EXPECT_THROW(WeightedDictionary({{"a", NAN}}), DataError);
  EXPECT_THROW(sample_inverse_transform(WeightedDictionary(), 0.1), DataError);
}

TEST(InverseTransformTest, MonteCarloFrequencies) {
  const WeightedDictionary d({{"a", 7}, {"b", 2}, {"c", 1}});
  const auto stream = rng::derive_stream(42, "mc");
  std::array<double, 3> counts{};
  constexpr int kDraws = 1000000;
  for (int i = 0; i < kDraws; ++i) counts[d.sample_index(stream.uniform_at(i))]++;
  const double l1 = std::abs(counts[0] / kDraws - 0.7) +
                    std::abs(counts[1] / kDraws - 0.2) +
                    std::abs(counts[2] / kDraws - 0.1);
  EXPECT_LE(l1, 0.01);
}

TEST(DictionaryFileTest, LoadsWithAndWithoutHeader) {
  const auto a = WeightedDictionary::load(write_file("d1.csv", "value,weight\nx,1\ny,3\n"));
  const auto b = WeightedDictionary::load(write_file("d2.csv", "x,1\ny,3\n"));
  EXPECT_EQ(a.values(), b.values());
  EXPECT_DOUBLE_EQ(a.probability(1), 0.75);
  EXPECT_THROW(WeightedDictionary::load(write_file("d3.csv", "x,abc\n")),
               DataError);
  EXPECT_THROW(WeightedDictionary::load(write_file("d4.csv", "x,1,2\n")),
               DataError);
}

TEST(DictionaryFileTest, ConditionalNeedsFallback) {
  EXPECT_THROW(ConditionalDictionary::load(write_file("c1.csv", "ES,f,1\n")),
               DataError);
  const auto c = ConditionalDictionary::load(
      write_file("c2.csv", "country,value,weight\nES,f,1\nES,m,1\n*,x,1\n"));
  EXPECT_EQ(c.arity(), 1u);
  EXPECT_NE(c.find({"ES"}), nullptr);
  EXPECT_EQ(c.find({"US"}), nullptr);
  EXPECT_EQ(c.lookup({"US"}).value(0), "x");
}

TEST(GeneratorTest, SexFromCountryMirrorsNestedRun) {
  const auto model = TypeModel(
      parse_node("node Person {"
                 " country: string = dictionary(file=\"countries.csv\")"
                 " sex: string = conditional(file=\"sex_by_country.csv\") "
                 "correlated(country) }"),
      42, PropertyGeneratorLibrary::with_builtins(), kSocial);
  const auto& pg_country = model.generator(0);
  const auto& pg_sex = model.generator(1);
  const auto r_country = model.stream(0);
  const auto r_sex = model.stream(1);
  for (Id i = 0; i < 1000; ++i) {
    const Value country = run_generator(pg_country, i, r_country.value_at(i), {});
    const Value expected = run_generator(pg_sex, i, r_sex.value_at(i),
                                         std::span<const Value>(&country, 1));
    EXPECT_EQ(model.value(1, i), expected);
  }
}

TEST(GeneratorTest, UuidIsTheId) {
  const auto lib = PropertyGeneratorLibrary::with_builtins();
  dsl::GeneratorBinding binding{"uuid", {}, {}};
  const auto gen = lib.create(binding, {"T.id", {}, ValueType::kString, {}});
  EXPECT_EQ(run_generator(*gen, 1234, 99, {}), Value{"1234"});
  const auto igen = lib.create(binding, {"T.id", {}, ValueType::kInteger, {}});
  EXPECT_EQ(run_generator(*igen, 7, 99, {}), Value{std::int64_t{7}});
}

TEST(GeneratorTest, AfterIsStrictlyLater) {
  const auto lib = PropertyGeneratorLibrary::with_builtins();
  const auto binding =
      parse_node("node T { x: date = after(min=1, max=30) }").properties[0].generator;
  const auto gen = lib.create(
      binding, {"T.x", {}, ValueType::kDate, {ValueType::kDate, ValueType::kDate}});
  const auto s = rng::derive_stream(1, "after");
  for (Id i = 0; i < 10000; ++i) {
    const Value deps[] = {Date{static_cast<std::int64_t>(s.value_at(2 * i) % 5000)},
                          Date{static_cast<std::int64_t>(s.value_at(2 * i + 1) % 5000)}};
    const auto out = std::get<Date>(run_generator(*gen, i, s.value_at(i), deps));
    const auto latest = std::max(std::get<Date>(deps[0]), std::get<Date>(deps[1]));
    EXPECT_GT(out, latest);
    EXPECT_LE(out.days - latest.days, 30);
  }
}

TEST(GeneratorTest, ArityAndTypeMismatch) {
  const auto lib = PropertyGeneratorLibrary::with_builtins();
  dsl::GeneratorBinding uuid{"uuid", {}, {}};
  const auto gen = lib.create(uuid, {"T.id", {}, ValueType::kString, {}});
  const Value extra[] = {Value{"x"}};
  EXPECT_THROW(run_generator(*gen, 0, 0, extra), ConfigError);
  EXPECT_THROW(lib.create(uuid, {"T.id", {}, ValueType::kDate, {}}), ConfigError);
  EXPECT_THROW(lib.create(uuid, {"T.id", {}, ValueType::kString, {ValueType::kString}}),
               ConfigError);
  dsl::GeneratorBinding unknown{"nope", {}, {}};
  EXPECT_THROW(lib.create(unknown, {"T.x", {}, ValueType::kString, {}}), ConfigError);
  const auto after = parse_node("node T { x: date = after(min=0) }").properties[0].generator;
  EXPECT_THROW(lib.create(after, {"T.x", {}, ValueType::kDate, {ValueType::kDate}}),
               ConfigError);
  EXPECT_THROW(lib.create(after, {"T.x", {}, ValueType::kDate, {ValueType::kString}}),
               ConfigError);
  const auto dict = parse_node("node T { x: string = dictionary(file=\"missing.csv\") }")
                        .properties[0].generator;
  try {
    lib.create(dict, {"T.x", kSocial, ValueType::kString, {}});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.csv"), std::string::npos);
  }
}

TEST(GeneratorTest, UniformIntAndDateRanges) {
  const auto model = TypeModel(
      parse_node("node T { a: integer = uniformInt(lo=-3, hi=3) "
                 "b: date = date(lo=\"2020-02-27\", hi=\"2020-03-01\") }"),
      5, PropertyGeneratorLibrary::with_builtins(), kSocial);
  std::map<std::int64_t, int> seen;
  for (Id i = 0; i < 5000; ++i) {
    const auto a = std::get<std::int64_t>(model.value(0, i));
    EXPECT_GE(a, -3);
    EXPECT_LE(a, 3);
    seen[a]++;
    const auto b = format_date(std::get<Date>(model.value(1, i)));
    EXPECT_TRUE(b == "2020-02-27" || b == "2020-02-28" || b == "2020-02-29" ||
                b == "2020-03-01")
        << b;
  }
  EXPECT_EQ(seen.size(), 7u);
}

TypeModel person_model(std::uint64_t seed) {
  const auto schema = dsl::parse_schema(R"(
    node Person {
      country: string = dictionary(file="countries.csv")
      sex: string = conditional(file="sex_by_country.csv") correlated(country)
      name: string = conditional(file="names_by_country_sex.csv") correlated(country, sex)
    })");
  return TypeModel(schema.node_types[0], seed,
                   PropertyGeneratorLibrary::with_builtins(), kSocial);
}

TEST(PropertyTableTest, EmptyTable) {
  const auto t = generate_property_table(person_model(1), "name", 0, 4);
  EXPECT_TRUE(t.empty());
  EXPECT_EQ(t.tag(), "Person.name");
}

// Generating name alone recomputes country and sex at each id through the
// generators; no table for them is ever materialised.
TEST(PropertyTableTest, RecursiveInPlaceRecomputation) {
  const auto model = person_model(42);
  const auto names = generate_property_table(model, "name", 2000, 1);
  for (Id i = 0; i < names.size(); ++i) {
    const Value country = run_generator(model.generator(0), i,
                                        model.stream(0).value_at(i), {});
    const Value sex = run_generator(model.generator(1), i,
                                    model.stream(1).value_at(i),
                                    std::span<const Value>(&country, 1));
    const Value deps[] = {country, sex};
    EXPECT_EQ(names.value(i),
              run_generator(model.generator(2), i, model.stream(2).value_at(i), deps));
  }
}

TEST(PropertyTableTest, IndependentOfWorkerCount) {
  const auto model = person_model(42);
  const auto one = csv_of(generate_property_table(model, "name", 20000, 1));
  EXPECT_EQ(csv_of(generate_property_table(model, "name", 20000, 8)), one);
}

TEST(PropertyTableTest, InPlaceRegenerationMatchesRows) {
  const auto model = person_model(7);
  const auto table = generate_property_table(model, "name", 50000, 4);
  rng::StreamCursor pick(rng::derive_stream(0, "ids"));
  for (int k = 0; k < 1000; ++k) {
    const Id id = pick.bounded(table.size());
    EXPECT_EQ(model.value(model.index_of("name"), id), table.value(id));
  }
}

TEST(PropertyTableTest, FallbackRowsAreCounted) {
  const auto model = person_model(3);
  TableStats stats;
  const auto names = generate_property_table(model, "name", 20000, 3, &stats);
  const auto countries = generate_property_table(model, "country", 20000, 1);
  std::uint64_t expected = 0;
  for (Id i = 0; i < countries.size(); ++i) {
    const auto& c = std::get<std::string>(countries.value(i));
    if (c == "NG" || c == "MX") ++expected;
  }
  EXPECT_GT(expected, 0u);
  EXPECT_EQ(stats.fallback_rows, expected);
}

TEST(PropertyTableTest, DistributionFidelity) {
  write_file("w721.csv", "a,0.7\nb,0.2\nc,0.1\n");
  const auto model = TypeModel(
      parse_node("node T { x: string = dictionary(w721.csv) }"), 42,
      PropertyGeneratorLibrary::with_builtins(), scratch_dir());
  const auto table = generate_property_table(model, "x", 1000000, 4);
  std::map<std::string, double> freq;
  for (const auto& v : table.values()) freq[std::get<std::string>(v)] += 1e-6;
  const double l1 = std::abs(freq["a"] - 0.7) + std::abs(freq["b"] - 0.2) +
                    std::abs(freq["c"] - 0.1);
  EXPECT_LE(l1, 0.01);
}

TEST(PropertyTableTest, CorrelationFidelity) {
  // Two parent values with equal weight, each with its own child dictionary.
  write_file("parent.csv", "p,1\nq,1\n");
  write_file("child.csv", "p,x,0.6\np,y,0.3\np,z,0.1\nq,x,0.1\nq,y,0.1\nq,z,0.8\n*,x,1\n");
  const auto model = TypeModel(
      parse_node("node T { parent: string = dictionary(parent.csv) "
                 "child: string = conditional(child.csv) correlated(parent) }"),
      11, PropertyGeneratorLibrary::with_builtins(), scratch_dir());
  const Id n = 200000;  // ~10^5 samples per parent value
  const auto parents = generate_property_table(model, "parent", n, 2);
  const auto children = generate_property_table(model, "child", n, 2);
  std::map<std::string, std::map<std::string, double>> counts;
  std::map<std::string, double> totals;
  for (Id i = 0; i < n; ++i) {
    const auto& p = std::get<std::string>(parents.value(i));
    counts[p][std::get<std::string>(children.value(i))] += 1;
    totals[p] += 1;
  }
  const std::map<std::string, std::map<std::string, double>> expected = {
      {"p", {{"x", 0.6}, {"y", 0.3}, {"z", 0.1}}},
      {"q", {{"x", 0.1}, {"y", 0.1}, {"z", 0.8}}}};
  for (const auto& [p, dist] : expected) {
    EXPECT_GE(totals[p], 95000);
    double l1 = 0;
    for (const auto& [c, prob] : dist) l1 += std::abs(counts[p][c] / totals[p] - prob);
    EXPECT_LE(l1, 0.02) << p;
  }
}

TEST(PropertyTableTest, StreamsOfDifferentPropertiesAreUncorrelated) {
  const auto model = person_model(42);
  const auto a = model.stream(0);
  const auto b = model.stream(1);
  constexpr int kN = 1000000;
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  for (int i = 0; i < kN; ++i) {
    const double x = a.uniform_at(i);
    const double y = b.uniform_at(i);
    sa += x;
    sb += y;
    saa += x * x;
    sbb += y * y;
    sab += x * y;
  }
  const double cov = sab / kN - (sa / kN) * (sb / kN);
  const double va = saa / kN - (sa / kN) * (sa / kN);
  const double vb = sbb / kN - (sb / kN) * (sb / kN);
  EXPECT_LE(std::abs(cov / std::sqrt(va * vb)), 0.01);
}

TEST(TypeModelTest, RejectsCyclesAndUnknownProperties) {
  const auto lib = PropertyGeneratorLibrary::with_builtins();
  write_file("cyc.csv", "a,x,1\n*,x,1\n");
  EXPECT_THROW(TypeModel(parse_node("node T { a: string = conditional(cyc.csv) "
                                    "correlated(b) b: string = conditional(cyc.csv) "
                                    "correlated(a) }"),
                         1, lib, scratch_dir()),
               ConfigError);
  EXPECT_THROW(TypeModel(parse_node("node T { a: string = conditional(cyc.csv) "
                                    "correlated(zzz) }"),
                         1, lib, scratch_dir()),
               ConfigError);
}

TEST(TypeModelTest, EdgePropertiesReadEndpointValues) {
  const auto schema = dsl::parse_schema(R"(
    node P { born: date = date(lo="2010-01-01", hi="2010-12-31") }
    node M { }
    edge creates: P -> M {
      structure = degree(constant=2)
      at: date = after(min=1, max=10) correlated(tail.born)
    })");
  const auto lib = PropertyGeneratorLibrary::with_builtins();
  TypeModel person(schema.node_types[0], 9, lib, kSocial);
  TypeModel message(schema.node_types[1], 9, lib, kSocial);
  TypeModel creates(schema.edge_types[0], 9, lib, kSocial, &person, &message);
  const EdgeTable edges("creates", 3, 6, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 5}});
  EXPECT_THROW(creates.value(0, 0), ConfigError);
  creates.bind_edges(&edges);
  const auto table = generate_property_table(creates, "at", edges.size(), 2);
  for (Id e = 0; e < edges.size(); ++e) {
    const auto born = std::get<Date>(person.value(0, edges.edge(e).tail));
    const auto at = std::get<Date>(table.value(e));
    EXPECT_GT(at, born);
    EXPECT_LE(at.days - born.days, 10);
  }
}

}  // namespace
}  // namespace graphsynth::propgen
