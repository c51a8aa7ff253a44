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

#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "graphsynth/error.hpp"
#include "graphsynth/experiment/experiment.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace graphsynth::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kSocial = GRAPHSYNTH_DATA_DIR "/social";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / "graphsynth_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Copy of the running example with its data files and a smaller scale.
fs::path small_social(const std::string& name, const std::string& scale) {
  const auto dir = scratch_dir(name);
  for (const auto& entry : fs::directory_iterator(kSocial)) {
    fs::copy_file(entry.path(), dir / entry.path().filename());
  }
  auto text = read_file(kSocial / "schema.gs");
  text.replace(text.find("scale Person = 10000"), 20, scale);
  std::ofstream(dir / "schema.gs", std::ios::trunc) << text;
  return dir / "schema.gs";
}

fs::path write_schema(const std::string& name, const std::string& text) {
  const auto path = scratch_dir(name) / "schema.gs";
  std::ofstream(path) << text;
  return path;
}

TEST(GenerateTest, RunningExampleLayoutAndDeterminism) {
  const auto schema = small_social("social", "scale Person = 1500");
  const auto a = schema.parent_path() / "out_a";
  const auto b = schema.parent_path() / "out_b";
  const auto first = run_cli({"generate", "--schema", schema.string(), "--out", a.string()});
  ASSERT_EQ(first.code, kOk) << first.err;
  const auto second = run_cli({"generate", "--schema", schema.string(), "--out", b.string(),
                               "--seed", "42", "--threads", "3"});
  ASSERT_EQ(second.code, kOk) << second.err;

  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(a)) {
    names.push_back(entry.path().filename().string());
    EXPECT_EQ(read_file(entry.path()), read_file(b / entry.path().filename()))
        << entry.path().filename();
  }
  std::sort(names.begin(), names.end());
  const std::vector<std::string> want = {
      "Message.text.csv",        "Message.topic.csv",   "Person.country.csv",
      "Person.creationDate.csv", "Person.interest.csv", "Person.name.csv",
      "Person.sex.csv",          "creates.creationDate.csv", "creates.csv",
      "knows.csv",               "report.json"};
  EXPECT_EQ(names, want);

  const auto report = nlohmann::json::parse(read_file(a / "report.json"));
  EXPECT_EQ(report["seed"], 42);
  EXPECT_EQ(report["node_types"]["Person"]["size"], 1500);
  EXPECT_EQ(report["node_types"]["Message"]["size"],
            report["edge_types"]["creates"]["edges"]);
}

TEST(GenerateTest, SeedChangesOutput) {
  const auto schema = small_social("seeds", "scale Person = 300");
  const auto a = schema.parent_path() / "a";
  const auto b = schema.parent_path() / "b";
  ASSERT_EQ(run_cli({"generate", "--schema", schema.string(), "--out", a.string()}).code, kOk);
  ASSERT_EQ(run_cli({"generate", "--schema", schema.string(), "--out", b.string(), "--seed",
                     "7"})
                .code,
            kOk);
  EXPECT_NE(read_file(a / "Person.name.csv"), read_file(b / "Person.name.csv"));
}

TEST(GenerateTest, MissingSchemaIsParseFailure) {
  const auto r = run_cli({"generate", "--schema", "/no/such/dir/s.gs", "--out", "/tmp/x"});
  EXPECT_EQ(r.code, kParse);
  EXPECT_NE(r.err.find("/no/such/dir/s.gs"), std::string::npos);
}

TEST(GenerateTest, SyntaxErrorIsParseFailure) {
  const auto schema = write_schema("syntax", "node A {\n  x: string = uuid(\n}\n");
  const auto r = run_cli({"generate", "--schema", schema.string(), "--out", "/tmp/x"});
  EXPECT_EQ(r.code, kParse);
  EXPECT_NE(r.err.find("schema.gs:"), std::string::npos);
}

TEST(GenerateTest, InvalidSchemaIsValidationFailure) {
  const auto schema = write_schema(
      "invalid", "node A { x: string = mystery() }\nedge e: A -- B { structure = rmat() }\n"
                 "scale A = 3\n");
  const auto r = run_cli({"generate", "--schema", schema.string(), "--out", "/tmp/x"});
  EXPECT_EQ(r.code, kValidate);
  EXPECT_NE(r.err.find("mystery"), std::string::npos);
  EXPECT_NE(r.err.find("'B'"), std::string::npos);
}

TEST(GenerateTest, BadGeneratorConfigurationIsValidationFailure) {
  const auto schema = write_schema(
      "config", "node A { x: string = dictionary(file=\"absent.csv\") }\nscale A = 3\n");
  const auto r = run_cli({"generate", "--schema", schema.string(), "--out", "/tmp/x"});
  EXPECT_EQ(r.code, kValidate);
  EXPECT_NE(r.err.find("absent.csv"), std::string::npos);
}

TEST(GenerateTest, TaskFailureIsExecutionFailure) {
  const auto schema = write_schema(
      "execute", "node P { c: string = dictionary(file=\"c.csv\") }\n"
                 "edge e: P -- P { structure = rmat() join = c ~ \"j.csv\" }\nscale P = 64\n");
  std::ofstream(schema.parent_path() / "c.csv") << "value,weight\nx,1\nz,1\n";
  std::ofstream(schema.parent_path() / "j.csv") << "valueX,valueY,probability\nx,x,1\n";
  const auto r = run_cli({"generate", "--schema", schema.string(), "--out",
                          (schema.parent_path() / "out").string()});
  EXPECT_EQ(r.code, kExecute);
  EXPECT_NE(r.err.find("match e"), std::string::npos);
}

TEST(GenerateTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"generate", "--schema", "x.gs"}).code, kUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
}

TEST(GroupSizeTest, WorkedExample) {
  // Shares (0.4, 0.25, 0.25, 0.25) / 1.15 of 100: floors 34, 21, 21, 21 and
  // the three leftover units go to the largest remainders, first index first.
  const auto q = experiment::geometric_group_sizes(100, 4, 0.4);
  EXPECT_EQ(q, (std::vector<std::uint64_t>{35, 22, 22, 21}));
}

TEST(GroupSizeTest, LargestRemainderProperties) {
  rng::StreamCursor rnd(rng::derive_stream(3, "sizes"));
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 1 + rnd.bounded(40);
    const Id n = k + rnd.bounded(5000);
    const double p = 0.05 + 0.9 * rnd.uniform();
    const auto q = experiment::geometric_group_sizes(n, k, p);
    ASSERT_EQ(q.size(), k);
    EXPECT_EQ(std::accumulate(q.begin(), q.end(), Id{0}), n);
    double total = 0;
    std::vector<double> w(k);
    for (std::size_t i = 0; i < k; ++i) {
      w[i] = std::max(p * std::pow(1 - p, static_cast<double>(i)), 1.0 / static_cast<double>(k));
      total += w[i];
    }
    for (std::size_t i = 0; i < k; ++i) {
      const double exact = static_cast<double>(n) * w[i] / total;
      EXPECT_LT(std::abs(static_cast<double>(q[i]) - exact), 1.0);
    }
  }
  EXPECT_THROW(experiment::geometric_group_sizes(3, 4, 0.4), ConfigError);
  EXPECT_THROW(experiment::geometric_group_sizes(10, 0, 0.4), ConfigError);
  EXPECT_THROW(experiment::geometric_group_sizes(10, 2, 0), ConfigError);
}

TEST(ExperimentTest, SingleValueIsExact) {
  experiment::ExperimentConfig c;
  c.nodes = 1000;
  c.k = 1;
  const auto r = experiment::run_experiment(c);
  EXPECT_EQ(r.l1_distance, 0.0);
  EXPECT_EQ(r.fill, r.sizes);
}

TEST(ExperimentTest, ReportsAreReproducible) {
  const auto dir = scratch_dir("experiment");
  const auto run_once = [&](const std::string& tag) {
    const auto report = dir / ("r" + tag + ".json");
    const auto cdf = dir / ("c" + tag + ".csv");
    const auto r = run_cli({"experiment", "--generator", "planted", "--nodes", "2000",
                            "--values", "8", "--seed", "5", "--report", report.string(),
                            "--cdf", cdf.string()});
    EXPECT_EQ(r.code, kOk) << r.err;
    auto json = nlohmann::json::parse(read_file(report));
    EXPECT_TRUE(json.contains("seconds"));
    json.erase("seconds");
    return std::pair{json.dump(), read_file(cdf)};
  };
  const auto a = run_once("a");
  const auto b = run_once("b");
  EXPECT_EQ(a, b);
  const auto json = nlohmann::json::parse(a.first);
  EXPECT_EQ(json["n"], 2000);
  EXPECT_EQ(json["k"], 8);
  // Header plus one row per unordered pair.
  EXPECT_EQ(std::count(a.second.begin(), a.second.end(), '\n'), 1 + 8 * 9 / 2);
}

TEST(ExperimentTest, RmatRuns) {
  const auto dir = scratch_dir("rmat");
  const auto r = run_cli({"experiment", "--generator", "rmat", "--scale", "10", "--values",
                          "4", "--report", (dir / "r.json").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto json = nlohmann::json::parse(read_file(dir / "r.json"));
  EXPECT_EQ(json["n"], 1024);
  EXPECT_EQ(json["m"], 1024 * 16);
}

TEST(ExperimentTest, ArgumentErrors) {
  EXPECT_EQ(run_cli({"experiment", "--generator", "planted", "--scale", "10", "--values", "4",
                     "--report", "/tmp/r.json"})
                .code,
            kUsage);
  EXPECT_EQ(run_cli({"experiment", "--generator", "planted", "--nodes", "100", "--scale",
                     "10", "--values", "4", "--report", "/tmp/r.json"})
                .code,
            kUsage);
  EXPECT_EQ(run_cli({"experiment", "--generator", "lfr", "--nodes", "100", "--values", "4",
                     "--report", "/tmp/r.json"})
                .code,
            kUsage);
  // More values than nodes.
  EXPECT_EQ(run_cli({"experiment", "--generator", "rmat", "--scale", "2", "--values", "8",
                     "--report", "/tmp/r.json"})
                .code,
            kValidate);
}

}  // namespace
}  // namespace graphsynth::cli
