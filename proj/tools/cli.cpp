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

#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "graphsynth/dsl/parser.hpp"
#include "graphsynth/error.hpp"
#include "graphsynth/experiment/experiment.hpp"
#include "graphsynth/pipeline/pipeline.hpp"

namespace graphsynth::cli {
namespace {

struct GenerateArgs {
  std::string schema;
  std::string out;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::string target = "counts";
};

struct ExperimentArgs {
  std::string generator;
  std::optional<Id> nodes;
  std::optional<unsigned> scale;
  std::size_t values = 0;
  double geo_p = 0.4;
  std::uint64_t seed = 42;
  std::string report;
  std::string cdf;
  double mixing = 0.1;
  std::string target = "counts";
  std::string rule = "gain";
};

matcher::TargetMode target_mode(const std::string& name) {
  return name == "density" ? matcher::TargetMode::kDensity : matcher::TargetMode::kCounts;
}

int generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<pipeline::Pipeline> p;
  try {
    p.emplace(pipeline::Pipeline::from_file(a.schema));
  } catch (const dsl::ParseError& e) {
    err << a.schema << ":" << e.what() << "\n";
    return kParse;
  } catch (const pipeline::ValidationError& e) {
    for (const auto& d : e.diagnostics()) {
      err << a.schema << ":" << dsl::format_diagnostic(d) << "\n";
    }
    return kValidate;
  } catch (const DataError& e) {
    // Only the schema file itself is read before validation.
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const Error& e) {
    err << a.schema << ": " << e.what() << "\n";
    return kValidate;
  }
  for (const auto& d : p->warnings()) {
    err << a.schema << ":" << dsl::format_diagnostic(d) << "\n";
  }
  try {
    pipeline::ExecuteOptions options;
    options.seed = a.seed;
    options.threads = a.threads;
    options.target_mode = target_mode(a.target);
    const auto data = p->execute(options);
    pipeline::write_dataset(data, a.out);
    out << "wrote " << data.property_tables.size() << " property tables and "
        << data.edge_tables.size() << " edge tables to " << a.out << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExecute;
  }
  return kOk;
}

int experiment_cmd(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  experiment::ExperimentConfig config;
  if (a.generator == "planted") {
    if (!a.nodes || a.scale) {
      err << "error: --generator planted takes --nodes\n";
      return kUsage;
    }
    config.generator = experiment::GraphKind::kPlanted;
    config.nodes = *a.nodes;
    config.planted.mixing = a.mixing;
  } else {
    if (!a.scale || a.nodes) {
      err << "error: --generator rmat takes --scale\n";
      return kUsage;
    }
    config.generator = experiment::GraphKind::kRmat;
    config.scale = *a.scale;
  }
  config.k = a.values;
  config.geo_p = a.geo_p;
  config.seed = a.seed;
  config.target_mode = target_mode(a.target);
  config.rule = a.rule == "ratio" ? matcher::ScoreRule::kResidualRatio
                                  : matcher::ScoreRule::kBalancedGain;
  experiment::ExperimentResult r;
  try {
    r = experiment::run_experiment(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kValidate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExecute;
  }
  try {
    std::ofstream report(a.report, std::ios::binary | std::ios::trunc);
    if (!report) throw DataError("cannot create " + a.report);
    report << experiment::experiment_report_json(r);
    if (!report.flush()) throw DataError("write failed for " + a.report);
    if (!a.cdf.empty()) matcher::write_cdf_csv(r.cdf, std::filesystem::path(a.cdf));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExecute;
  }
  out << "n=" << r.n << " m=" << r.m << " k=" << r.k << " l1=" << r.l1_distance
      << " seconds=" << r.seconds << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic property graph generator", "graphsynth"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "Generate a dataset from a schema file");
  gen->add_option("--schema", g.schema, "Schema file")->required();
  gen->add_option("--out", g.out, "Output directory")->required();
  gen->add_option("--seed", g.seed, "Master seed")->capture_default_str();
  gen->add_option("--threads", g.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  gen->add_option("--target", g.target, "Matching target units")
      ->check(CLI::IsMember({"counts", "density"}))
      ->capture_default_str();

  ExperimentArgs x;
  auto* exp = app.add_subcommand("experiment", "Run the matching-quality experiment");
  exp->add_option("--generator", x.generator, "Structure generator")
      ->required()
      ->check(CLI::IsMember({"planted", "rmat"}));
  auto* nodes = exp->add_option("--nodes", x.nodes, "Node count (planted)");
  auto* scale = exp->add_option("--scale", x.scale, "log2 of the node count (rmat)");
  nodes->excludes(scale);
  exp->add_option("--values", x.values, "Number of property values k")->required();
  exp->add_option("--geo-p", x.geo_p, "Geometric group-size parameter")->capture_default_str();
  exp->add_option("--seed", x.seed, "Seed")->capture_default_str();
  exp->add_option("--report", x.report, "Report file (JSON)")->required();
  exp->add_option("--cdf", x.cdf, "CDF table (CSV)");
  exp->add_option("--mixing", x.mixing, "Planted mixing factor")->capture_default_str();
  exp->add_option("--target", x.target, "Matching target units")
      ->check(CLI::IsMember({"counts", "density"}))
      ->capture_default_str();
  exp->add_option("--rule", x.rule, "Capacity balancing rule")
      ->check(CLI::IsMember({"gain", "ratio"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  if (gen->parsed()) return generate(g, out, err);
  return experiment_cmd(x, out, err);
}

}  // namespace graphsynth::cli
