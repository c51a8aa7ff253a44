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

#include "graphsynth/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <numeric>
#include <sstream>
#include <thread>

#include "graphsynth/dsl/parser.hpp"
#include "graphsynth/rng/permutation.hpp"
#include "graphsynth/rng/random_stream.hpp"
#include "graphsynth/store/csv.hpp"
#include "json.hpp"

namespace graphsynth::pipeline {
namespace {

using StructureMap =
    std::map<std::string, const structgen::StructureGenerator*, std::less<>>;

std::string join_messages(const std::vector<dsl::Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (d.severity != dsl::Severity::kError) continue;
    if (!out.empty()) out += "\n";
    out += dsl::format_diagnostic(d);
  }
  return out;
}

const dsl::EdgeTypeDecl* find_edge(const dsl::Schema& schema, std::string_view name) {
  return schema.find_edge_type(name);
}

const std::string& other_end(const dsl::EdgeTypeDecl& e, std::string_view type) {
  return e.tail_type == type ? e.head_type : e.tail_type;
}

std::string stream_tag(std::string_view edge, std::string_view what) {
  return std::string(edge) + "#" + std::string(what);
}

EdgeTable remap(const EdgeTable& raw, const std::vector<Id>& tails,
                const std::vector<Id>* heads) {
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const Edge& e : raw.edges()) {
    edges.push_back({tails[e.tail], heads ? (*heads)[e.head] : e.head});
  }
  return EdgeTable(raw.name(), raw.tail_count(), raw.head_count(), std::move(edges));
}

}  // namespace

ValidationError::ValidationError(std::vector<dsl::Diagnostic> diagnostics)
    : ConfigError(join_messages(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

Catalog Catalog::builtins() {
  return {propgen::PropertyGeneratorLibrary::with_builtins(),
          structgen::StructureGeneratorLibrary::with_builtins()};
}

dsl::GeneratorRegistry Catalog::registry() const {
  return {properties.names(), structures.names()};
}

std::string describe(const SizeRule& rule) {
  switch (rule.source) {
    case SizeSource::kScale:
      return "scale";
    case SizeSource::kInverted:
      return "inverted from " + rule.edge;
    case SizeSource::kHeadsOf:
      return "heads of " + rule.edge;
    case SizeSource::kSameAs:
      return "same as other end of " + rule.edge;
  }
  return "";
}

SizePlan infer_sizes(const dsl::Schema& schema, const StructureMap& structures) {
  if (schema.scales.size() != 1) {
    throw ConfigError("exactly one scale directive is required");
  }
  const auto generator = [&](const dsl::EdgeTypeDecl& e)
      -> const structgen::StructureGenerator& {
    const auto it = structures.find(e.name);
    if (it == structures.end() || !it->second) {
      throw ConfigError(e.name + ": no structure generator");
    }
    return *it->second;
  };
  for (const auto& e : schema.edge_types) {
    if (generator(e).fresh_heads() && e.tail_type == e.head_type) {
      throw ConfigError(e.name + ": " + std::string(generator(e).name()) +
                        "() mints new heads, so tail and head must be different "
                        "node types");
    }
  }

  SizePlan plan;
  const auto& scale = schema.scales.front();
  if (schema.find_node_type(scale.target)) {
    // A scale on the head of a fresh-head edge type counts that edge's
    // heads: the tail is sized by inversion and the heads follow.
    const dsl::EdgeTypeDecl* via = nullptr;
    for (const auto& e : schema.edge_types) {
      if (e.head_type == scale.target && generator(e).fresh_heads()) {
        via = &e;
        break;
      }
    }
    if (via) {
      plan[via->tail_type] = {SizeSource::kInverted, via->name,
                              generator(*via).invert_size(scale.count)};
      plan[scale.target] = {SizeSource::kHeadsOf, via->name, 0};
    } else {
      plan[scale.target] = {SizeSource::kScale, "", scale.count};
    }
  } else if (const auto* e = find_edge(schema, scale.target)) {
    plan[e->tail_type] = {SizeSource::kInverted, e->name,
                          generator(*e).invert_size(scale.count)};
  } else {
    throw ConfigError("scale names undeclared type '" + scale.target + "'");
  }

  std::function<std::optional<Id>(const std::string&, int)> static_count =
      [&](const std::string& type, int depth) -> std::optional<Id> {
    const auto it = plan.find(type);
    if (it == plan.end() || depth > 64) return std::nullopt;
    switch (it->second.source) {
      case SizeSource::kScale:
      case SizeSource::kInverted:
        return it->second.count;
      case SizeSource::kHeadsOf:
        return std::nullopt;
      case SizeSource::kSameAs:
        return static_count(other_end(*find_edge(schema, it->second.edge), type),
                            depth + 1);
    }
    return std::nullopt;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : schema.edge_types) {
      const bool has_tail = plan.contains(e.tail_type);
      const bool has_head = plan.contains(e.head_type);
      if (generator(e).fresh_heads()) {
        if (has_head) {
          const auto& rule = plan.at(e.head_type);
          if (rule.source != SizeSource::kHeadsOf || rule.edge != e.name) {
            throw ConfigError("conflicting sizes: " + e.head_type + " is sized by " +
                              describe(rule) + " but " + e.name +
                              " creates one " + e.head_type + " per edge");
          }
        } else if (has_tail) {
          plan[e.head_type] = {SizeSource::kHeadsOf, e.name, 0};
          changed = true;
        }
        continue;
      }
      if (e.tail_type == e.head_type) continue;
      if (has_tail && !has_head) {
        plan[e.head_type] = {SizeSource::kSameAs, e.name, 0};
        changed = true;
      } else if (!has_tail && has_head) {
        plan[e.tail_type] = {SizeSource::kSameAs, e.name, 0};
        changed = true;
      } else if (has_tail && has_head) {
        const auto a = static_count(e.tail_type, 0);
        const auto b = static_count(e.head_type, 0);
        if (a && b && *a != *b) {
          throw ConfigError("conflicting sizes: " + e.name + " needs " + e.tail_type +
                            " and " + e.head_type + " to have equal sizes (" +
                            std::to_string(*a) + " vs " + std::to_string(*b) + ")");
        }
      }
    }
  }
  for (const auto& t : schema.node_types) {
    if (!plan.contains(t.name)) throw ConfigError("undetermined size: " + t.name);
  }
  return plan;
}

std::string Task::name() const {
  switch (kind) {
    case TaskKind::kGenProperty:
      return "generate " + owner + "." + property;
    case TaskKind::kGenStructure:
      return "structure " + owner;
    case TaskKind::kMatch:
      return "match " + owner;
  }
  return owner;
}

std::optional<std::size_t> TaskDag::find(TaskKind kind, std::string_view owner,
                                         std::string_view property) const {
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    if (t.kind == kind && t.owner == owner && t.property == property) return i;
  }
  return std::nullopt;
}

TaskDag build_task_dag(const dsl::Schema& schema, const SizePlan& sizes) {
  TaskDag dag;
  for (const auto& t : schema.node_types) {
    for (const auto& p : t.properties) {
      dag.tasks.push_back({TaskKind::kGenProperty, t.name, p.name});
    }
  }
  for (const auto& e : schema.edge_types) {
    dag.tasks.push_back({TaskKind::kGenStructure, e.name, ""});
    if (e.correlation) dag.tasks.push_back({TaskKind::kMatch, e.name, ""});
    for (const auto& p : e.properties) {
      dag.tasks.push_back({TaskKind::kGenProperty, e.name, p.name});
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> edges;
  const auto depend = [&](std::optional<std::size_t> before, std::size_t after) {
    if (before && *before != after) edges.insert({*before, after});
  };
  const auto property_task = [&](std::string_view owner, std::string_view property) {
    return dag.find(TaskKind::kGenProperty, owner, property);
  };
  // Tasks that must finish before the size of `type` is known.
  std::function<void(const std::string&, std::size_t, int)> size_deps =
      [&](const std::string& type, std::size_t task, int depth) {
        const auto it = sizes.find(type);
        if (it == sizes.end() || depth > 64) return;
        const auto& rule = it->second;
        if (rule.source == SizeSource::kHeadsOf) {
          depend(dag.find(TaskKind::kGenStructure, rule.edge), task);
        } else if (rule.source == SizeSource::kSameAs) {
          if (const auto* e = schema.find_edge_type(rule.edge)) {
            size_deps(other_end(*e, type), task, depth + 1);
          }
        }
      };

  for (const auto& t : schema.node_types) {
    for (const auto& p : t.properties) {
      const auto self = *property_task(t.name, p.name);
      for (const auto& dep : p.depends_on) depend(property_task(t.name, dep.property), self);
      size_deps(t.name, self, 0);
    }
  }
  for (const auto& e : schema.edge_types) {
    const auto structure = *dag.find(TaskKind::kGenStructure, e.name);
    size_deps(e.tail_type, structure, 0);
    size_deps(e.head_type, structure, 0);
    const auto match = dag.find(TaskKind::kMatch, e.name);
    if (match) {
      depend(structure, *match);
      depend(property_task(e.tail_type, e.correlation->tail_property), *match);
      depend(property_task(e.head_type, e.correlation->head_property), *match);
    }
    for (const auto& p : e.properties) {
      const auto self = *property_task(e.name, p.name);
      depend(match ? match : std::optional<std::size_t>(structure), self);
      for (const auto& dep : p.depends_on) {
        const std::string& owner = dep.scope == dsl::RefScope::kTail   ? e.tail_type
                                   : dep.scope == dsl::RefScope::kHead ? e.head_type
                                                                       : e.name;
        depend(property_task(owner, dep.property), self);
      }
    }
  }
  dag.edges.assign(edges.begin(), edges.end());

  const std::size_t n = dag.tasks.size();
  std::vector<std::vector<std::size_t>> after(n), before(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [a, b] : dag.edges) {
    after[a].push_back(b);
    before[b].push_back(a);
    indegree[b]++;
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    const auto i = *ready.begin();
    ready.erase(ready.begin());
    dag.order.push_back(i);
    for (auto j : after[i]) {
      if (--indegree[j] == 0) ready.insert(j);
    }
  }
  if (dag.order.size() != n) {
    // Every task left over waits on another leftover task; walking
    // predecessors from any of them must revisit a task.
    std::size_t at = 0;
    while (indegree[at] == 0) ++at;
    std::vector<std::size_t> path;
    std::vector<int> position(n, -1);
    while (position[at] < 0) {
      position[at] = static_cast<int>(path.size());
      path.push_back(at);
      for (auto p : before[at]) {
        if (indegree[p] > 0) {
          at = p;
          break;
        }
      }
    }
    std::vector<std::size_t> cycle(path.begin() + position[at], path.end());
    std::reverse(cycle.begin(), cycle.end());
    std::string message = "dependency cycle: ";
    for (auto i : cycle) message += dag.tasks[i].name() + " -> ";
    message += dag.tasks[cycle.front()].name();
    throw ConfigError(message);
  }
  return dag;
}

std::string report_json(const GenerationReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  auto& nodes = j["node_types"] = nlohmann::ordered_json::object();
  for (const auto& n : report.node_types) {
    nodes[n.name] = {{"size", n.size}, {"size_source", n.size_source}};
  }
  auto& edges = j["edge_types"] = nlohmann::ordered_json::object();
  for (const auto& e : report.edge_types) {
    nlohmann::ordered_json entry = {{"edges", e.edges},
                                    {"tail_count", e.tail_count},
                                    {"head_count", e.head_count},
                                    {"structure", e.structure},
                                    {"structure_stream", e.structure_stream},
                                    {"matching", e.matching}};
    if (e.l1_distance) entry["l1_distance"] = *e.l1_distance;
    edges[e.name] = std::move(entry);
  }
  auto& props = j["properties"] = nlohmann::ordered_json::object();
  for (const auto& p : report.properties) {
    props[p.table] = {{"rows", p.rows},
                      {"generator", p.generator},
                      {"stream", p.table},
                      {"fallback_rows", p.fallback_rows}};
  }
  return j.dump(2) + "\n";
}

const PropertyTable* Dataset::find_property(std::string_view tag) const {
  for (const auto& t : property_tables) {
    if (t.tag() == tag) return &t;
  }
  return nullptr;
}

const EdgeTable* Dataset::find_edge(std::string_view name) const {
  for (const auto& t : edge_tables) {
    if (t.name() == name) return &t;
  }
  return nullptr;
}

Pipeline::Pipeline(dsl::Schema schema, std::filesystem::path base_dir,
                   Catalog catalog)
    : schema_(std::move(schema)),
      base_dir_(std::move(base_dir)),
      catalog_(std::move(catalog)) {
  auto diagnostics = dsl::validate_schema(schema_, catalog_.registry());
  if (dsl::has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
  warnings_ = std::move(diagnostics);

  StructureMap view;
  for (const auto& e : schema_.edge_types) {
    auto gen = catalog_.structures.create(e.structure, {e.name, base_dir_});
    view[e.name] = gen.get();
    structures_[e.name] = std::move(gen);
    if (e.correlation) {
      const auto path = std::filesystem::path(e.correlation->distribution_path);
      try {
        joints_[e.name] = matcher::JointDistribution::load(
            path.is_absolute() ? path : base_dir_ / path, e.tail_type == e.head_type);
      } catch (const DataError& ex) {
        throw ConfigError(e.name + ": " + ex.what());
      }
    }
  }
  // Build every model once so missing files and bad parameters surface
  // before anything runs.
  std::map<std::string, std::unique_ptr<propgen::TypeModel>, std::less<>> models;
  for (const auto& t : schema_.node_types) {
    models[t.name] = std::make_unique<propgen::TypeModel>(t, 0, catalog_.properties,
                                                          base_dir_);
  }
  for (const auto& e : schema_.edge_types) {
    propgen::TypeModel(e, 0, catalog_.properties, base_dir_,
                       models.at(e.tail_type).get(), models.at(e.head_type).get());
  }
  sizes_ = infer_sizes(schema_, view);
  dag_ = build_task_dag(schema_, sizes_);
}

Pipeline::~Pipeline() = default;
Pipeline::Pipeline(Pipeline&&) noexcept = default;
Pipeline& Pipeline::operator=(Pipeline&&) noexcept = default;

Pipeline Pipeline::from_file(const std::filesystem::path& path, Catalog catalog) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read schema file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  auto schema = dsl::parse_schema(text.str());
  return Pipeline(std::move(schema), path.parent_path(), std::move(catalog));
}

propgen::TypeModel Pipeline::node_model(std::uint64_t seed,
                                        std::string_view type) const {
  const auto* decl = schema_.find_node_type(type);
  if (!decl) throw ConfigError("unknown node type '" + std::string(type) + "'");
  return propgen::TypeModel(*decl, seed, catalog_.properties, base_dir_);
}

Value Pipeline::regenerate(std::uint64_t seed, std::string_view type,
                           std::string_view property, Id id) const {
  const auto model = node_model(seed, type);
  return model.value(model.index_of(property), id);
}

Dataset Pipeline::execute(const ExecuteOptions& options) const {
  const unsigned threads = options.threads == 0
                               ? std::max(1u, std::thread::hardware_concurrency())
                               : options.threads;
  const std::uint64_t seed = options.seed;

  std::map<std::string, std::unique_ptr<propgen::TypeModel>, std::less<>> models;
  for (const auto& t : schema_.node_types) {
    models[t.name] = std::make_unique<propgen::TypeModel>(t, seed, catalog_.properties,
                                                          base_dir_);
  }
  for (const auto& e : schema_.edge_types) {
    models[e.name] = std::make_unique<propgen::TypeModel>(
        e, seed, catalog_.properties, base_dir_, models.at(e.tail_type).get(),
        models.at(e.head_type).get());
  }

  std::map<std::string, PropertyTable, std::less<>> tables;
  std::map<std::string, EdgeTable, std::less<>> raw;    // awaiting a match
  std::map<std::string, EdgeTable, std::less<>> final;  // endpoints are table ids
  std::map<std::string, Id, std::less<>> resolved;
  Dataset out;
  out.report.seed = seed;
  std::map<std::string, EdgeReport, std::less<>> edge_reports;

  std::function<Id(const std::string&)> size_of = [&](const std::string& type) -> Id {
    if (const auto it = resolved.find(type); it != resolved.end()) return it->second;
    const auto& rule = sizes_.at(type);
    Id n = 0;
    switch (rule.source) {
      case SizeSource::kScale:
      case SizeSource::kInverted:
        n = rule.count;
        break;
      case SizeSource::kHeadsOf: {
        const auto it = final.find(rule.edge);
        const auto jt = raw.find(rule.edge);
        if (it == final.end() && jt == raw.end()) {
          throw ExecutionError("size of " + type + " read before " + rule.edge +
                               " was generated");
        }
        n = (it != final.end() ? it->second : jt->second).head_count();
        break;
      }
      case SizeSource::kSameAs:
        resolved[type] = 0;  // guards against a malformed plan looping
        n = size_of(other_end(*schema_.find_edge_type(rule.edge), type));
        break;
    }
    resolved[type] = n;
    return n;
  };

  const auto finish_edge = [&](const std::string& name, EdgeTable table) {
    auto [it, inserted] = final.insert_or_assign(name, std::move(table));
    models.at(name)->bind_edges(&it->second);
  };

  for (const auto index : dag_.order) {
    const Task& task = dag_.tasks[index];
    try {
      switch (task.kind) {
        case TaskKind::kGenProperty: {
          const auto& model = *models.at(task.owner);
          const bool is_edge = schema_.find_edge_type(task.owner) != nullptr;
          const Id n = is_edge ? final.at(task.owner).size() : size_of(task.owner);
          propgen::TableStats stats;
          auto table = propgen::generate_property_table(model, task.property, n,
                                                        threads, &stats);
          out.report.properties.push_back(
              {table.tag(), table.size(),
               model.generator(model.index_of(task.property)).name().data(),
               stats.fallback_rows});
          tables.insert_or_assign(table.tag(), std::move(table));
          break;
        }
        case TaskKind::kGenStructure: {
          const auto& e = *schema_.find_edge_type(task.owner);
          const auto& gen = *structures_.at(e.name);
          const Id n = size_of(e.tail_type);
          auto table = gen.run(n, rng::derive_stream(seed, stream_tag(e.name, "structure")),
                               threads);
          table.rename(e.name);
          if (!gen.fresh_heads()) {
            const Id heads = e.tail_type == e.head_type ? n : size_of(e.head_type);
            if (table.head_count() != heads) {
              throw ConfigError(std::string(gen.name()) + "() produced " +
                                std::to_string(table.head_count()) + " heads but " +
                                e.head_type + " has " + std::to_string(heads) +
                                " nodes");
            }
          }
          edge_reports[e.name] = {e.name, table.size(), table.tail_count(),
                                  table.head_count(), std::string(gen.name()),
                                  stream_tag(e.name, "structure"),
                                  e.correlation ? "sbm-part" : "random", std::nullopt};
          if (e.correlation) {
            raw.insert_or_assign(e.name, std::move(table));
            break;
          }
          // Uncorrelated: endpoints are matched to table ids at random.
          const auto tails = rng::random_permutation(
              table.tail_count(), rng::derive_stream(seed, stream_tag(e.name, "tail")));
          std::vector<Id> heads;
          const std::vector<Id>* head_map = nullptr;
          if (e.tail_type == e.head_type) {
            head_map = &tails;
          } else if (!gen.fresh_heads()) {
            heads = rng::random_permutation(
                table.head_count(), rng::derive_stream(seed, stream_tag(e.name, "head")));
            head_map = &heads;
          }
          finish_edge(e.name, remap(table, tails, head_map));
          break;
        }
        case TaskKind::kMatch: {
          const auto& e = *schema_.find_edge_type(task.owner);
          const auto& joint = joints_.at(e.name);
          const auto& g = raw.at(e.name);
          const auto& tail_pt = tables.at(e.tail_type + "." + e.correlation->tail_property);
          const auto& head_pt = tables.at(e.head_type + "." + e.correlation->head_property);
          const auto order_stream = rng::derive_stream(seed, stream_tag(e.name, "order"));
          auto& report = edge_reports.at(e.name);
          if (joint.is_symmetric()) {
            const auto q = matcher::group_sizes(tail_pt, joint.row_labels());
            if (tail_pt.size() != g.tail_count()) {
              throw DataError(tail_pt.tag() + " has " + std::to_string(tail_pt.size()) +
                              " rows for " + std::to_string(g.tail_count()) + " nodes");
            }
            std::vector<Id> f(g.tail_count());
            if (g.empty()) {
              std::iota(f.begin(), f.end(), Id{0});
            } else {
              const auto w = matcher::build_target_matrix(joint, g.size(), q,
                                                          options.target_mode);
              const auto order = rng::random_permutation(g.tail_count(), order_stream);
              const auto state = matcher::sbm_part(g, q, w, order);
              f = matcher::build_mapping(state.assignment, joint.row_labels(), tail_pt);
              report.l1_distance = matcher::distribution_distance(
                  joint, matcher::empirical_joint(g, state.assignment, joint.row_labels()));
            }
            finish_edge(e.name, remap(g, f, &f));
          } else {
            const auto qt = matcher::group_sizes(tail_pt, joint.row_labels());
            const auto qh = matcher::group_sizes(head_pt, joint.col_labels());
            if (tail_pt.size() != g.tail_count() || head_pt.size() != g.head_count()) {
              throw DataError("property tables do not match the node counts of " + e.name);
            }
            std::vector<Id> ft(g.tail_count()), fh(g.head_count());
            if (g.empty()) {
              std::iota(ft.begin(), ft.end(), Id{0});
              std::iota(fh.begin(), fh.end(), Id{0});
            } else {
              const auto w = matcher::build_target_matrix(joint, g.size(), qt,
                                                          options.target_mode, qh);
              const auto order = rng::random_permutation(
                  g.tail_count() + g.head_count(), order_stream);
              const auto state = matcher::sbm_part_bipartite(g, qt, qh, w, order);
              ft = matcher::build_mapping(state.tail_assignment, joint.row_labels(), tail_pt);
              fh = matcher::build_mapping(state.head_assignment, joint.col_labels(), head_pt);
              report.l1_distance = matcher::distribution_distance(
                  joint, matcher::empirical_joint_bipartite(
                             g, state.tail_assignment, joint.row_labels(),
                             state.head_assignment, joint.col_labels()));
            }
            finish_edge(e.name, remap(g, ft, &fh));
          }
          raw.erase(e.name);
          break;
        }
      }
    } catch (const ExecutionError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ExecutionError(task.name() + ": " + ex.what());
    }
  }

  for (const auto& t : schema_.node_types) {
    out.report.node_types.push_back({t.name, size_of(t.name), describe(sizes_.at(t.name))});
  }
  for (const auto& e : schema_.edge_types) {
    out.report.edge_types.push_back(edge_reports.at(e.name));
    out.edge_tables.push_back(std::move(final.at(e.name)));
  }
  for (const auto index : dag_.order) {
    const Task& task = dag_.tasks[index];
    if (task.kind != TaskKind::kGenProperty) continue;
    out.property_tables.push_back(std::move(tables.at(task.owner + "." + task.property)));
  }
  return out;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create " + out_dir.string() + ": " + ec.message());
  for (const auto& t : dataset.property_tables) {
    write_table_csv(t, out_dir / (t.tag() + ".csv"));
  }
  for (const auto& t : dataset.edge_tables) {
    write_table_csv(t, out_dir / (t.name() + ".csv"));
  }
  const auto path = out_dir / "report.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot create " + path.string());
  out << report_json(dataset.report);
  out.flush();
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace graphsynth::pipeline
