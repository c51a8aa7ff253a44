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

#include "graphsynth/matcher/joint.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "graphsynth/error.hpp"
#include "graphsynth/store/csv.hpp"

namespace graphsynth::matcher {
namespace {

void check_cells(const Matrix& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (!(p(i, j) >= 0) || !std::isfinite(p(i, j))) {
        throw DataError("joint probabilities must be finite and non-negative");
      }
    }
  }
}

double symmetric_total(const Matrix& p) {
  double total = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = i; j < p.cols(); ++j) total += p(i, j);
  }
  return total;
}

double full_total(const Matrix& p) {
  double total = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) total += p(i, j);
  }
  return total;
}

std::optional<std::size_t> find_label(const std::vector<std::string>& labels,
                                      const std::string& label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

JointDistribution JointDistribution::symmetric(std::vector<std::string> labels,
                                               Matrix p) {
  if (labels.empty() || p.rows() != labels.size() || p.cols() != labels.size()) {
    throw DataError("joint distribution needs a k x k matrix for k labels");
  }
  check_cells(p);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = i + 1; j < p.cols(); ++j) {
      if (p(i, j) != p(j, i)) throw DataError("joint distribution is not symmetric");
    }
  }
  const double total = symmetric_total(p);
  if (std::abs(total - 1.0) > 1e-9) {
    throw DataError("joint probabilities over unordered pairs sum to " +
                    format_double(total) + ", expected 1");
  }
  JointDistribution d;
  d.symmetric_ = true;
  d.row_labels_ = labels;
  d.col_labels_ = std::move(labels);
  d.p_ = std::move(p);
  return d;
}

JointDistribution JointDistribution::bipartite(
    std::vector<std::string> tail_labels, std::vector<std::string> head_labels,
    Matrix p) {
  if (tail_labels.empty() || head_labels.empty() ||
      p.rows() != tail_labels.size() || p.cols() != head_labels.size()) {
    throw DataError("bipartite joint distribution shape does not match its labels");
  }
  check_cells(p);
  const double total = full_total(p);
  if (std::abs(total - 1.0) > 1e-9) {
    throw DataError("joint probabilities sum to " + format_double(total) +
                    ", expected 1");
  }
  JointDistribution d;
  d.symmetric_ = false;
  d.row_labels_ = std::move(tail_labels);
  d.col_labels_ = std::move(head_labels);
  d.p_ = std::move(p);
  return d;
}

JointDistribution JointDistribution::load(const std::filesystem::path& path,
                                          bool symmetric) {
  const auto records = read_csv_file(path);
  struct Entry {
    std::string x, y;
    double p;
    std::size_t line;
  };
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    const auto where = path.string() + ":" + std::to_string(records[r].line);
    if (f.size() != 3) throw DataError(where + ": expected valueX,valueY,probability");
    if (r == 0 && f[2] == "probability") continue;
    double p = 0;
    const char* end = f[2].data() + f[2].size();
    auto [ptr, ec] = std::from_chars(f[2].data(), end, p);
    if (ec != std::errc() || ptr != end || !std::isfinite(p) || p < 0) {
      throw DataError(where + ": probability must be a non-negative number");
    }
    entries.push_back({f[0], f[1], p, records[r].line});
  }
  if (entries.empty()) throw DataError(path.string() + ": no pairs");

  std::set<std::string> xs, ys;
  for (const auto& e : entries) {
    xs.insert(e.x);
    (symmetric ? xs : ys).insert(e.y);
  }
  std::vector<std::string> rows(xs.begin(), xs.end());
  std::vector<std::string> cols = symmetric ? rows
                                            : std::vector<std::string>(ys.begin(), ys.end());
  Matrix p(rows.size(), cols.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  double total = 0;
  for (const auto& e : entries) {
    auto i = *find_label(rows, e.x);
    auto j = *find_label(cols, e.y);
    if (symmetric && j < i) std::swap(i, j);
    if (!seen.insert({i, j}).second) {
      throw DataError(path.string() + ":" + std::to_string(e.line) + ": pair (" +
                      e.x + ", " + e.y + ") listed twice");
    }
    p(i, j) = e.p;
    if (symmetric) p(j, i) = e.p;
    total += e.p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw DataError(path.string() + ": probabilities sum to " +
                    format_double(total) + ", expected 1");
  }
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) p(i, j) /= total;
  }
  try {
    return symmetric ? JointDistribution::symmetric(std::move(rows), std::move(p))
                     : JointDistribution::bipartite(std::move(rows), std::move(cols),
                                                    std::move(p));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::optional<std::size_t> JointDistribution::row_index(
    const std::string& label) const {
  return find_label(row_labels_, label);
}

std::optional<std::size_t> JointDistribution::col_index(
    const std::string& label) const {
  return find_label(col_labels_, label);
}

JointDistribution empirical_joint(const EdgeTable& g,
                                  std::span<const std::int32_t> group,
                                  const std::vector<std::string>& labels) {
  if (g.empty()) throw DataError("empirical joint of an edge table with no edges");
  const auto k = labels.size();
  Matrix counts(k, k);
  const auto label_of = [&](Id v) {
    if (v >= group.size() || group[v] < 0 ||
        static_cast<std::size_t>(group[v]) >= k) {
      throw DataError("node " + std::to_string(v) + " has no group");
    }
    return static_cast<std::size_t>(group[v]);
  };
  for (const Edge& e : g.edges()) {
    const std::size_t a = label_of(e.tail);
    const std::size_t b = label_of(e.head);
    counts(std::min(a, b), std::max(a, b)) += 1;
  }
  const double m = static_cast<double>(g.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      counts(i, j) /= m;
      counts(j, i) = counts(i, j);
    }
  }
  return JointDistribution::symmetric(labels, std::move(counts));
}

JointDistribution empirical_joint_bipartite(
    const EdgeTable& g, std::span<const std::int32_t> tail_group,
    const std::vector<std::string>& tail_labels,
    std::span<const std::int32_t> head_group,
    const std::vector<std::string>& head_labels) {
  if (g.empty()) throw DataError("empirical joint of an edge table with no edges");
  Matrix counts(tail_labels.size(), head_labels.size());
  const auto check = [](std::span<const std::int32_t> group, std::size_t k, Id v) {
    if (v >= group.size() || group[v] < 0 ||
        static_cast<std::size_t>(group[v]) >= k) {
      throw DataError("node " + std::to_string(v) + " has no group");
    }
    return static_cast<std::size_t>(group[v]);
  };
  for (const Edge& e : g.edges()) {
    counts(check(tail_group, tail_labels.size(), e.tail),
           check(head_group, head_labels.size(), e.head)) += 1;
  }
  const double m = static_cast<double>(g.size());
  for (std::size_t i = 0; i < counts.rows(); ++i) {
    for (std::size_t j = 0; j < counts.cols(); ++j) counts(i, j) /= m;
  }
  return JointDistribution::bipartite(tail_labels, head_labels, std::move(counts));
}

double distribution_distance(const JointDistribution& p,
                             const JointDistribution& q) {
  if (p.is_symmetric() != q.is_symmetric() || p.rows() != q.rows() ||
      p.cols() != q.cols()) {
    throw DataError("distributions have different shapes");
  }
  double l1 = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = p.is_symmetric() ? i : 0; j < p.cols(); ++j) {
      l1 += std::abs(p.p(i, j) - q.p(i, j));
    }
  }
  return l1;
}

std::vector<CdfRow> cdf_report(const JointDistribution& expected,
                               const JointDistribution& observed) {
  distribution_distance(expected, observed);  // shape check
  struct Cell {
    std::size_t i, j;
    double p;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < expected.rows(); ++i) {
    for (std::size_t j = expected.is_symmetric() ? i : 0; j < expected.cols(); ++j) {
      cells.push_back({i, j, expected.p(i, j)});
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.p > b.p; });
  std::vector<CdfRow> rows;
  rows.reserve(cells.size());
  double e = 0, o = 0;
  for (const Cell& c : cells) {
    e += c.p;
    o += observed.p(c.i, c.j);
    rows.push_back({rows.size() + 1, expected.row_labels()[c.i],
                    expected.col_labels()[c.j], e, o});
  }
  return rows;
}

void write_cdf_csv(const std::vector<CdfRow>& rows, std::ostream& out) {
  out << "rank,value_x,value_y,expected_cdf,observed_cdf\n";
  for (const auto& r : rows) {
    out << r.rank << ',' << quote_csv_field(r.value_x) << ','
        << quote_csv_field(r.value_y) << ',' << format_double(r.expected_cdf)
        << ',' << format_double(r.observed_cdf) << '\n';
  }
}

void write_cdf_csv(const std::vector<CdfRow>& rows,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot create " + path.string());
  write_cdf_csv(rows, out);
  out.flush();
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace graphsynth::matcher
