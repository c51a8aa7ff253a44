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

#ifndef GRAPHSYNTH_MATCHER_JOINT_HPP_
#define GRAPHSYNTH_MATCHER_JOINT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "graphsynth/store/tables.hpp"

namespace graphsynth::matcher {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// P(X, Y): the probability that a random edge has endpoint values X and Y.
//
// Symmetric distributions describe edges within one node type. Their matrix
// is symmetric and holds the probability of the unordered pair {i, j} in both
// (i, j) and (j, i); the probabilities over i <= j sum to 1. Bipartite
// distributions have separate tail and head values and sum to 1 over all
// cells.
class JointDistribution {
 public:
  JointDistribution() = default;

  // Throws DataError on an asymmetric or negative matrix, a label count that
  // does not match, or a total outside 1 +- 1e-9.
  static JointDistribution symmetric(std::vector<std::string> labels, Matrix p);
  static JointDistribution bipartite(std::vector<std::string> tail_labels,
                                     std::vector<std::string> head_labels,
                                     Matrix p);

  // CSV `valueX,valueY,probability` with a header. In symmetric files each
  // unordered pair may appear once; in bipartite files valueX is the tail
  // value. Labels are sorted; pairs not listed have probability 0. Totals
  // within 1e-6 of 1 are renormalised, others rejected.
  static JointDistribution load(const std::filesystem::path& path,
                                bool symmetric);

  bool is_symmetric() const { return symmetric_; }
  std::size_t rows() const { return p_.rows(); }
  std::size_t cols() const { return p_.cols(); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  double p(std::size_t i, std::size_t j) const { return p_(i, j); }
  const Matrix& matrix() const { return p_; }
  std::optional<std::size_t> row_index(const std::string& label) const;
  std::optional<std::size_t> col_index(const std::string& label) const;

 private:
  bool symmetric_ = true;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Matrix p_;
};

// P'({i, j}) = (#edges whose endpoint groups are {i, j}) / m. `group` maps
// node id to group index in [0, labels.size()). Throws DataError when the
// table is empty or a node is unlabelled.
JointDistribution empirical_joint(const EdgeTable& g,
                                  std::span<const std::int32_t> group,
                                  const std::vector<std::string>& labels);

// Same for a bipartite table: tails labelled by `tail_group`, heads by
// `head_group`.
JointDistribution empirical_joint_bipartite(
    const EdgeTable& g, std::span<const std::int32_t> tail_group,
    const std::vector<std::string>& tail_labels,
    std::span<const std::int32_t> head_group,
    const std::vector<std::string>& head_labels);

// L1 distance over unordered pairs (symmetric) or all cells (bipartite).
// Throws DataError on a shape mismatch.
double distribution_distance(const JointDistribution& p,
                             const JointDistribution& q);

struct CdfRow {
  std::size_t rank = 0;  // 1-based
  std::string value_x;
  std::string value_y;
  double expected_cdf = 0;
  double observed_cdf = 0;
};

// Pairs sorted by decreasing expected probability, ties by (row, column)
// index; both columns accumulate in that order.
std::vector<CdfRow> cdf_report(const JointDistribution& expected,
                               const JointDistribution& observed);

// CSV `rank,value_x,value_y,expected_cdf,observed_cdf`.
void write_cdf_csv(const std::vector<CdfRow>& rows, std::ostream& out);
void write_cdf_csv(const std::vector<CdfRow>& rows,
                   const std::filesystem::path& path);

}  // namespace graphsynth::matcher

#endif  // GRAPHSYNTH_MATCHER_JOINT_HPP_
