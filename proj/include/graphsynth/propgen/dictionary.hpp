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

#ifndef GRAPHSYNTH_PROPGEN_DICTIONARY_HPP_
#define GRAPHSYNTH_PROPGEN_DICTIONARY_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphsynth::propgen {

// Weighted list of values sampled by inverse transform. The cumulative
// distribution is normalised, strictly increasing and ends at exactly 1.
class WeightedDictionary {
 public:
  WeightedDictionary() = default;
  // Throws DataError on an empty list or a non-positive / non-finite weight.
  explicit WeightedDictionary(
      std::vector<std::pair<std::string, double>> entries);

  // CSV rows `value,weight`; an optional `value,weight` header is skipped.
  static WeightedDictionary load(const std::filesystem::path& path);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::string& value(std::size_t index) const { return values_[index]; }
  const std::vector<std::string>& values() const { return values_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double probability(std::size_t index) const;

  // Index of the first entry whose cumulative weight strictly exceeds u.
  std::size_t sample_index(double u) const;

 private:
  std::vector<std::string> values_;
  std::vector<double> cumulative_;
};

// Returns the sampled value; u must lie in [0, 1). Throws DataError for an
// empty dictionary.
const std::string& sample_inverse_transform(const WeightedDictionary& d,
                                            double u);

// Dictionaries keyed by a tuple of dependency values, plus the fallback used
// for tuples that have no row of their own.
class ConditionalDictionary {
 public:
  ConditionalDictionary() = default;
  ConditionalDictionary(std::size_t arity,
                        std::map<std::vector<std::string>, WeightedDictionary>
                            by_key,
                        WeightedDictionary fallback);

  // CSV rows `dep1,...,depk,value,weight`. Rows whose dependency columns are
  // all `*` form the fallback, which must be present. A header row whose last
  // column reads `weight` is skipped.
  static ConditionalDictionary load(const std::filesystem::path& path);

  std::size_t arity() const { return arity_; }
  // Null when `key` has no dictionary (the fallback applies).
  const WeightedDictionary* find(const std::vector<std::string>& key) const;
  const WeightedDictionary& lookup(const std::vector<std::string>& key) const;
  const WeightedDictionary& fallback() const { return fallback_; }
  const std::map<std::vector<std::string>, WeightedDictionary>& entries()
      const {
    return by_key_;
  }

 private:
  std::size_t arity_ = 0;
  std::map<std::vector<std::string>, WeightedDictionary> by_key_;
  WeightedDictionary fallback_;
};

}  // namespace graphsynth::propgen

#endif  // GRAPHSYNTH_PROPGEN_DICTIONARY_HPP_
