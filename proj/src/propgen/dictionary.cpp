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

#include "graphsynth/propgen/dictionary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "graphsynth/error.hpp"
#include "graphsynth/store/csv.hpp"

namespace graphsynth::propgen {
namespace {

std::optional<double> to_double(const std::string& text) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

double weight_of(const CsvRecord& record, const std::filesystem::path& path) {
  const auto w = to_double(record.fields.back());
  if (!w) {
    throw DataError(path.string() + ": line " + std::to_string(record.line) +
                    ": weight '" + record.fields.back() + "' is not a number");
  }
  return *w;
}

}  // namespace

WeightedDictionary::WeightedDictionary(
    std::vector<std::pair<std::string, double>> entries) {
  if (entries.empty()) throw DataError("empty dictionary");
  double total = 0;
  for (const auto& [value, weight] : entries) {
    if (!(weight > 0) || !std::isfinite(weight)) {
      throw DataError("dictionary entry '" + value +
                      "' has non-positive weight");
    }
    total += weight;
  }
  values_.reserve(entries.size());
  cumulative_.reserve(entries.size());
  double running = 0;
  for (auto& [value, weight] : entries) {
    running += weight;
    values_.push_back(std::move(value));
    cumulative_.push_back(running / total);
  }
  cumulative_.back() = 1.0;
  for (std::size_t i = 1; i < cumulative_.size(); ++i) {
    if (!(cumulative_[i] > cumulative_[i - 1])) {
      throw DataError("dictionary entry '" + values_[i] +
                      "' has a weight too small to be represented");
    }
  }
}

WeightedDictionary WeightedDictionary::load(const std::filesystem::path& path) {
  auto records = read_csv_file(path);
  if (!records.empty() && records.front().fields.size() == 2 &&
      records.front().fields[1] == "weight") {
    records.erase(records.begin());
  }
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& r : records) {
    if (r.fields.size() != 2) {
      throw DataError(path.string() + ": line " + std::to_string(r.line) +
                      ": expected 'value,weight'");
    }
    entries.emplace_back(r.fields[0], weight_of(r, path));
  }
  try {
    return WeightedDictionary(std::move(entries));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

double WeightedDictionary::probability(std::size_t index) const {
  return index == 0 ? cumulative_[0]
                    : cumulative_[index] - cumulative_[index - 1];
}

std::size_t WeightedDictionary::sample_index(double u) const {
  if (values_.empty()) throw DataError("cannot sample an empty dictionary");
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  // u < 1 always finds an entry; clamp in case a caller passes exactly 1.
  return std::min<std::size_t>(it - cumulative_.begin(), values_.size() - 1);
}

const std::string& sample_inverse_transform(const WeightedDictionary& d,
                                            double u) {
  return d.value(d.sample_index(u));
}

ConditionalDictionary::ConditionalDictionary(
    std::size_t arity,
    std::map<std::vector<std::string>, WeightedDictionary> by_key,
    WeightedDictionary fallback)
    : arity_(arity), by_key_(std::move(by_key)), fallback_(std::move(fallback)) {
  if (fallback_.empty()) {
    throw DataError("conditional dictionary needs a fallback dictionary");
  }
  for (const auto& [key, dict] : by_key_) {
    if (key.size() != arity_ || dict.empty()) {
      throw DataError("conditional dictionary key of wrong arity or empty");
    }
  }
}

ConditionalDictionary ConditionalDictionary::load(
    const std::filesystem::path& path) {
  auto records = read_csv_file(path);
  if (!records.empty() && records.front().fields.back() == "weight") {
    records.erase(records.begin());
  }
  if (records.empty()) throw DataError(path.string() + ": empty file");
  const std::size_t columns = records.front().fields.size();
  if (columns < 3) {
    throw DataError(path.string() +
                    ": expected 'dep1,...,depk,value,weight' rows");
  }
  const std::size_t arity = columns - 2;
  std::map<std::vector<std::string>, std::vector<std::pair<std::string, double>>>
      grouped;
  std::vector<std::pair<std::string, double>> fallback;
  for (const auto& r : records) {
    if (r.fields.size() != columns) {
      throw DataError(path.string() + ": line " + std::to_string(r.line) +
                      ": expected " + std::to_string(columns) + " columns");
    }
    std::vector<std::string> key(r.fields.begin(), r.fields.begin() + arity);
    const bool wildcard = std::all_of(key.begin(), key.end(),
                                      [](const auto& k) { return k == "*"; });
    auto& bucket = wildcard ? fallback : grouped[key];
    bucket.emplace_back(r.fields[arity], weight_of(r, path));
  }
  if (fallback.empty()) {
    throw DataError(path.string() +
                    ": no fallback rows (dependency columns all '*')");
  }
  try {
    std::map<std::vector<std::string>, WeightedDictionary> by_key;
    for (auto& [key, entries] : grouped) {
      by_key.emplace(key, WeightedDictionary(std::move(entries)));
    }
    return ConditionalDictionary(arity, std::move(by_key),
                                 WeightedDictionary(std::move(fallback)));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

const WeightedDictionary* ConditionalDictionary::find(
    const std::vector<std::string>& key) const {
  const auto it = by_key_.find(key);
  return it == by_key_.end() ? nullptr : &it->second;
}

const WeightedDictionary& ConditionalDictionary::lookup(
    const std::vector<std::string>& key) const {
  const auto* d = find(key);
  return d ? *d : fallback_;
}

}  // namespace graphsynth::propgen
