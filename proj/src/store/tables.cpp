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

#include "graphsynth/store/tables.hpp"

#include "graphsynth/error.hpp"
#include "graphsynth/parallel.hpp"

namespace graphsynth {

PropertyTable::PropertyTable(std::string tag, ValueType type,
                             std::vector<Value> values)
    : tag_(std::move(tag)), type_(type), values_(std::move(values)) {
  for (Id id = 0; id < values_.size(); ++id) {
    if (type_of(values_[id]) != type_) {
      throw DataError("property table '" + tag_ + "': row " +
                      std::to_string(id) + " is not of type " +
                      std::string(to_string(type_)));
    }
  }
}

PropertyTable PropertyTable::build(std::string tag, ValueType type, Id rows,
                                   unsigned threads,
                                   const std::function<Value(Id)>& fn) {
  std::vector<Value> values(rows);
  parallel_for_ranges(rows, threads, [&](Id begin, Id end) {
    for (Id id = begin; id < end; ++id) values[id] = fn(id);
  });
  return PropertyTable(std::move(tag), type, std::move(values));
}

EdgeTable::EdgeTable(std::string name, Id tail_count, Id head_count,
                     std::vector<Edge> edges)
    : name_(std::move(name)),
      tail_count_(tail_count),
      head_count_(head_count),
      edges_(std::move(edges)) {
  for (Id id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.tail >= tail_count_ || e.head >= head_count_) {
      throw DataError("edge table '" + name_ + "': edge " + std::to_string(id) +
                      " (" + std::to_string(e.tail) + "," +
                      std::to_string(e.head) + ") outside node range [0," +
                      std::to_string(tail_count_) + ")x[0," +
                      std::to_string(head_count_) + ")");
    }
  }
}

}  // namespace graphsynth
