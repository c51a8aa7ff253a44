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

#ifndef GRAPHSYNTH_STORE_TABLES_HPP_
#define GRAPHSYNTH_STORE_TABLES_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "graphsynth/store/value.hpp"

namespace graphsynth {

using Id = std::uint64_t;

// Two-column [id, value] table. Row i holds the value of instance i, so ids are
// implicitly 0..n-1.
class PropertyTable {
 public:
  PropertyTable() = default;
  // Throws DataError if any value does not have type `type`.
  PropertyTable(std::string tag, ValueType type, std::vector<Value> values);

  // Builds rows by evaluating fn(id) over `threads` id-range partitions. The
  // result does not depend on the partition count.
  static PropertyTable build(std::string tag, ValueType type, Id rows,
                             unsigned threads,
                             const std::function<Value(Id)>& fn);

  const std::string& tag() const { return tag_; }
  ValueType value_type() const { return type_; }
  Id size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const Value& value(Id id) const { return values_.at(id); }
  const std::vector<Value>& values() const { return values_; }

  friend bool operator==(const PropertyTable&, const PropertyTable&) = default;

 private:
  std::string tag_;
  ValueType type_ = ValueType::kString;
  std::vector<Value> values_;
};

struct Edge {
  Id tail = 0;
  Id head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Three-column [id, tail, head] table. Edge ids are the row positions
// 0..m-1; endpoints lie in [0, tail_count) and [0, head_count).
class EdgeTable {
 public:
  EdgeTable() = default;
  // Throws DataError if an endpoint is out of range.
  EdgeTable(std::string name, Id tail_count, Id head_count,
            std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  Id tail_count() const { return tail_count_; }
  Id head_count() const { return head_count_; }
  Id size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const Edge& edge(Id id) const { return edges_.at(id); }
  const std::vector<Edge>& edges() const { return edges_; }

  void rename(std::string name) { name_ = std::move(name); }

  friend bool operator==(const EdgeTable&, const EdgeTable&) = default;

 private:
  std::string name_;
  Id tail_count_ = 0;
  Id head_count_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace graphsynth

#endif  // GRAPHSYNTH_STORE_TABLES_HPP_
