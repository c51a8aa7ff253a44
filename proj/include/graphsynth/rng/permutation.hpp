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

#ifndef GRAPHSYNTH_RNG_PERMUTATION_HPP_
#define GRAPHSYNTH_RNG_PERMUTATION_HPP_

#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "graphsynth/rng/random_stream.hpp"

namespace graphsynth::rng {

// Fisher-Yates with draws taken from the stream in order. Unlike std::shuffle
// the result does not depend on the standard library implementation.
template <typename T>
void shuffle(std::span<T> items, RandomStream stream) {
  StreamCursor cursor(stream);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = cursor.bounded(i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

inline std::vector<std::uint64_t> random_permutation(std::uint64_t n,
                                                     RandomStream stream) {
  std::vector<std::uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint64_t{0});
  shuffle(std::span<std::uint64_t>(perm), stream);
  return perm;
}

}  // namespace graphsynth::rng

#endif  // GRAPHSYNTH_RNG_PERMUTATION_HPP_
