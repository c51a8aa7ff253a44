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

#ifndef GRAPHSYNTH_PARALLEL_HPP_
#define GRAPHSYNTH_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace graphsynth {

struct IdRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

// Splits [0, n) into `parts` contiguous, near-equal ranges. Empty ranges are
// dropped, so the result may be shorter than `parts`.
inline std::vector<IdRange> split_range(std::uint64_t n, unsigned parts) {
  parts = std::max(parts, 1u);
  std::vector<IdRange> ranges;
  const std::uint64_t base = n / parts;
  const std::uint64_t extra = n % parts;
  std::uint64_t begin = 0;
  for (unsigned p = 0; p < parts; ++p) {
    const std::uint64_t len = base + (p < extra ? 1 : 0);
    if (len == 0) continue;
    ranges.push_back({begin, begin + len});
    begin += len;
  }
  return ranges;
}

// Runs fn(begin, end) over disjoint id-range shards of [0, n), one worker per
// shard. Each shard must only write state owned by its own id range. The
// first exception thrown by any worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for_ranges(std::uint64_t n, unsigned threads, Fn&& fn) {
  const auto ranges = split_range(n, threads);
  if (ranges.size() <= 1) {
    if (n > 0) fn(std::uint64_t{0}, n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(ranges.size());
    for (const IdRange& r : ranges) {
      workers.emplace_back([&fn, r, &failure, &failure_mutex] {
        try {
          fn(r.begin, r.end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace graphsynth

#endif  // GRAPHSYNTH_PARALLEL_HPP_
