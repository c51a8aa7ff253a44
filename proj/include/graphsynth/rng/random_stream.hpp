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

// Counter-based random streams with O(1) random access.
//
// The i-th output of a stream with seed s is mix64(s + (i + 1) * gamma), which
// is exactly the i-th output of a splitmix64 generator whose state starts at
// s. Random access therefore coincides with sequential iteration, and any
// value can be regenerated from (seed, i) alone.

#ifndef GRAPHSYNTH_RNG_RANDOM_STREAM_HPP_
#define GRAPHSYNTH_RNG_RANDOM_STREAM_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace graphsynth::rng {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Maps a 64-bit draw to [0, 1) using its top 53 bits.
constexpr double to_unit(std::uint64_t draw) noexcept {
  return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by multiply-high; bound > 0.
constexpr std::uint64_t to_bounded(std::uint64_t draw,
                                   std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(draw) * bound) >> 64);
}

struct StreamKey {
  std::uint64_t master_seed = 0;
  std::string table_tag;
};

class RandomStream {
 public:
  constexpr RandomStream() = default;
  constexpr explicit RandomStream(std::uint64_t derived_seed) noexcept
      : seed_(derived_seed) {}

  constexpr std::uint64_t seed() const noexcept { return seed_; }

  constexpr std::uint64_t value_at(std::uint64_t i) const noexcept {
    return mix64(seed_ + (i + 1) * kGoldenGamma);
  }

  constexpr double uniform_at(std::uint64_t i) const noexcept {
    return to_unit(value_at(i));
  }

  // An independent stream keyed by index i of this one. Used where a single
  // id needs an unbounded number of draws (e.g. one per RMAT recursion level).
  constexpr RandomStream substream(std::uint64_t i) const noexcept {
    return RandomStream(mix64(value_at(i) ^ 0x6A09E667F3BCC909ULL));
  }

  friend constexpr bool operator==(RandomStream, RandomStream) = default;

 private:
  std::uint64_t seed_ = 0;
};

// Streams for distinct tags under one master seed differ unless the FNV-1a
// hashes of the tags collide; mix64 being a bijection adds no collisions.
inline RandomStream derive_stream(const StreamKey& key) noexcept {
  return RandomStream(mix64(mix64(key.master_seed) ^ fnv1a64(key.table_tag)));
}

inline RandomStream derive_stream(std::uint64_t master_seed,
                                  std::string_view tag) noexcept {
  return RandomStream(mix64(mix64(master_seed) ^ fnv1a64(tag)));
}

// Sequential view of a stream; satisfies UniformRandomBitGenerator so it can
// drive std::shuffle-style algorithms deterministically.
class StreamCursor {
 public:
  using result_type = std::uint64_t;

  explicit StreamCursor(RandomStream stream, std::uint64_t start = 0) noexcept
      : stream_(stream), next_(start) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return stream_.value_at(next_++); }
  double uniform() noexcept { return to_unit((*this)()); }
  std::uint64_t bounded(std::uint64_t bound) noexcept {
    return to_bounded((*this)(), bound);
  }
  std::uint64_t position() const noexcept { return next_; }

 private:
  RandomStream stream_;
  std::uint64_t next_;
};

}  // namespace graphsynth::rng

#endif  // GRAPHSYNTH_RNG_RANDOM_STREAM_HPP_
