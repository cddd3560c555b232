// Copyright 2026 The HadaLDP Authors
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

#ifndef HADALDP_RANDOM_H_
#define HADALDP_RANDOM_H_

#include <cstdint>
#include <limits>

namespace hadaldp {

// Purposes that scope derived sub-streams. A (master seed, purpose, a, b)
// tuple always yields the same stream, so serial and sharded executions
// produce identical transcripts.
enum class StreamPurpose : uint64_t {
  kClientCoin = 1,
  kServerRow = 2,
  kPartition = 3,
  kHashFamily = 4,
  kDataset = 5,
  kTrial = 6,
  kQuerySample = 7,
  kLevelPartition = 8,
};

// SplitMix64 stream. Small state, cheap to seed per user, and satisfies
// UniformRandomBitGenerator so it can drive standard algorithms when
// portability of the draw sequence does not matter.
class Stream {
 public:
  using result_type = uint64_t;

  explicit Stream(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Next(); }

  uint64_t Next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double NextUnit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound). bound must be nonzero. Lemire's multiply-shift
  // with rejection, so the draw sequence is identical on every platform.
  uint64_t Below(uint64_t bound) {
    unsigned __int128 product =
        static_cast<unsigned __int128>(Next()) * bound;
    uint64_t low = static_cast<uint64_t>(product);
    if (low < bound) {
      const uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(Next()) * bound;
        low = static_cast<uint64_t>(product);
      }
    }
    return static_cast<uint64_t>(product >> 64);
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

// Finalizer used to mix stream keys.
inline uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline uint64_t DeriveSeed(uint64_t master, StreamPurpose purpose, uint64_t a,
                           uint64_t b = 0) {
  uint64_t h = Mix64(master ^ 0x6A09E667F3BCC909ULL);
  h = Mix64(h ^ static_cast<uint64_t>(purpose));
  h = Mix64(h + a * 0x9E3779B97F4A7C15ULL);
  h = Mix64(h ^ (b + 0xBB67AE8584CAA73BULL));
  return h;
}

inline Stream DeriveStream(uint64_t master, StreamPurpose purpose, uint64_t a,
                           uint64_t b = 0) {
  return Stream(DeriveSeed(master, purpose, a, b));
}

}  // namespace hadaldp

#endif  // HADALDP_RANDOM_H_
