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

#ifndef HADALDP_HASHING_H_
#define HADALDP_HASHING_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "hadaldp/random.h"
#include "json.hpp"

namespace hadaldp {

// Mersenne prime 2^61 - 1. Inputs to PairwiseHash must lie below it.
inline constexpr uint64_t kHashPrime = (uint64_t{1} << 61) - 1;

// (a*x + b mod p) mod m for x < p.
inline uint64_t MulAddModPrime(uint64_t a, uint64_t x, uint64_t b) {
  const unsigned __int128 product = static_cast<unsigned __int128>(a) * x + b;
  uint64_t folded = static_cast<uint64_t>(product & kHashPrime) +
                    static_cast<uint64_t>(product >> 61);
  // product < 2^122 so one fold leaves folded < 2^62; two subtractions suffice.
  if (folded >= kHashPrime) folded -= kHashPrime;
  if (folded >= kHashPrime) folded -= kHashPrime;
  return folded;
}

// Affine-modular member of a pairwise-independent family h : [p) -> [m).
// Immutable value; cheap to copy.
class PairwiseHash {
 public:
  static absl::StatusOr<PairwiseHash> Create(uint64_t a, uint64_t b,
                                             uint64_t m);

  // a uniform in [1, p), b uniform in [0, p).
  static PairwiseHash Sample(uint64_t range_m, Stream& rng);

  absl::StatusOr<uint64_t> Eval(uint64_t x) const;
  uint64_t EvalUnchecked(uint64_t x) const {
    return MulAddModPrime(a_, x, b_) % m_;
  }

  uint64_t a() const { return a_; }
  uint64_t b() const { return b_; }
  uint64_t m() const { return m_; }
  static constexpr uint64_t p() { return kHashPrime; }

  nlohmann::json ToJson() const;
  static absl::StatusOr<PairwiseHash> FromJson(const nlohmann::json& j);

  friend bool operator==(const PairwiseHash&, const PairwiseHash&) = default;

 private:
  PairwiseHash(uint64_t a, uint64_t b, uint64_t m) : a_(a), b_(b), m_(m) {}
  uint64_t a_;
  uint64_t b_;
  uint64_t m_;
};

}  // namespace hadaldp

#endif  // HADALDP_HASHING_H_
