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

#ifndef HADALDP_PREFIX_CODE_H_
#define HADALDP_PREFIX_CODE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace hadaldp {

// Fixed-length base-B encoding of domain elements with B a power of two.
// Level tau names the length-tau most-significant digit prefix; the prefix
// is the base-B integer of those digits, so it lies in [0, B^tau).
class PrefixCode {
 public:
  // B = 2^max(1, floor(log2 sqrt(n))), L = ceil(log2 d / log2 B).
  static absl::StatusOr<PrefixCode> ForPopulation(uint64_t n, uint64_t d);
  static absl::StatusOr<PrefixCode> Create(int digit_bits, int depth,
                                           uint64_t d);

  uint64_t branching() const { return uint64_t{1} << digit_bits_; }
  int digit_bits() const { return digit_bits_; }
  int depth() const { return depth_; }
  uint64_t domain_size() const { return d_; }

  // Level 0 is the root and encodes as 0.
  absl::StatusOr<uint64_t> EncodePrefix(uint64_t v, int tau) const;
  uint64_t EncodePrefixUnchecked(uint64_t v, int tau) const {
    return v >> (digit_bits_ * (depth_ - tau));
  }

  // Most-significant-first digits of v's length-L representation.
  std::vector<uint64_t> Digits(uint64_t v) const;

  // Number of level-tau prefixes that prefix some element < d.
  uint64_t LevelSize(int tau) const {
    return EncodePrefixUnchecked(d_ - 1, tau) + 1;
  }

 private:
  PrefixCode(int digit_bits, int depth, uint64_t d)
      : digit_bits_(digit_bits), depth_(depth), d_(d) {}
  int digit_bits_;
  int depth_;
  uint64_t d_;
};

}  // namespace hadaldp

#endif  // HADALDP_PREFIX_CODE_H_
