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

#include "hadaldp/prefix_code.h"

#include <algorithm>
#include <bit>

#include "absl/strings/str_cat.h"

namespace hadaldp {

absl::StatusOr<PrefixCode> PrefixCode::ForPopulation(uint64_t n, uint64_t d) {
  if (n < 4) {
    return absl::InvalidArgumentError(
        absl::StrCat("prefix code needs n >= 4 users, got ", n));
  }
  if (d < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("prefix code needs d >= 2, got ", d));
  }
  // floor(log2 sqrt n) == floor(floor(log2 n) / 2).
  const int floor_log2_n = std::bit_width(n) - 1;
  const int digit_bits = std::max(1, floor_log2_n / 2);
  const int element_bits = std::bit_width(d - 1);
  const int depth = (element_bits + digit_bits - 1) / digit_bits;
  return Create(digit_bits, depth, d);
}

absl::StatusOr<PrefixCode> PrefixCode::Create(int digit_bits, int depth,
                                              uint64_t d) {
  if (digit_bits < 1 || depth < 1 || d < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid prefix code: bits=", digit_bits, " depth=", depth, " d=", d));
  }
  const int total_bits = digit_bits * depth;
  // Prefix integers are hashed, so every one must stay below the hash prime.
  if (total_bits > 60) {
    return absl::InvalidArgumentError(absl::StrCat(
        "B^L = 2^", total_bits, " exceeds the hashable range 2^60"));
  }
  if (std::bit_width(d - 1) > total_bits) {
    return absl::InvalidArgumentError(absl::StrCat(
        "B^L = 2^", total_bits, " cannot encode a domain of size ", d));
  }
  return PrefixCode(digit_bits, depth, d);
}

absl::StatusOr<uint64_t> PrefixCode::EncodePrefix(uint64_t v, int tau) const {
  if (tau < 0 || tau > depth_) {
    return absl::InvalidArgumentError(
        absl::StrCat("prefix length ", tau, " outside [0, ", depth_, "]"));
  }
  if (v >= d_) {
    return absl::OutOfRangeError(
        absl::StrCat("element ", v, " outside domain of size ", d_));
  }
  return EncodePrefixUnchecked(v, tau);
}

std::vector<uint64_t> PrefixCode::Digits(uint64_t v) const {
  std::vector<uint64_t> digits(depth_);
  const uint64_t mask = branching() - 1;
  for (int i = depth_ - 1; i >= 0; --i) {
    digits[i] = v & mask;
    v >>= digit_bits_;
  }
  return digits;
}

}  // namespace hadaldp
