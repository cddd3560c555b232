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

#ifndef HADALDP_HADAMARD_H_
#define HADALDP_HADAMARD_H_

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace hadaldp {

// Size of a Sylvester-ordered Hadamard matrix. Always an exact power of two.
class HadamardDim {
 public:
  static absl::StatusOr<HadamardDim> Create(uint64_t m);

  // Smallest power of two >= domain_size (2^ceil(log2 d)); 1 for d <= 1.
  static HadamardDim ForDomain(uint64_t domain_size);

  // Smallest power of two >= max(x, floor).
  static HadamardDim AtLeast(double x, uint64_t floor = 1);

  uint64_t size() const { return m_; }
  int log2() const { return std::countr_zero(m_); }

  friend bool operator==(HadamardDim, HadamardDim) = default;

 private:
  explicit HadamardDim(uint64_t m) : m_(m) {}
  uint64_t m_;
};

// Entry H[row, col] with 0-based indices: -1 iff popcount(row & col) is odd.
inline int EntryUnchecked(uint64_t row, uint64_t col) {
  return (std::popcount(row & col) & 1) ? -1 : 1;
}

absl::StatusOr<int> Entry(HadamardDim dim, uint64_t row, uint64_t col);

// In-place H_m x. The buffer length must be a power of two.
absl::Status FhtInPlace(std::span<double> x);

// Copying wrapper around FhtInPlace.
absl::StatusOr<std::vector<double>> Fht(std::span<const double> x);

// O(m^2) evaluation of H_m x through Entry. Test oracle only.
absl::StatusOr<std::vector<double>> NaiveMultiply(HadamardDim dim,
                                                  std::span<const double> x);

}  // namespace hadaldp

#endif  // HADALDP_HADAMARD_H_
