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

#include "hadaldp/hadamard.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace hadaldp {

absl::StatusOr<HadamardDim> HadamardDim::Create(uint64_t m) {
  if (m == 0 || !std::has_single_bit(m)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Hadamard dimension must be a power of two, got ", m));
  }
  return HadamardDim(m);
}

HadamardDim HadamardDim::ForDomain(uint64_t domain_size) {
  return HadamardDim(domain_size <= 1 ? 1 : std::bit_ceil(domain_size));
}

HadamardDim HadamardDim::AtLeast(double x, uint64_t floor) {
  uint64_t target = floor == 0 ? 1 : floor;
  if (x > static_cast<double>(target)) {
    target = static_cast<uint64_t>(std::ceil(x));
  }
  return HadamardDim(std::bit_ceil(target));
}

absl::StatusOr<int> Entry(HadamardDim dim, uint64_t row, uint64_t col) {
  if (row >= dim.size() || col >= dim.size()) {
    return absl::OutOfRangeError(absl::StrCat("Hadamard index (", row, ", ",
                                              col, ") outside m = ",
                                              dim.size()));
  }
  return EntryUnchecked(row, col);
}

absl::Status FhtInPlace(std::span<double> x) {
  const size_t m = x.size();
  if (m == 0 || !std::has_single_bit(m)) {
    return absl::InvalidArgumentError(
        absl::StrCat("transform length must be a power of two, got ", m));
  }
  for (size_t half = 1; half < m; half <<= 1) {
    for (size_t block = 0; block < m; block += 2 * half) {
      double* lo = x.data() + block;
      double* hi = lo + half;
      for (size_t i = 0; i < half; ++i) {
        const double a = lo[i];
        const double b = hi[i];
        lo[i] = a + b;
        hi[i] = a - b;
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> Fht(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  absl::Status status = FhtInPlace(out);
  if (!status.ok()) return status;
  return out;
}

absl::StatusOr<std::vector<double>> NaiveMultiply(HadamardDim dim,
                                                  std::span<const double> x) {
  if (x.size() != dim.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "vector length ", x.size(), " does not match m = ", dim.size()));
  }
  const uint64_t m = dim.size();
  std::vector<double> out(m, 0.0);
  for (uint64_t r = 0; r < m; ++r) {
    double acc = 0.0;
    for (uint64_t c = 0; c < m; ++c) {
      acc += EntryUnchecked(r, c) * x[c];
    }
    out[r] = acc;
  }
  return out;
}

}  // namespace hadaldp
