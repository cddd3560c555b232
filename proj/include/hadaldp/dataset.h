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

#ifndef HADALDP_DATASET_H_
#define HADALDP_DATASET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace hadaldp {

// n user elements, each < d.
struct Dataset {
  uint64_t d = 0;
  std::vector<uint64_t> elements;
  uint64_t seed = 0;

  uint64_t n() const { return elements.size(); }
};

// Largest number of distinct Zipf ranks materialized.
inline constexpr uint64_t kMaxZipfSupport = 10'000'000;

// Inverse-CDF sampler over ranks 1..support with Pr[r] proportional to
// r^-s. Holds the cumulative table, so build once and reuse.
class ZipfSampler {
 public:
  static absl::StatusOr<ZipfSampler> Create(uint64_t support, double s);

  uint64_t support() const { return cdf_.size(); }
  double exponent() const { return s_; }
  double RankProbability(uint64_t rank) const;

  // Rank in [1, support] from a uniform u in [0, 1).
  uint64_t RankFor(double u) const;

 private:
  ZipfSampler(std::vector<double> cdf, double s)
      : cdf_(std::move(cdf)), s_(s) {}
  std::vector<double> cdf_;
  double s_;
};

// i.i.d. Zipf(s) elements. Ranks are mapped into [0, d) by a seeded affine
// bijection of Z_d, so rank 1 is a fixed but arbitrary element.
absl::StatusOr<Dataset> GenZipf(uint64_t n, uint64_t d, double s,
                                uint64_t seed);
absl::StatusOr<Dataset> GenZipf(uint64_t n, uint64_t d,
                                const ZipfSampler& sampler, uint64_t seed);

// Element that Zipf rank `rank` maps to for (d, seed).
uint64_t ZipfRankElement(uint64_t rank, uint64_t d, uint64_t seed);

// Exactly `count` copies of each heavy element; the remaining users are
// uniform over [0, d). Order is shuffled.
absl::StatusOr<Dataset> GenPlanted(
    uint64_t n, uint64_t d,
    const std::vector<std::pair<uint64_t, uint64_t>>& heavy, uint64_t seed);

// Binary format: "LDPD", u16 version, u16 reserved, u64 d, u64 n, then n
// little-endian u64 elements.
std::string EncodeBinary(const Dataset& dataset);
absl::StatusOr<Dataset> DecodeBinary(std::string_view bytes);

// Text format: "# d=<d>" then one decimal element per line. Without the
// header line, d is taken as max element + 1.
std::string EncodeText(const Dataset& dataset);
absl::StatusOr<Dataset> DecodeText(std::string_view text);

absl::Status WriteDataset(const Dataset& dataset, const std::string& path,
                          bool text);
// Detects the format from the leading magic.
absl::StatusOr<Dataset> ReadDataset(const std::string& path);

}  // namespace hadaldp

#endif  // HADALDP_DATASET_H_
