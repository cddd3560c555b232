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

#ifndef HADALDP_HADA_HEAVY_H_
#define HADALDP_HADA_HEAVY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hadaldp/hada_oracle.h"
#include "hadaldp/prefix_code.h"
#include "hadaldp/transcript.h"
#include "json.hpp"

namespace hadaldp {

struct HeavyParams {
  double eps = 1.0;
  double beta = 0.1;
  double c_lambda = 1.0;
  double c_k = kDefaultRepetitionConstant;
  double c_m = TheoryDimensionConstant(kDefaultRepetitionConstant);
  PartitionScheme scheme = PartitionScheme::kPermutation;
  // Keep at most this many prefixes per level (highest estimates first);
  // 0 disables the cap.
  uint64_t max_search_set = 0;

  static HeavyParams ForProfile(Profile profile, double eps, double beta);

  absl::Status Validate() const;

  // (C_lambda / eps) sqrt(n log2(d) ln(n/beta) / ln n).
  double Lambda(uint64_t n, uint64_t d) const;

  // Union-bound failure probability per queried prefix, beta / (n L).
  double LevelBetaPrime(uint64_t n, int depth) const;

  // Parameters of every per-level and refinement oracle.
  OracleParams LevelOracleParams(uint64_t n, int depth) const;
};

struct HistogramEntry {
  uint64_t element;
  double estimate;
  friend bool operator==(const HistogramEntry&, const HistogramEntry&) =
      default;
};

// (element, estimate) pairs with distinct elements, sorted by descending
// estimate and then ascending element.
struct SuccinctHistogram {
  std::vector<HistogramEntry> entries;
};

// Estimate of the full-population frequency of a level-tau prefix.
using LevelOracleFn = std::function<double(int tau, uint64_t prefix)>;

struct SearchOptions {
  uint64_t n_users = 0;          // for the 2n/lambda warning; 0 skips it
  uint64_t max_search_set = 0;   // 0 = unbounded
};

struct SearchResult {
  // levels[tau] is P_tau in increasing prefix order; levels[0] = {root}.
  std::vector<std::vector<uint64_t>> levels;
  std::vector<uint64_t> queried_per_level;  // |P_{tau-1} x Lambda| actually asked
  bool truncated = false;
  std::vector<std::string> warnings;

  const std::vector<uint64_t>& final_set() const { return levels.back(); }
  uint64_t total_queried() const;
};

// Top-down prefix search: a child s of a surviving prefix survives iff
// oracle(tau, s) >= 2 lambda. Children that prefix no element < d are
// skipped.
SearchResult SearchWithOracle(const LevelOracleFn& oracle,
                              const PrefixCode& code, double lambda,
                              const SearchOptions& options = {});

struct HeavyRunOptions {
  Transcript* transcript = nullptr;
};

struct HeavyRunResult {
  SuccinctHistogram histogram;
  int digit_bits = 0;
  int depth = 0;
  double lambda = 0.0;
  uint64_t k = 0;
  uint64_t m = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> level_sizes;  // |P_1| .. |P_L|
  uint64_t total_queried = 0;
  bool truncated = false;
  std::vector<std::string> warnings;
};

// Full protocol: L level oracles at eps/2 on disjoint user subsets sharing
// one hash family, the prefix search, then a refinement oracle at eps/2 on
// every user that re-estimates the surviving elements.
absl::StatusOr<HeavyRunResult> RunHeavyHitters(
    std::span<const uint64_t> users, uint64_t d, const HeavyParams& params,
    uint64_t seed, const HeavyRunOptions& options = {});

// "element,estimate" header then one row per entry.
std::string HistogramToCsv(const SuccinctHistogram& histogram);

// Run metadata (B, L, lambda, k, m, seed, level sizes, warnings) plus the
// histogram itself.
nlohmann::json HeavyRunToJson(const HeavyRunResult& result,
                              const HeavyParams& params);

}  // namespace hadaldp

#endif  // HADALDP_HADA_HEAVY_H_
