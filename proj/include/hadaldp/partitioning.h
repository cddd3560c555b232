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

#ifndef HADALDP_PARTITIONING_H_
#define HADALDP_PARTITIONING_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hadaldp/random.h"

namespace hadaldp {

enum class PartitionScheme { kIndependent, kPermutation };

std::string_view SchemeName(PartitionScheme scheme);
absl::StatusOr<PartitionScheme> ParseScheme(std::string_view name);

// Assignment of n users to k disjoint subsets covering all users.
struct Partition {
  std::vector<uint32_t> assignment;     // user index -> subset id in [k)
  std::vector<uint64_t> subset_sizes;   // k counts summing to n

  uint64_t num_subsets() const { return subset_sizes.size(); }
};

// Each user lands in a uniform subset, independently of the others.
absl::StatusOr<Partition> IndependentPartition(uint64_t n, uint64_t k,
                                               Stream& rng);

// Fisher-Yates permutation cut into contiguous blocks. The first (n mod k)
// blocks hold ceil(n/k) users and the rest floor(n/k).
absl::StatusOr<Partition> PermutationPartition(uint64_t n, uint64_t k,
                                               Stream& rng);

absl::StatusOr<Partition> MakePartition(PartitionScheme scheme, uint64_t n,
                                        uint64_t k, Stream& rng);

// Users of each subset, in increasing user order.
std::vector<std::vector<uint64_t>> GroupBySubset(const Partition& partition);

}  // namespace hadaldp

#endif  // HADALDP_PARTITIONING_H_
