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

#include "hadaldp/partitioning.h"

#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace hadaldp {
namespace {

absl::Status CheckArgs(uint64_t k) {
  if (k == 0) return absl::InvalidArgumentError("subset count k must be >= 1");
  if (k > std::numeric_limits<uint32_t>::max()) {
    return absl::InvalidArgumentError(
        absl::StrCat("subset count ", k, " exceeds 32-bit ids"));
  }
  return absl::OkStatus();
}

}  // namespace

std::string_view SchemeName(PartitionScheme scheme) {
  return scheme == PartitionScheme::kIndependent ? "independent"
                                                 : "permutation";
}

absl::StatusOr<PartitionScheme> ParseScheme(std::string_view name) {
  if (name == "independent") return PartitionScheme::kIndependent;
  if (name == "permutation") return PartitionScheme::kPermutation;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown partition scheme '", std::string(name), "'"));
}

absl::StatusOr<Partition> IndependentPartition(uint64_t n, uint64_t k,
                                               Stream& rng) {
  if (absl::Status s = CheckArgs(k); !s.ok()) return s;
  Partition p;
  p.assignment.resize(n);
  p.subset_sizes.assign(k, 0);
  for (uint64_t u = 0; u < n; ++u) {
    const auto j = static_cast<uint32_t>(rng.Below(k));
    p.assignment[u] = j;
    ++p.subset_sizes[j];
  }
  return p;
}

absl::StatusOr<Partition> PermutationPartition(uint64_t n, uint64_t k,
                                               Stream& rng) {
  if (absl::Status s = CheckArgs(k); !s.ok()) return s;
  std::vector<uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), uint64_t{0});
  for (uint64_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.Below(i)]);
  }
  Partition p;
  p.assignment.resize(n);
  p.subset_sizes.resize(k);
  const uint64_t base = n / k;
  const uint64_t extra = n % k;
  uint64_t pos = 0;
  for (uint64_t j = 0; j < k; ++j) {
    const uint64_t size = base + (j < extra ? 1 : 0);
    p.subset_sizes[j] = size;
    for (uint64_t i = 0; i < size; ++i) {
      p.assignment[perm[pos++]] = static_cast<uint32_t>(j);
    }
  }
  return p;
}

absl::StatusOr<Partition> MakePartition(PartitionScheme scheme, uint64_t n,
                                        uint64_t k, Stream& rng) {
  return scheme == PartitionScheme::kIndependent
             ? IndependentPartition(n, k, rng)
             : PermutationPartition(n, k, rng);
}

std::vector<std::vector<uint64_t>> GroupBySubset(const Partition& partition) {
  std::vector<std::vector<uint64_t>> groups(partition.num_subsets());
  for (uint64_t j = 0; j < groups.size(); ++j) {
    groups[j].reserve(partition.subset_sizes[j]);
  }
  for (uint64_t u = 0; u < partition.assignment.size(); ++u) {
    groups[partition.assignment[u]].push_back(u);
  }
  return groups;
}

}  // namespace hadaldp
