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

#ifndef HADALDP_EXACT_H_
#define HADALDP_EXACT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "hadaldp/prefix_code.h"

namespace hadaldp {

// Brute-force ground truth. Every error metric is measured against these,
// never against protocol internals.
using FrequencyMap = absl::flat_hash_map<uint64_t, uint64_t>;

FrequencyMap ExactFrequency(std::span<const uint64_t> elements);

// {v : count(v) >= threshold}, ascending.
std::vector<uint64_t> ExactHeavyHitters(std::span<const uint64_t> elements,
                                        double threshold);
std::vector<uint64_t> HeavyHittersOf(const FrequencyMap& freq,
                                     double threshold);

// Frequency of every level-tau prefix present in the data.
FrequencyMap ExactPrefixFrequency(std::span<const uint64_t> elements,
                                  const PrefixCode& code, int tau);

inline uint64_t CountOf(const FrequencyMap& freq, uint64_t v) {
  auto it = freq.find(v);
  return it == freq.end() ? 0 : it->second;
}

}  // namespace hadaldp

#endif  // HADALDP_EXACT_H_
