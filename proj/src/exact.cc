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

#include "hadaldp/exact.h"

#include <algorithm>

namespace hadaldp {

FrequencyMap ExactFrequency(std::span<const uint64_t> elements) {
  FrequencyMap freq;
  for (uint64_t v : elements) ++freq[v];
  return freq;
}

std::vector<uint64_t> HeavyHittersOf(const FrequencyMap& freq,
                                     double threshold) {
  std::vector<uint64_t> out;
  for (const auto& [v, count] : freq) {
    if (static_cast<double>(count) >= threshold) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> ExactHeavyHitters(std::span<const uint64_t> elements,
                                        double threshold) {
  return HeavyHittersOf(ExactFrequency(elements), threshold);
}

FrequencyMap ExactPrefixFrequency(std::span<const uint64_t> elements,
                                  const PrefixCode& code, int tau) {
  FrequencyMap freq;
  for (uint64_t v : elements) ++freq[code.EncodePrefixUnchecked(v, tau)];
  return freq;
}

}  // namespace hadaldp
