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

#include "hadaldp/hashing.h"

#include <string>

#include "absl/strings/str_cat.h"

namespace hadaldp {

absl::StatusOr<PairwiseHash> PairwiseHash::Create(uint64_t a, uint64_t b,
                                                  uint64_t m) {
  if (a == 0 || a >= kHashPrime) {
    return absl::InvalidArgumentError(
        absl::StrCat("hash multiplier a must lie in [1, p), got ", a));
  }
  if (b >= kHashPrime) {
    return absl::InvalidArgumentError(
        absl::StrCat("hash offset b must lie in [0, p), got ", b));
  }
  if (m == 0) {
    return absl::InvalidArgumentError("hash range m must be positive");
  }
  return PairwiseHash(a, b, m);
}

PairwiseHash PairwiseHash::Sample(uint64_t range_m, Stream& rng) {
  const uint64_t a = 1 + rng.Below(kHashPrime - 1);
  const uint64_t b = rng.Below(kHashPrime);
  return PairwiseHash(a, b, range_m == 0 ? 1 : range_m);
}

absl::StatusOr<uint64_t> PairwiseHash::Eval(uint64_t x) const {
  if (x >= kHashPrime) {
    return absl::OutOfRangeError(
        absl::StrCat("hash input ", x, " is not below p = 2^61 - 1"));
  }
  return EvalUnchecked(x);
}

nlohmann::json PairwiseHash::ToJson() const {
  return nlohmann::json{{"a", a_}, {"b", b_}, {"p", kHashPrime}, {"m", m_}};
}

absl::StatusOr<PairwiseHash> PairwiseHash::FromJson(const nlohmann::json& j) {
  try {
    const uint64_t p = j.at("p").get<uint64_t>();
    if (p != kHashPrime) {
      return absl::InvalidArgumentError(
          absl::StrCat("unsupported hash modulus ", p));
    }
    return Create(j.at("a").get<uint64_t>(), j.at("b").get<uint64_t>(),
                  j.at("m").get<uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed hash record: ", e.what()));
  }
}

}  // namespace hadaldp
