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

#include "hadaldp/randomizer.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace hadaldp {

PrivacyBudget::PrivacyBudget(double eps)
    : eps_(eps),
      keep_(std::exp(eps) / (std::exp(eps) + 1.0)),
      scale_((std::exp(eps) + 1.0) / std::expm1(eps)) {}

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double eps) {
  if (!(eps > 0.0) || !(eps <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("privacy budget must lie in (0, 1], got ", eps));
  }
  return PrivacyBudget(eps);
}

absl::StatusOr<Report> FromWireByte(uint8_t byte) {
  switch (byte) {
    case 0x00:
      return Report::kMinus;
    case 0x01:
      return Report::kPlus;
    default:
      return absl::InvalidArgumentError(
          absl::StrCat("invalid report byte ", static_cast<int>(byte)));
  }
}

absl::StatusOr<uint64_t> HrrColumn(HadamardDim dim, uint64_t element) {
  if (element >= dim.size()) {
    return absl::OutOfRangeError(absl::StrCat(
        "element ", element, " has no column in H_", dim.size()));
  }
  return element;
}

absl::StatusOr<uint64_t> HadaOracleColumn(const PairwiseHash& h,
                                          uint64_t element) {
  return h.Eval(element);
}

absl::StatusOr<uint64_t> HadaHeavyColumn(const PrefixCode& code, int tau,
                                         const PairwiseHash& h,
                                         uint64_t element) {
  absl::StatusOr<uint64_t> prefix = code.EncodePrefix(element, tau);
  if (!prefix.ok()) return prefix.status();
  return h.Eval(*prefix);
}

ReportLaw RandomizerLaw(uint64_t row, uint64_t col,
                        const PrivacyBudget& budget) {
  const double keep = budget.keep_probability();
  return ReportLaw{EntryUnchecked(row, col) > 0 ? keep : 1.0 - keep};
}

double MaxLikelihoodRatio(const ReportLaw& x, const ReportLaw& y) {
  return std::max(x.p_plus / y.p_plus, x.p_minus() / y.p_minus());
}

}  // namespace hadaldp
