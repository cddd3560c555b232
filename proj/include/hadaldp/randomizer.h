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

#ifndef HADALDP_RANDOMIZER_H_
#define HADALDP_RANDOMIZER_H_

#include <concepts>
#include <cstdint>

#include "absl/status/statusor.h"
#include "hadaldp/hadamard.h"
#include "hadaldp/hashing.h"
#include "hadaldp/prefix_code.h"

namespace hadaldp {

// Validated privacy budget eps in (0, 1]. The keep probability
// e^eps / (e^eps + 1) and the debiasing scale c_eps = (e^eps + 1) /
// (e^eps - 1) are computed once here.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double eps);

  double epsilon() const { return eps_; }
  double keep_probability() const { return keep_; }
  double debias_scale() const { return scale_; }

  // Budget for one of two composed reports.
  PrivacyBudget Half() const { return PrivacyBudget(eps_ / 2); }

 private:
  explicit PrivacyBudget(double eps);
  double eps_;
  double keep_;
  double scale_;
};

// A one-bit client report.
enum class Report : int8_t { kMinus = -1, kPlus = 1 };

inline int SignOf(Report r) { return static_cast<int>(r); }

// Transcript wire encoding: 0x00 -> -1, 0x01 -> +1.
inline uint8_t ToWireByte(Report r) { return r == Report::kPlus ? 1 : 0; }
absl::StatusOr<Report> FromWireByte(uint8_t byte);

// Anything that yields uniform doubles in [0, 1). Stream is the production
// source; tests substitute degenerate sources to force the coin.
template <typename T>
concept UniformSource = requires(T& t) {
  { t.NextUnit() } -> std::convertible_to<double>;
};

// Core randomizer: b * H[row, col] where b = +1 with the keep probability.
// Consumes exactly one draw from rng.
template <UniformSource Rng>
Report RandomizeUnchecked(uint64_t row, uint64_t col,
                          const PrivacyBudget& budget, Rng& rng) {
  const bool keep = rng.NextUnit() < budget.keep_probability();
  const int sign = EntryUnchecked(row, col) * (keep ? 1 : -1);
  return sign > 0 ? Report::kPlus : Report::kMinus;
}

template <UniformSource Rng>
absl::StatusOr<Report> HadamardRandomize(HadamardDim dim, uint64_t row,
                                         uint64_t col,
                                         const PrivacyBudget& budget,
                                         Rng& rng) {
  absl::StatusOr<int> entry = Entry(dim, row, col);
  if (!entry.ok()) return entry.status();
  return RandomizeUnchecked(row, col, budget, rng);
}

// Column selectors of the three client wrappers. Each maps the user's
// element to the Hadamard column it randomizes.
absl::StatusOr<uint64_t> HrrColumn(HadamardDim dim, uint64_t element);
absl::StatusOr<uint64_t> HadaOracleColumn(const PairwiseHash& h,
                                          uint64_t element);
absl::StatusOr<uint64_t> HadaHeavyColumn(const PrefixCode& code, int tau,
                                         const PairwiseHash& h,
                                         uint64_t element);

// Full-domain Hadamard randomized response client.
template <UniformSource Rng>
absl::StatusOr<Report> HrrClient(HadamardDim dim, uint64_t row,
                                 const PrivacyBudget& budget, uint64_t element,
                                 Rng& rng) {
  absl::StatusOr<uint64_t> col = HrrColumn(dim, element);
  if (!col.ok()) return col.status();
  return HadamardRandomize(dim, row, *col, budget, rng);
}

// Hashed client: randomizes column h(element) of H_m with m = h.m().
template <UniformSource Rng>
absl::StatusOr<Report> HadaOracleClient(uint64_t row, const PairwiseHash& h,
                                        const PrivacyBudget& budget,
                                        uint64_t element, Rng& rng) {
  absl::StatusOr<HadamardDim> dim = HadamardDim::Create(h.m());
  if (!dim.ok()) return dim.status();
  absl::StatusOr<uint64_t> col = HadaOracleColumn(h, element);
  if (!col.ok()) return col.status();
  return HadamardRandomize(*dim, row, *col, budget, rng);
}

// Prefix client: randomizes column h(prefix_tau(element)).
template <UniformSource Rng>
absl::StatusOr<Report> HadaHeavyClient(int tau, uint64_t row,
                                       const PairwiseHash& h,
                                       const PrivacyBudget& budget,
                                       uint64_t element,
                                       const PrefixCode& code, Rng& rng) {
  if (tau < 1) {
    return absl::InvalidArgumentError("heavy-hitter client level must be >= 1");
  }
  absl::StatusOr<HadamardDim> dim = HadamardDim::Create(h.m());
  if (!dim.ok()) return dim.status();
  absl::StatusOr<uint64_t> col = HadaHeavyColumn(code, tau, h, element);
  if (!col.ok()) return col.status();
  return HadamardRandomize(*dim, row, *col, budget, rng);
}

// Exact output law of a client report: Pr[report = +1].
struct ReportLaw {
  double p_plus;
  double p_minus() const { return 1.0 - p_plus; }
};

ReportLaw RandomizerLaw(uint64_t row, uint64_t col,
                        const PrivacyBudget& budget);

// Largest likelihood ratio between two laws over both outcomes.
double MaxLikelihoodRatio(const ReportLaw& x, const ReportLaw& y);

}  // namespace hadaldp

#endif  // HADALDP_RANDOMIZER_H_
