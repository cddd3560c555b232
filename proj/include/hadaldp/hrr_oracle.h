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

#ifndef HADALDP_HRR_ORACLE_H_
#define HADALDP_HRR_ORACLE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hadaldp/hadamard.h"
#include "hadaldp/randomizer.h"
#include "hadaldp/transcript.h"

namespace hadaldp {

// Baseline full-domain Hadamard randomized response. Memory is Theta(d), so
// the transform size is capped; larger domains belong to the hashed oracle.
inline constexpr uint64_t kDefaultMaxHrrDim = uint64_t{1} << 28;

class HrrState;

// Server-side report aggregation before the transform. omega[r] accumulates
// c_eps * report for every user assigned row r.
class HrrAccumulator {
 public:
  static absl::StatusOr<HrrAccumulator> Create(
      uint64_t d, const PrivacyBudget& budget,
      uint64_t max_dim = kDefaultMaxHrrDim);

  absl::Status Add(uint64_t row, Report report);

  // <column v of H, omega> evaluated over touched rows only, so the cost is
  // O(min(m, reports)).
  absl::StatusOr<double> QueryDirect(uint64_t v) const;

  // Transforms omega in place into the estimate vector.
  HrrState Finalize() &&;

  HadamardDim dim() const { return dim_; }
  uint64_t domain_size() const { return d_; }
  uint64_t n_users() const { return n_users_; }
  std::span<const double> omega() const { return omega_; }

 private:
  HrrAccumulator(uint64_t d, HadamardDim dim, const PrivacyBudget& budget)
      : d_(d), dim_(dim), budget_(budget), omega_(dim.size(), 0.0),
        seen_(dim.size(), false) {}

  uint64_t d_;
  HadamardDim dim_;
  PrivacyBudget budget_;
  std::vector<double> omega_;
  std::vector<bool> seen_;
  std::vector<uint64_t> touched_;
  uint64_t n_users_ = 0;
};

// Finalized baseline oracle: estimates = H^T omega, answered in O(1).
class HrrState {
 public:
  absl::StatusOr<double> Query(uint64_t v) const;

  HadamardDim dim() const { return dim_; }
  uint64_t domain_size() const { return d_; }
  double epsilon() const { return eps_; }
  uint64_t n_users() const { return n_users_; }
  std::span<const double> estimates() const { return estimates_; }
  uint64_t MemoryBytes() const { return estimates_.size() * sizeof(double); }

  // magic "LDPH", u16 version, u16 reserved, u64 m, f64 eps, u64 n_users,
  // u64 d, then m little-endian f64 estimates.
  std::string Serialize() const;
  static absl::StatusOr<HrrState> Deserialize(std::string_view blob);

 private:
  friend class HrrAccumulator;
  HrrState(uint64_t d, HadamardDim dim, double eps, uint64_t n_users,
           std::vector<double> estimates)
      : d_(d), dim_(dim), eps_(eps), n_users_(n_users),
        estimates_(std::move(estimates)) {}

  uint64_t d_;
  HadamardDim dim_;
  double eps_;
  uint64_t n_users_;
  std::vector<double> estimates_;
};

// <column v of H_m, omega> over the nonzero entries of a raw report vector.
absl::StatusOr<double> QueryDirect(std::span<const double> omega, uint64_t v);

struct HrrBuildOptions {
  uint64_t max_dim = kDefaultMaxHrrDim;
  uint32_t round = 0;
  Transcript* transcript = nullptr;
};

// Draws a uniform row per user, collects one client report each and
// aggregates. All elements are validated before any report is collected.
absl::StatusOr<HrrAccumulator> CollectHrr(std::span<const uint64_t> users,
                                          uint64_t d,
                                          const PrivacyBudget& budget,
                                          uint64_t seed,
                                          const HrrBuildOptions& options = {});

absl::StatusOr<HrrState> BuildHrr(std::span<const uint64_t> users, uint64_t d,
                                  const PrivacyBudget& budget, uint64_t seed,
                                  const HrrBuildOptions& options = {});

}  // namespace hadaldp

#endif  // HADALDP_HRR_ORACLE_H_
