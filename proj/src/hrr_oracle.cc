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

#include "hadaldp/hrr_oracle.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "hadaldp/binary_io.h"
#include "hadaldp/random.h"

namespace hadaldp {
namespace {

constexpr char kHrrMagic[] = "LDPH";
constexpr uint16_t kHrrVersion = 1;

absl::Status CheckDomain(uint64_t v, uint64_t d) {
  if (v >= d) {
    return absl::OutOfRangeError(
        absl::StrCat("element ", v, " outside domain of size ", d));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<HrrAccumulator> HrrAccumulator::Create(
    uint64_t d, const PrivacyBudget& budget, uint64_t max_dim) {
  if (d == 0) return absl::InvalidArgumentError("domain size must be >= 1");
  const HadamardDim dim = HadamardDim::ForDomain(d);
  if (dim.size() > max_dim) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "full-domain transform of size ", dim.size(), " exceeds the cap ",
        max_dim, "; use the hashed frequency oracle for large domains"));
  }
  return HrrAccumulator(d, dim, budget);
}

absl::Status HrrAccumulator::Add(uint64_t row, Report report) {
  if (row >= dim_.size()) {
    return absl::OutOfRangeError(
        absl::StrCat("row ", row, " outside m = ", dim_.size()));
  }
  if (!seen_[row]) {
    seen_[row] = true;
    touched_.push_back(row);
  }
  omega_[row] += budget_.debias_scale() * SignOf(report);
  ++n_users_;
  return absl::OkStatus();
}

absl::StatusOr<double> HrrAccumulator::QueryDirect(uint64_t v) const {
  if (absl::Status s = CheckDomain(v, d_); !s.ok()) return s;
  double acc = 0.0;
  for (uint64_t r : touched_) acc += EntryUnchecked(r, v) * omega_[r];
  return acc;
}

HrrState HrrAccumulator::Finalize() && {
  // Length is a power of two by construction.
  (void)FhtInPlace(std::span<double>(omega_));
  return HrrState(d_, dim_, budget_.epsilon(), n_users_, std::move(omega_));
}

absl::StatusOr<double> HrrState::Query(uint64_t v) const {
  if (absl::Status s = CheckDomain(v, d_); !s.ok()) return s;
  return estimates_[v];
}

std::string HrrState::Serialize() const {
  ByteWriter w;
  w.Bytes(std::string_view(kHrrMagic, 4));
  w.U16(kHrrVersion);
  w.U16(0);
  w.U64(dim_.size());
  w.F64(eps_);
  w.U64(n_users_);
  w.U64(d_);
  for (double x : estimates_) w.F64(x);
  return std::move(w).Take();
}

absl::StatusOr<HrrState> HrrState::Deserialize(std::string_view blob) {
  ByteReader r(blob);
  absl::StatusOr<std::string_view> magic = r.Bytes(4);
  if (!magic.ok()) return magic.status();
  if (*magic != std::string_view(kHrrMagic, 4)) {
    return absl::InvalidArgumentError("not an HRR state blob");
  }
  absl::StatusOr<uint16_t> version = r.U16();
  if (!version.ok()) return version.status();
  if (*version != kHrrVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported HRR state version ", *version));
  }
  if (absl::StatusOr<uint16_t> reserved = r.U16(); !reserved.ok()) {
    return reserved.status();
  }
  absl::StatusOr<uint64_t> m = r.U64();
  absl::StatusOr<double> eps = m.ok() ? r.F64() : m.status();
  absl::StatusOr<uint64_t> n = eps.ok() ? r.U64() : eps.status();
  absl::StatusOr<uint64_t> d = n.ok() ? r.U64() : n.status();
  if (!d.ok()) return d.status();
  absl::StatusOr<HadamardDim> dim = HadamardDim::Create(*m);
  if (!dim.ok()) return dim.status();
  if (*d == 0 || *d > *m) {
    return absl::InvalidArgumentError("HRR domain size inconsistent with m");
  }
  if (r.remaining() != *m * sizeof(double)) {
    return absl::DataLossError(absl::StrCat("expected ", *m,
                                            " estimates, blob holds ",
                                            r.remaining(), " bytes"));
  }
  std::vector<double> estimates(*m);
  for (double& x : estimates) x = *r.F64();
  return HrrState(*d, *dim, *eps, *n, std::move(estimates));
}

absl::StatusOr<double> QueryDirect(std::span<const double> omega, uint64_t v) {
  if (omega.empty() || !std::has_single_bit(omega.size())) {
    return absl::InvalidArgumentError(
        "report vector length must be a power of two");
  }
  if (v >= omega.size()) {
    return absl::OutOfRangeError(
        absl::StrCat("element ", v, " outside m = ", omega.size()));
  }
  double acc = 0.0;
  for (uint64_t r = 0; r < omega.size(); ++r) {
    if (omega[r] != 0.0) acc += EntryUnchecked(r, v) * omega[r];
  }
  return acc;
}

absl::StatusOr<HrrAccumulator> CollectHrr(std::span<const uint64_t> users,
                                          uint64_t d,
                                          const PrivacyBudget& budget,
                                          uint64_t seed,
                                          const HrrBuildOptions& options) {
  for (uint64_t v : users) {
    if (absl::Status s = CheckDomain(v, d); !s.ok()) return s;
  }
  absl::StatusOr<HrrAccumulator> acc =
      HrrAccumulator::Create(d, budget, options.max_dim);
  if (!acc.ok()) return acc.status();
  const uint64_t m = acc->dim().size();
  for (uint64_t u = 0; u < users.size(); ++u) {
    Stream row_rng = DeriveStream(seed, StreamPurpose::kServerRow, u,
                                  options.round);
    Stream coin = DeriveStream(seed, StreamPurpose::kClientCoin, u,
                               options.round);
    const uint64_t row = row_rng.Below(m);
    const Report report = RandomizeUnchecked(row, users[u], budget, coin);
    if (options.transcript != nullptr) {
      options.transcript->push_back(
          {u, options.round, budget.epsilon(), ToWireByte(report)});
    }
    (void)acc->Add(row, report);
  }
  return acc;
}

absl::StatusOr<HrrState> BuildHrr(std::span<const uint64_t> users, uint64_t d,
                                  const PrivacyBudget& budget, uint64_t seed,
                                  const HrrBuildOptions& options) {
  absl::StatusOr<HrrAccumulator> acc =
      CollectHrr(users, d, budget, seed, options);
  if (!acc.ok()) return acc.status();
  return std::move(*acc).Finalize();
}

}  // namespace hadaldp
