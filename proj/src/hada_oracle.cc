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

#include "hadaldp/hada_oracle.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "absl/strings/str_cat.h"
#include "hadaldp/binary_io.h"
#include "hadaldp/random.h"

namespace hadaldp {
namespace {

constexpr char kOracleMagic[] = "LDPO";
constexpr uint16_t kOracleVersion = 1;

// Guards ceil() against ln(1/beta') landing an ulp above an integer product.
constexpr double kCeilSlack = 1e-9;

double LowerMedian(std::vector<double>& values) {
  auto mid = values.begin() + (values.size() - 1) / 2;
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace

double TheoryDimensionConstant(double c_k) {
  return 8.0 * std::numbers::e * std::numbers::e * std::sqrt(c_k);
}

absl::StatusOr<Profile> ParseProfile(std::string_view name) {
  if (name == "theory") return Profile::kTheory;
  if (name == "practical") return Profile::kPractical;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown profile '", std::string(name), "'"));
}

std::string_view ProfileName(Profile profile) {
  return profile == Profile::kTheory ? "theory" : "practical";
}

OracleParams OracleParams::ForProfile(Profile profile, double eps,
                                      double beta_prime) {
  OracleParams p;
  p.eps = eps;
  p.beta_prime = beta_prime;
  p.c_k = kDefaultRepetitionConstant;
  p.c_m = profile == Profile::kTheory ? TheoryDimensionConstant(p.c_k)
                                      : kPracticalDimensionConstant;
  return p;
}

absl::Status OracleParams::Validate() const {
  if (absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(eps); !b.ok()) {
    return b.status();
  }
  if (!(beta_prime > 0.0 && beta_prime < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta' must lie in (0, 1), got ", beta_prime));
  }
  if (!(c_k >= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("C_K must be >= 1, got ", c_k));
  }
  if (!(c_m > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("C_M must be positive, got ", c_m));
  }
  return absl::OkStatus();
}

uint64_t OracleParams::Repetitions() const {
  const double k = std::ceil(c_k * std::log(1.0 / beta_prime) - kCeilSlack);
  return k < 1.0 ? 1 : static_cast<uint64_t>(k);
}

HadamardDim OracleParams::Dimension(uint64_t n, double eps_used) const {
  return HadamardDim::AtLeast(c_m * eps_used * std::sqrt(static_cast<double>(n)),
                              2);
}

OracleState::OracleState(Parts parts)
    : d_(parts.d),
      eps_(parts.eps),
      beta_prime_(parts.beta_prime),
      scheme_(parts.scheme),
      dim_(parts.dim),
      hashes_(std::move(parts.hashes)),
      matrix_(std::move(parts.matrix)),
      subset_sizes_(std::move(parts.subset_sizes)),
      n_users_(parts.n_users) {}

absl::StatusOr<OracleState> OracleState::FromParts(Parts parts) {
  if (parts.hashes.empty()) {
    return absl::InvalidArgumentError("oracle needs at least one hash");
  }
  if (parts.matrix.size() != parts.hashes.size() * parts.dim.size()) {
    return absl::InvalidArgumentError("oracle matrix is not k x m");
  }
  for (const PairwiseHash& h : parts.hashes) {
    if (h.m() != parts.dim.size()) {
      return absl::InvalidArgumentError("hash range differs from m");
    }
  }
  if (parts.subset_sizes.empty()) {
    parts.subset_sizes.assign(parts.hashes.size(), 0);
  }
  if (parts.subset_sizes.size() != parts.hashes.size()) {
    return absl::InvalidArgumentError("subset sizes do not match k");
  }
  return OracleState(std::move(parts));
}

double OracleState::QueryUnchecked(uint64_t v) const {
  std::vector<double> values = RowEstimates(v);
  return LowerMedian(values);
}

absl::StatusOr<double> OracleState::Query(uint64_t v) const {
  if (v >= d_) {
    return absl::OutOfRangeError(
        absl::StrCat("element ", v, " outside domain of size ", d_));
  }
  return QueryUnchecked(v);
}

std::vector<double> OracleState::RowEstimates(uint64_t v) const {
  const uint64_t k = hashes_.size();
  const uint64_t m = dim_.size();
  const double scale = static_cast<double>(k);
  std::vector<double> values(k);
  for (uint64_t j = 0; j < k; ++j) {
    values[j] = scale * matrix_[j * m + hashes_[j].EvalUnchecked(v)];
  }
  return values;
}

std::string OracleState::Serialize() const {
  ByteWriter w;
  w.Bytes(std::string_view(kOracleMagic, 4));
  w.U16(kOracleVersion);
  w.U16(0);
  w.U64(k());
  w.U64(dim_.size());
  w.F64(eps_);
  w.F64(beta_prime_);
  w.U8(scheme_ == PartitionScheme::kIndependent ? 0 : 1);
  w.U64(n_users_);
  w.U64(d_);
  for (const PairwiseHash& h : hashes_) {
    const std::string record = h.ToJson().dump();
    w.U32(static_cast<uint32_t>(record.size()));
    w.Bytes(record);
  }
  for (double x : matrix_) w.F64(x);
  return std::move(w).Take();
}

absl::StatusOr<OracleState> OracleState::Deserialize(std::string_view blob) {
  ByteReader r(blob);
  absl::StatusOr<std::string_view> magic = r.Bytes(4);
  if (!magic.ok()) return magic.status();
  if (*magic != std::string_view(kOracleMagic, 4)) {
    return absl::InvalidArgumentError("not a frequency-oracle blob");
  }
  absl::StatusOr<uint16_t> version = r.U16();
  if (!version.ok()) return version.status();
  if (*version != kOracleVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported oracle version ", *version));
  }
  absl::StatusOr<uint16_t> reserved = r.U16();
  absl::StatusOr<uint64_t> k = reserved.ok() ? r.U64() : reserved.status();
  absl::StatusOr<uint64_t> m = k.ok() ? r.U64() : k.status();
  absl::StatusOr<double> eps = m.ok() ? r.F64() : m.status();
  absl::StatusOr<double> beta = eps.ok() ? r.F64() : eps.status();
  absl::StatusOr<uint8_t> scheme = beta.ok() ? r.U8() : beta.status();
  absl::StatusOr<uint64_t> n = scheme.ok() ? r.U64() : scheme.status();
  absl::StatusOr<uint64_t> d = n.ok() ? r.U64() : n.status();
  if (!d.ok()) return d.status();
  absl::StatusOr<HadamardDim> dim = HadamardDim::Create(*m);
  if (!dim.ok()) return dim.status();
  if (*scheme > 1) return absl::InvalidArgumentError("unknown scheme tag");
  if (*k == 0 || *k > r.remaining()) {
    return absl::InvalidArgumentError(absl::StrCat("implausible k = ", *k));
  }

  Parts parts{*d,
              *eps,
              *beta,
              *scheme == 0 ? PartitionScheme::kIndependent
                           : PartitionScheme::kPermutation,
              *dim,
              {},
              {},
              {},
              *n};
  for (uint64_t j = 0; j < *k; ++j) {
    absl::StatusOr<uint32_t> len = r.U32();
    if (!len.ok()) return len.status();
    absl::StatusOr<std::string_view> text = r.Bytes(*len);
    if (!text.ok()) return text.status();
    nlohmann::json record = nlohmann::json::parse(*text, nullptr, false);
    if (record.is_discarded()) {
      return absl::InvalidArgumentError("hash record is not valid JSON");
    }
    absl::StatusOr<PairwiseHash> h = PairwiseHash::FromJson(record);
    if (!h.ok()) return h.status();
    parts.hashes.push_back(*h);
  }
  if (r.remaining() != *k * *m * sizeof(double)) {
    return absl::DataLossError("oracle matrix has the wrong byte length");
  }
  parts.matrix.resize(*k * *m);
  for (double& x : parts.matrix) x = *r.F64();
  return FromParts(std::move(parts));
}

namespace internal {

std::vector<PairwiseHash> SampleHashes(uint64_t k, HadamardDim dim,
                                       uint64_t seed, uint64_t tag) {
  Stream rng = DeriveStream(seed, StreamPurpose::kHashFamily, tag);
  std::vector<PairwiseHash> hashes;
  hashes.reserve(k);
  for (uint64_t j = 0; j < k; ++j) {
    hashes.push_back(PairwiseHash::Sample(dim.size(), rng));
  }
  return hashes;
}

absl::StatusOr<OracleState> BuildRows(const RowBuildSpec& spec,
                                      const ClientFn& client) {
  const std::vector<PairwiseHash>& hashes = *spec.hashes;
  const uint64_t k = hashes.size();
  absl::StatusOr<HadamardDim> dim = HadamardDim::Create(hashes.front().m());
  if (!dim.ok()) return dim.status();
  const uint64_t m = dim->size();
  const uint64_t n = spec.participant_ids.size();

  Stream partition_rng = DeriveStream(spec.seed,
                                      StreamPurpose::kPartition,
                                      spec.partition_tag, spec.round);
  absl::StatusOr<Partition> partition =
      MakePartition(spec.scheme, n, k, partition_rng);
  if (!partition.ok()) return partition.status();

  std::vector<double> matrix(k * m, 0.0);
  const double scale = spec.budget.debias_scale();
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t user = spec.participant_ids[i];
    const uint64_t j = partition->assignment[i];
    Stream row_rng =
        DeriveStream(spec.seed, StreamPurpose::kServerRow, user, spec.round);
    Stream coin =
        DeriveStream(spec.seed, StreamPurpose::kClientCoin, user, spec.round);
    const uint64_t row = row_rng.Below(m);
    absl::StatusOr<Report> report = client(i, row, hashes[j], coin);
    if (!report.ok()) return report.status();
    if (spec.transcript != nullptr) {
      spec.transcript->push_back(
          {user, spec.round, spec.budget.epsilon(), ToWireByte(*report)});
    }
    matrix[j * m + row] += scale * SignOf(*report);
  }
  for (uint64_t j = 0; j < k; ++j) {
    (void)FhtInPlace(std::span<double>(matrix).subspan(j * m, m));
  }
  return OracleState::FromParts({spec.query_domain, spec.budget.epsilon(),
                                 spec.beta_prime, spec.scheme, *dim, hashes,
                                 std::move(matrix),
                                 std::move(partition->subset_sizes), n});
}

}  // namespace internal

absl::StatusOr<OracleState> ConstructOracle(std::span<const uint64_t> users,
                                            uint64_t d,
                                            const OracleParams& params,
                                            uint64_t seed,
                                            const OracleBuildOptions& options) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  if (users.empty()) {
    return absl::FailedPreconditionError(
        "cannot construct a frequency oracle from zero users");
  }
  if (d == 0 || d > kHashPrime) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain size must lie in [1, 2^61 - 1], got ", d));
  }
  for (uint64_t v : users) {
    if (v >= d) {
      return absl::OutOfRangeError(
          absl::StrCat("element ", v, " outside domain of size ", d));
    }
  }
  const PrivacyBudget budget = *PrivacyBudget::Create(params.eps);
  const uint64_t n = users.size();
  const uint64_t k = params.Repetitions();
  const HadamardDim dim = params.Dimension(n);
  const std::vector<PairwiseHash> hashes =
      internal::SampleHashes(k, dim, seed, options.round);

  std::vector<uint64_t> ids(n);
  for (uint64_t u = 0; u < n; ++u) ids[u] = u;

  internal::RowBuildSpec spec{ids,          d,
                              &hashes,      budget,
                              params.scheme, params.beta_prime,
                              seed,         options.round,
                              0,            options.transcript};
  return internal::BuildRows(
      spec, [&](uint64_t i, uint64_t row, const PairwiseHash& h,
                Stream& coin) {
        return HadaOracleClient(row, h, budget, users[i], coin);
      });
}

double TheoreticalErrorBound(const OracleParams& params, uint64_t n,
                             double calibration_c) {
  return calibration_c / params.eps *
         std::sqrt(static_cast<double>(n) * std::log(1.0 / params.beta_prime));
}

}  // namespace hadaldp
