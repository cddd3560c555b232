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

#ifndef HADALDP_HADA_ORACLE_H_
#define HADALDP_HADA_ORACLE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hadaldp/hadamard.h"
#include "hadaldp/hashing.h"
#include "hadaldp/partitioning.h"
#include "hadaldp/randomizer.h"
#include "hadaldp/transcript.h"

namespace hadaldp {

// C_M = 8 e^2 sqrt(C_K), the value the accuracy proof needs.
double TheoryDimensionConstant(double c_k);

inline constexpr double kDefaultRepetitionConstant = 8.0;
inline constexpr double kPracticalDimensionConstant = 4.0;

// "theory" uses the proof constants; "practical" keeps C_K = 8 but sets
// C_M = 4. The practical profile is a heuristic with no proven guarantee.
enum class Profile { kTheory, kPractical };
absl::StatusOr<Profile> ParseProfile(std::string_view name);
std::string_view ProfileName(Profile profile);

struct OracleParams {
  double eps = 1.0;
  double beta_prime = 0.05;
  double c_k = kDefaultRepetitionConstant;
  double c_m = TheoryDimensionConstant(kDefaultRepetitionConstant);
  PartitionScheme scheme = PartitionScheme::kPermutation;

  static OracleParams ForProfile(Profile profile, double eps,
                                 double beta_prime);

  absl::Status Validate() const;

  // k = max(1, ceil(C_K ln(1/beta'))).
  uint64_t Repetitions() const;

  // Smallest power of two >= max(2, C_M * eps_used * sqrt(n)).
  HadamardDim Dimension(uint64_t n, double eps_used) const;
  HadamardDim Dimension(uint64_t n) const { return Dimension(n, eps); }
};

// Server memory of the hashed oracle: k hashes and a k x m matrix whose row
// j already holds H^T applied to that subset's aggregated reports.
class OracleState {
 public:
  // Median over j of k * M[j, h_j(v)]. For even k the lower-middle order
  // statistic is returned.
  absl::StatusOr<double> Query(uint64_t v) const;
  double QueryUnchecked(uint64_t v) const;

  // k * M[j, h_j(v)] for every row j.
  std::vector<double> RowEstimates(uint64_t v) const;

  uint64_t k() const { return hashes_.size(); }
  HadamardDim dim() const { return dim_; }
  const std::vector<PairwiseHash>& hashes() const { return hashes_; }
  std::span<const double> matrix() const { return matrix_; }
  std::span<const double> row(uint64_t j) const {
    return std::span<const double>(matrix_).subspan(j * dim_.size(),
                                                    dim_.size());
  }
  const std::vector<uint64_t>& subset_sizes() const { return subset_sizes_; }
  uint64_t n_users() const { return n_users_; }
  uint64_t domain_size() const { return d_; }
  double epsilon() const { return eps_; }
  double beta_prime() const { return beta_prime_; }
  PartitionScheme scheme() const { return scheme_; }
  uint64_t MemoryBytes() const {
    return matrix_.size() * sizeof(double) + hashes_.size() * 3 * 8;
  }

  // magic "LDPO", u16 version, u16 reserved, u64 k, u64 m, f64 eps,
  // f64 beta', u8 scheme, u64 n_users, u64 d; then k records of
  // (u32 length, JSON {a,b,p,m}); then k*m little-endian f64, row-major.
  std::string Serialize() const;
  static absl::StatusOr<OracleState> Deserialize(std::string_view blob);

  struct Parts {
    uint64_t d;
    double eps;
    double beta_prime;
    PartitionScheme scheme;
    HadamardDim dim;
    std::vector<PairwiseHash> hashes;
    std::vector<double> matrix;
    std::vector<uint64_t> subset_sizes;
    uint64_t n_users;
  };
  // Assembles a state from raw parts; shapes are validated.
  static absl::StatusOr<OracleState> FromParts(Parts parts);

 private:
  explicit OracleState(Parts parts);

  uint64_t d_;
  double eps_;
  double beta_prime_;
  PartitionScheme scheme_;
  HadamardDim dim_;
  std::vector<PairwiseHash> hashes_;
  std::vector<double> matrix_;
  std::vector<uint64_t> subset_sizes_;
  uint64_t n_users_;
};

struct OracleBuildOptions {
  uint32_t round = 0;
  Transcript* transcript = nullptr;
};

// Partitions users into k subsets, samples k pairwise hashes, collects one
// report per user and transforms each row.
absl::StatusOr<OracleState> ConstructOracle(
    std::span<const uint64_t> users, uint64_t d, const OracleParams& params,
    uint64_t seed, const OracleBuildOptions& options = {});

// calibration_c * (1/eps) * sqrt(n ln(1/beta')). Shape of the accuracy
// guarantee with an empirically fitted constant; never used by the protocol.
double TheoreticalErrorBound(const OracleParams& params, uint64_t n,
                             double calibration_c);

namespace internal {

// Produces participant i's report for row `row` under hash h.
using ClientFn = std::function<absl::StatusOr<Report>(
    uint64_t participant, uint64_t row, const PairwiseHash& h, Stream& coin)>;

struct RowBuildSpec {
  std::span<const uint64_t> participant_ids;  // global user index per entry
  uint64_t query_domain;                      // bound checked by Query
  const std::vector<PairwiseHash>* hashes;
  PrivacyBudget budget;
  PartitionScheme scheme;
  double beta_prime;
  uint64_t seed;
  uint32_t round;
  uint64_t partition_tag;
  Transcript* transcript;
};

// Shared construction path for the standalone oracle and the per-level
// heavy-hitter oracles.
absl::StatusOr<OracleState> BuildRows(const RowBuildSpec& spec,
                                      const ClientFn& client);

std::vector<PairwiseHash> SampleHashes(uint64_t k, HadamardDim dim,
                                       uint64_t seed, uint64_t tag);

}  // namespace internal
}  // namespace hadaldp

#endif  // HADALDP_HADA_ORACLE_H_
