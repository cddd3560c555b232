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
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "hadaldp/random.h"

namespace hadaldp {
namespace {

std::vector<uint64_t> UniformUsers(uint64_t n, uint64_t d, uint64_t seed) {
  Stream rng(seed);
  std::vector<uint64_t> users(n);
  for (uint64_t& u : users) u = rng.Below(d);
  return users;
}

OracleParams Practical(double eps, double beta_prime) {
  return OracleParams::ForProfile(Profile::kPractical, eps, beta_prime);
}

// Parts with k identity hashes into a table of width m.
OracleState::Parts IdentityParts(uint64_t k, uint64_t m, uint64_t d,
                                 std::vector<double> matrix) {
  std::vector<PairwiseHash> hashes(k, *PairwiseHash::Create(1, 0, m));
  return {d,
          1.0,
          0.1,
          PartitionScheme::kPermutation,
          *HadamardDim::Create(m),
          std::move(hashes),
          std::move(matrix),
          std::vector<uint64_t>(k, 1),
          k};
}

TEST(OracleParamsTest, Repetitions) {
  OracleParams p;
  p.beta_prime = 0.05;
  EXPECT_EQ(p.Repetitions(), 24u);
  p.beta_prime = 0.01;
  EXPECT_EQ(p.Repetitions(), 37u);
  p.beta_prime = 0.9;
  EXPECT_EQ(p.Repetitions(), 1u);
  // 2 ln(e^2) is exactly 4 in real arithmetic.
  p.c_k = 2.0;
  p.beta_prime = std::exp(-2.0);
  EXPECT_EQ(p.Repetitions(), 4u);
}

TEST(OracleParamsTest, Dimension) {
  EXPECT_NEAR(TheoryDimensionConstant(8.0), 167.19525357189374, 1e-12);
  const OracleParams theory =
      OracleParams::ForProfile(Profile::kTheory, 1.0, 0.05);
  EXPECT_EQ(theory.Dimension(10000).size(), 32768u);
  EXPECT_EQ(theory.Dimension(1).size(), 256u);
  const OracleParams practical = Practical(1.0, 0.05);
  EXPECT_EQ(practical.Dimension(10000).size(), 512u);
  EXPECT_EQ(practical.Dimension(100000).size(), 2048u);
  EXPECT_EQ(practical.Dimension(100000, 0.5).size(), 1024u);
  EXPECT_EQ(practical.Dimension(0).size(), 2u);
}

TEST(OracleParamsTest, Validation) {
  EXPECT_TRUE(OracleParams{}.Validate().ok());
  OracleParams p;
  p.eps = 0.0;
  EXPECT_FALSE(p.Validate().ok());
  p = OracleParams{};
  p.beta_prime = 1.0;
  EXPECT_FALSE(p.Validate().ok());
  p = OracleParams{};
  p.c_k = 0.5;
  EXPECT_FALSE(p.Validate().ok());
  p = OracleParams{};
  p.c_m = -1.0;
  EXPECT_FALSE(p.Validate().ok());
  EXPECT_EQ(*ParseProfile("theory"), Profile::kTheory);
  EXPECT_FALSE(ParseProfile("fast").ok());
}

TEST(HadaOracleTest, RejectsBadInputs) {
  const OracleParams p = Practical(1.0, 0.05);
  EXPECT_EQ(ConstructOracle({}, 10, p, 1).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(ConstructOracle(std::vector<uint64_t>{3, 10}, 10, p, 1)
                .status()
                .code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(
      ConstructOracle(std::vector<uint64_t>{0}, kHashPrime + 1, p, 1).ok());
  const OracleState s = *ConstructOracle(std::vector<uint64_t>{3}, 10, p, 1);
  EXPECT_EQ(s.Query(10).status().code(), absl::StatusCode::kOutOfRange);
}

TEST(HadaOracleTest, LowerMedianForEvenK) {
  // Column h_j(0) = 0 in every row.
  const OracleState s = *OracleState::FromParts(
      IdentityParts(4, 2, 100, {1, 0, 7, 0, 3, 0, 5, 0}));
  EXPECT_EQ(s.RowEstimates(0), (std::vector<double>{4, 28, 12, 20}));
  EXPECT_EQ(*s.Query(0), 12.0);
}

TEST(HadaOracleTest, OddKMedian) {
  EXPECT_EQ(
      *OracleState::FromParts(IdentityParts(3, 2, 10, {9, 0, -2, 0, 4, 0}))
           ->Query(2),
      12.0);
}

TEST(HadaOracleTest, FromPartsChecksShape) {
  OracleState::Parts parts = IdentityParts(1, 4, 10, {1, 2, 3});
  EXPECT_FALSE(OracleState::FromParts(parts).ok());
  parts.matrix = {1, 2, 3, 4};
  parts.hashes[0] = *PairwiseHash::Create(1, 0, 8);
  EXPECT_FALSE(OracleState::FromParts(parts).ok());
}

// Recomputes every row estimate from the transcript with explicit sums over
// users and Hadamard entries, bypassing the transform.
TEST(HadaOracleTest, MatchesNaiveRecomputation) {
  const uint64_t n = 3000;
  const uint64_t d = 5000;
  const uint64_t seed = 424242;
  const std::vector<uint64_t> users = UniformUsers(n, d, 8);
  OracleParams p = Practical(0.7, 0.2);
  p.scheme = PartitionScheme::kIndependent;
  Transcript transcript;
  OracleBuildOptions options;
  options.transcript = &transcript;
  const OracleState s = *ConstructOracle(users, d, p, seed, options);
  const uint64_t k = s.k();
  const uint64_t m = s.dim().size();
  ASSERT_EQ(k, p.Repetitions());
  ASSERT_EQ(transcript.size(), n);

  Stream prng = DeriveStream(seed, StreamPurpose::kPartition, 0, 0);
  const Partition part = *IndependentPartition(n, k, prng);
  EXPECT_EQ(part.subset_sizes, s.subset_sizes());
  const double c = PrivacyBudget::Create(0.7)->debias_scale();

  for (uint64_t v : {0, 17, 999, 4999}) {
    std::vector<double> naive(k, 0.0);
    for (uint64_t u = 0; u < n; ++u) {
      const uint64_t j = part.assignment[u];
      const uint64_t r =
          DeriveStream(seed, StreamPurpose::kServerRow, u, 0).Below(m);
      const int y = SignOf(*FromWireByte(transcript[u].wire));
      naive[j] += c * y * EntryUnchecked(r, s.hashes()[j].EvalUnchecked(v));
    }
    const std::vector<double> rows = s.RowEstimates(v);
    for (uint64_t j = 0; j < k; ++j) {
      EXPECT_NEAR(rows[j], k * naive[j], 1e-6) << "v=" << v << " j=" << j;
    }
    std::vector<double> scaled = naive;
    for (double& x : scaled) x *= k;
    std::sort(scaled.begin(), scaled.end());
    EXPECT_NEAR(*s.Query(v), scaled[(k - 1) / 2], 1e-6);
  }
}

TEST(HadaOracleTest, SameSeedIsByteIdentical) {
  const std::vector<uint64_t> users = UniformUsers(2000, 300, 3);
  const OracleParams p = Practical(1.0, 0.05);
  Transcript ta;
  Transcript tb;
  OracleBuildOptions oa;
  oa.transcript = &ta;
  OracleBuildOptions ob;
  ob.transcript = &tb;
  const OracleState a = *ConstructOracle(users, 300, p, 77, oa);
  const OracleState b = *ConstructOracle(users, 300, p, 77, ob);
  EXPECT_EQ(a.Serialize(), b.Serialize());
  EXPECT_EQ(DumpWireBytes(ta), DumpWireBytes(tb));
  const OracleState c = *ConstructOracle(users, 300, p, 78);
  EXPECT_NE(a.Serialize(), c.Serialize());
}

TEST(HadaOracleTest, SerializationRoundTrip) {
  const std::vector<uint64_t> users = UniformUsers(1000, 64, 4);
  const OracleState s = *ConstructOracle(users, 64, Practical(0.9, 0.1), 5);
  const std::string blob = s.Serialize();
  const OracleState back = *OracleState::Deserialize(blob);
  EXPECT_EQ(back.k(), s.k());
  EXPECT_EQ(back.dim(), s.dim());
  EXPECT_EQ(back.n_users(), 1000u);
  EXPECT_EQ(back.domain_size(), 64u);
  EXPECT_EQ(back.epsilon(), 0.9);
  EXPECT_EQ(back.beta_prime(), 0.1);
  EXPECT_EQ(back.hashes(), s.hashes());
  for (uint64_t v = 0; v < 64; ++v) EXPECT_EQ(*back.Query(v), *s.Query(v));
  EXPECT_EQ(back.Serialize(), blob);
  EXPECT_FALSE(OracleState::Deserialize(blob.substr(0, 30)).ok());
  std::string bad = blob;
  bad[0] = 'X';
  EXPECT_FALSE(OracleState::Deserialize(bad).ok());
}

TEST(HadaOracleTest, PlantedHeavyElementIsRecovered) {
  const uint64_t n = 40000;
  const uint64_t d = uint64_t{1} << 32;
  std::vector<uint64_t> users = UniformUsers(n, d, 10);
  for (uint64_t u = 0; u < 8000; ++u) users[u] = 123456789;
  const OracleParams p = Practical(1.0, 0.05);
  const double bound = TheoreticalErrorBound(p, n, 4.0);
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const OracleState s = *ConstructOracle(users, d, p, seed);
    EXPECT_LE(std::abs(*s.Query(123456789) - 8000.0), bound);
    EXPECT_LE(std::abs(*s.Query(42)), bound);
  }
}

TEST(HadaOracleTest, MeanErrorNearZeroAcrossSeeds) {
  const uint64_t n = 10000;
  std::vector<uint64_t> users(n, 0);
  for (uint64_t u = 0; u < n / 2; ++u) users[u] = 1 + u % 1000;
  const OracleParams p = Practical(1.0, 0.3);
  const int trials = 60;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const double e = *ConstructOracle(users, 2000, p, 900 + t)->Query(0) - 5000;
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / trials;
  const double sd = std::sqrt(sum_sq / trials - mean * mean);
  EXPECT_LE(std::abs(mean), 4 * sd / std::sqrt(trials) + 1.0);
}

TEST(HadaOracleTest, MemoryIsKTimesM) {
  const std::vector<uint64_t> users = UniformUsers(50000, 1000, 1);
  const OracleParams p = Practical(1.0, 0.05);
  const OracleState s = *ConstructOracle(users, 1000, p, 2);
  EXPECT_EQ(s.matrix().size(), s.k() * s.dim().size());
  EXPECT_EQ(s.dim().size(), 1024u);
  EXPECT_EQ(s.MemoryBytes(), 24 * 1024 * 8 + 24 * 24u);
}

TEST(HadaOracleTest, SubsetSizesFollowScheme) {
  const std::vector<uint64_t> users = UniformUsers(1001, 10, 1);
  const OracleState s = *ConstructOracle(users, 10, Practical(1.0, 0.05), 2);
  uint64_t total = 0;
  for (uint64_t size : s.subset_sizes()) {
    EXPECT_TRUE(size == 41 || size == 42);
    total += size;
  }
  EXPECT_EQ(total, 1001u);
}

}  // namespace
}  // namespace hadaldp
