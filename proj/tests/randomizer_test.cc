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

#include <cmath>
#include <cstdint>

#include <gtest/gtest.h>

#include "hadaldp/random.h"

namespace hadaldp {
namespace {

// Degenerate coins: u = 0 always keeps, u -> 1 always flips.
struct AlwaysKeep {
  double NextUnit() { return 0.0; }
};
struct AlwaysFlip {
  double NextUnit() { return 0.9999999999999999; }
};

PrivacyBudget Budget(double eps) { return *PrivacyBudget::Create(eps); }

TEST(PrivacyBudgetTest, ValidatesRange) {
  EXPECT_FALSE(PrivacyBudget::Create(0.0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(-0.5).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0001).ok());
  EXPECT_FALSE(PrivacyBudget::Create(std::nan("")).ok());
  EXPECT_TRUE(PrivacyBudget::Create(1.0).ok());
}

TEST(PrivacyBudgetTest, DerivedConstants) {
  const PrivacyBudget b = Budget(std::log(2.0));
  EXPECT_NEAR(b.keep_probability(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(b.debias_scale(), 3.0, 1e-14);
  EXPECT_DOUBLE_EQ(Budget(1.0).Half().epsilon(), 0.5);
}

TEST(ReportTest, WireBytes) {
  EXPECT_EQ(ToWireByte(Report::kMinus), 0x00);
  EXPECT_EQ(ToWireByte(Report::kPlus), 0x01);
  EXPECT_EQ(*FromWireByte(0x01), Report::kPlus);
  EXPECT_EQ(*FromWireByte(0x00), Report::kMinus);
  EXPECT_FALSE(FromWireByte(0x02).ok());
}

TEST(HadamardRandomizeTest, ForcedCoinReturnsEntry) {
  const HadamardDim dim = *HadamardDim::Create(8);
  AlwaysKeep keep;
  AlwaysFlip flip;
  for (uint64_t r = 0; r < 8; ++r) {
    for (uint64_t c = 0; c < 8; ++c) {
      EXPECT_EQ(SignOf(*HadamardRandomize(dim, r, c, Budget(1.0), keep)),
                EntryUnchecked(r, c));
      EXPECT_EQ(SignOf(*HadamardRandomize(dim, r, c, Budget(1.0), flip)),
                -EntryUnchecked(r, c));
    }
  }
  EXPECT_FALSE(HadamardRandomize(dim, 8, 0, Budget(1.0), keep).ok());
}

TEST(HadamardRandomizeTest, ConsumesExactlyOneDraw) {
  const HadamardDim dim = *HadamardDim::Create(16);
  Stream rng(3);
  for (int t = 0; t < 100; ++t) {
    Stream expected = rng;
    expected.Next();
    ASSERT_TRUE(HadamardRandomize(dim, t % 16, (t * 7) % 16, Budget(0.5), rng)
                    .ok());
    ASSERT_EQ(rng.state(), expected.state());
  }
}

TEST(HadamardRandomizeTest, KeepRateAtLogTwo) {
  const HadamardDim dim = *HadamardDim::Create(4);
  const PrivacyBudget b = Budget(std::log(2.0));
  EXPECT_NEAR(RandomizerLaw(1, 1, b).p_plus, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(RandomizerLaw(0, 1, b).p_plus, 2.0 / 3.0, 1e-15);
  Stream rng(11);
  const int trials = 400000;
  int agree = 0;
  for (int t = 0; t < trials; ++t) {
    agree += SignOf(*HadamardRandomize(dim, 1, 1, b, rng)) == -1;
  }
  const double sigma = std::sqrt(2.0 / 9.0 / trials);
  EXPECT_NEAR(static_cast<double>(agree) / trials, 2.0 / 3.0, 3 * sigma);
}

TEST(HadamardRandomizeTest, MeanMatchesClosedForm) {
  const HadamardDim dim = *HadamardDim::Create(1);
  const PrivacyBudget b = Budget(1.0);
  Stream rng(12345);
  const int trials = 1'000'000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    sum += SignOf(*HadamardRandomize(dim, 0, 0, b, rng));
  }
  const double mean = (std::exp(1.0) - 1) / (std::exp(1.0) + 1);
  EXPECT_NEAR(mean, 0.4621, 1e-4);
  const double sigma = std::sqrt((1 - mean * mean) / trials);
  EXPECT_NEAR(sum / trials, mean, 3 * sigma);
}

TEST(HrrClientTest, ForcedCoinExamples) {
  AlwaysKeep keep;
  const HadamardDim d4 = *HadamardDim::Create(4);
  EXPECT_EQ(*HrrClient(d4, 0, Budget(1.0), 0, keep), Report::kPlus);
  EXPECT_EQ(*HrrClient(d4, 1, Budget(1.0), 1, keep), Report::kMinus);
  EXPECT_EQ(HrrClient(d4, 0, Budget(1.0), 4, keep).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(HadaOracleClientTest, IdentityHashComposition) {
  AlwaysKeep keep;
  const PairwiseHash h = *PairwiseHash::Create(1, 0, 8);
  for (uint64_t row = 0; row < 8; ++row) {
    EXPECT_EQ(SignOf(*HadaOracleClient(row, h, Budget(1.0), 13, keep)),
              EntryUnchecked(row, 5));
  }
  EXPECT_FALSE(HadaOracleClient(0, h, Budget(1.0), kHashPrime, keep).ok());
}

TEST(HadaOracleClientTest, MeanMatchesScaledEntry) {
  Stream hash_rng(8);
  const PairwiseHash h = PairwiseHash::Sample(32, hash_rng);
  const PrivacyBudget b = Budget(0.7);
  const uint64_t element = 424242;
  const uint64_t row = 19;
  const int expected_sign = EntryUnchecked(row, *h.Eval(element));
  Stream rng(31);
  const int trials = 1'000'000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    sum += SignOf(*HadaOracleClient(row, h, b, element, rng));
  }
  const double mean = expected_sign * std::expm1(0.7) / (std::exp(0.7) + 1);
  const double sigma = std::sqrt((1 - mean * mean) / trials);
  EXPECT_NEAR(sum / trials, mean, 3 * sigma);
}

TEST(HadaHeavyClientTest, FullLengthPrefixIsTheElement) {
  AlwaysKeep keep;
  const PrefixCode code = *PrefixCode::Create(2, 4, 256);
  Stream hash_rng(4);
  const PairwiseHash h = PairwiseHash::Sample(16, hash_rng);
  for (uint64_t v = 0; v < 256; ++v) {
    for (uint64_t row = 0; row < 16; ++row) {
      ASSERT_EQ(*HadaHeavyClient(4, row, h, Budget(1.0), v, code, keep),
                *HadaOracleClient(row, h, Budget(1.0), v, keep));
    }
  }
}

TEST(HadaHeavyClientTest, HashesThePrefixInteger) {
  AlwaysKeep keep;
  const PrefixCode code = *PrefixCode::Create(2, 4, 256);
  const PairwiseHash h = *PairwiseHash::Create(1, 0, 8);
  // 27 = digits [0,1,2,3]; the length-2 prefix is digits [0,1] = 1.
  EXPECT_EQ(*HadaHeavyColumn(code, 2, h, 27), 1u);
  for (uint64_t row = 0; row < 8; ++row) {
    EXPECT_EQ(SignOf(*HadaHeavyClient(2, row, h, Budget(1.0), 27, code, keep)),
              EntryUnchecked(row, 1));
  }
  EXPECT_FALSE(HadaHeavyClient(0, 0, h, Budget(1.0), 27, code, keep).ok());
  EXPECT_FALSE(HadaHeavyClient(5, 0, h, Budget(1.0), 27, code, keep).ok());
}

// Exhaustive likelihood-ratio sweep over every client wrapper.
TEST(LocalPrivacyTest, EveryClientLawIsEpsLdp) {
  for (double eps : {0.1, 0.5, 1.0}) {
    const PrivacyBudget b = Budget(eps);
    const double bound = std::exp(eps) + 1e-12;
    double worst = 0.0;
    for (uint64_t m = 1; m <= 16; m *= 2) {
      const HadamardDim dim = *HadamardDim::Create(m);
      const PairwiseHash h = *PairwiseHash::Create(2654435761, 97, m);
      const PrefixCode code = *PrefixCode::Create(1, 4, 16);
      for (uint64_t r = 0; r < m; ++r) {
        for (uint64_t v = 0; v < m; ++v) {
          for (uint64_t w = 0; w < m; ++w) {
            const ReportLaw hrr_v = RandomizerLaw(r, *HrrColumn(dim, v), b);
            const ReportLaw hrr_w = RandomizerLaw(r, *HrrColumn(dim, w), b);
            worst = std::max(worst, MaxLikelihoodRatio(hrr_v, hrr_w));
            const ReportLaw ho_v = RandomizerLaw(r, *HadaOracleColumn(h, v), b);
            const ReportLaw ho_w = RandomizerLaw(r, *HadaOracleColumn(h, w), b);
            worst = std::max(worst, MaxLikelihoodRatio(ho_v, ho_w));
            for (int tau = 1; tau <= 4; ++tau) {
              const ReportLaw hh_v =
                  RandomizerLaw(r, *HadaHeavyColumn(code, tau, h, v), b);
              const ReportLaw hh_w =
                  RandomizerLaw(r, *HadaHeavyColumn(code, tau, h, w), b);
              worst = std::max(worst, MaxLikelihoodRatio(hh_v, hh_w));
            }
          }
        }
      }
    }
    EXPECT_LE(worst, bound) << "eps=" << eps;
    // Some pair always lands on opposite signs, so the bound is tight.
    EXPECT_NEAR(worst, std::exp(eps), 1e-12);
  }
}

}  // namespace
}  // namespace hadaldp
