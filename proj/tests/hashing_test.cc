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

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

namespace hadaldp {
namespace {

TEST(PairwiseHashTest, CreateValidatesRanges) {
  EXPECT_FALSE(PairwiseHash::Create(0, 0, 8).ok());
  EXPECT_FALSE(PairwiseHash::Create(kHashPrime, 0, 8).ok());
  EXPECT_FALSE(PairwiseHash::Create(1, kHashPrime, 8).ok());
  EXPECT_FALSE(PairwiseHash::Create(1, 0, 0).ok());
  EXPECT_TRUE(PairwiseHash::Create(kHashPrime - 1, kHashPrime - 1, 1).ok());
}

TEST(PairwiseHashTest, IdentityAffine) {
  const PairwiseHash h = *PairwiseHash::Create(1, 0, 8);
  EXPECT_EQ(*h.Eval(13), 5u);
  const PairwiseHash shifted = *PairwiseHash::Create(1, 3, 8);
  EXPECT_EQ(*shifted.Eval(13), 0u);
}

// Expected values come from Python big integers: ((a*x + b) % p) % m.
TEST(PairwiseHashTest, MatchesBigIntegerReference) {
  EXPECT_EQ(*PairwiseHash::Create(3, 7, 16)->Eval(1'000'000'000), 7u);
  EXPECT_EQ(*PairwiseHash::Create(kHashPrime - 2, kHashPrime - 1, 1 << 16)
                 ->Eval(kHashPrime - 5),
            9u);
  EXPECT_EQ(*PairwiseHash::Create(0x1234567890ABCDE, 0x0FEDCBA98765432, 1024)
                 ->Eval((uint64_t{1} << 60) + 12345),
            453u);
}

TEST(PairwiseHashTest, MulAddAgreesWithWideArithmetic) {
  Stream rng(5);
  for (int t = 0; t < 100000; ++t) {
    const uint64_t a = rng.Below(kHashPrime);
    const uint64_t x = rng.Below(kHashPrime);
    const uint64_t b = rng.Below(kHashPrime);
    const unsigned __int128 wide =
        (static_cast<unsigned __int128>(a) * x + b) % kHashPrime;
    ASSERT_EQ(MulAddModPrime(a, x, b), static_cast<uint64_t>(wide));
  }
}

TEST(PairwiseHashTest, InputAtOrAbovePrimeIsRejected) {
  const PairwiseHash h = *PairwiseHash::Create(5, 1, 8);
  EXPECT_EQ(h.Eval(kHashPrime).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_TRUE(h.Eval(kHashPrime - 1).ok());
}

TEST(PairwiseHashTest, SampleIsDeterministicPerStream) {
  Stream s1(42);
  Stream s2(42);
  const PairwiseHash a = PairwiseHash::Sample(64, s1);
  const PairwiseHash b = PairwiseHash::Sample(64, s2);
  EXPECT_EQ(a, b);
  EXPECT_GE(a.a(), 1u);
  EXPECT_LT(a.a(), kHashPrime);
  EXPECT_LT(a.b(), kHashPrime);
}

TEST(PairwiseHashTest, SingleBucketRange) {
  Stream rng(1);
  const PairwiseHash h = PairwiseHash::Sample(1, rng);
  for (uint64_t x = 0; x < 1000; ++x) EXPECT_EQ(*h.Eval(x * 7919), 0u);
}

TEST(PairwiseHashTest, JsonRoundTripPreservesBuckets) {
  Stream rng(77);
  for (int t = 0; t < 20; ++t) {
    const PairwiseHash h = PairwiseHash::Sample(uint64_t{1} << (t % 12), rng);
    const nlohmann::json j = nlohmann::json::parse(h.ToJson().dump());
    EXPECT_EQ(j.at("p").get<uint64_t>(), kHashPrime);
    const PairwiseHash back = *PairwiseHash::FromJson(j);
    EXPECT_EQ(back, h);
    for (uint64_t x = 0; x < 100; ++x) {
      ASSERT_EQ(*back.Eval(x * 1000003), *h.Eval(x * 1000003));
    }
  }
  EXPECT_FALSE(PairwiseHash::FromJson({{"a", 1}, {"b", 0}, {"p", 7}, {"m", 4}})
                   .ok());
  EXPECT_FALSE(PairwiseHash::FromJson({{"a", 1}}).ok());
}

TEST(PairwiseHashTest, CollisionRateNearOneOverM) {
  const uint64_t m = 16;
  const uint64_t x = 123456789;
  const uint64_t y = 987654321;
  const int samples = 1'000'000;
  Stream rng(2024);
  int collisions = 0;
  for (int t = 0; t < samples; ++t) {
    const PairwiseHash h = PairwiseHash::Sample(m, rng);
    collisions += h.EvalUnchecked(x) == h.EvalUnchecked(y);
  }
  const double p = 1.0 / m;
  const double sigma = std::sqrt(p * (1 - p) / samples);
  EXPECT_LE(static_cast<double>(collisions) / samples, p + 4 * sigma);
}

// Critical values of chi-square at significance 1e-4 (scipy chi2.isf).
TEST(PairwiseHashTest, BucketsLookUniform) {
  struct Case {
    uint64_t m;
    double critical;
  };
  for (const Case c : {Case{16, 44.26322494417498}, Case{64, 113.50499285105357}}) {
    Stream rng(c.m);
    const PairwiseHash h = PairwiseHash::Sample(c.m, rng);
    std::vector<double> counts(c.m, 0.0);
    const int inputs = 100000;
    for (int x = 0; x < inputs; ++x) counts[h.EvalUnchecked(x)] += 1.0;
    const double expected = static_cast<double>(inputs) / c.m;
    double chi2 = 0.0;
    for (double o : counts) chi2 += (o - expected) * (o - expected) / expected;
    EXPECT_LT(chi2, c.critical) << "m=" << c.m;
  }
}

}  // namespace
}  // namespace hadaldp
