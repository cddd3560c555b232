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

#include "hadaldp/dataset.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hadaldp/exact.h"

namespace hadaldp {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

TEST(ZipfSamplerTest, ProbabilitiesMatchPowerLaw) {
  const ZipfSampler z = *ZipfSampler::Create(1000, 1.1);
  double norm = 0.0;
  for (int r = 1; r <= 1000; ++r) norm += std::pow(r, -1.1);
  for (uint64_t r : {1, 2, 10, 1000}) {
    EXPECT_NEAR(z.RankProbability(r), std::pow(r, -1.1) / norm, 1e-12);
  }
  EXPECT_EQ(z.RankProbability(0), 0.0);
  EXPECT_EQ(z.RankProbability(1001), 0.0);
  EXPECT_EQ(z.RankFor(0.0), 1u);
  EXPECT_EQ(z.RankFor(0.999999999999), 1000u);
  EXPECT_FALSE(ZipfSampler::Create(0, 1.1).ok());
  EXPECT_FALSE(ZipfSampler::Create(10, 0.0).ok());
}

TEST(GenZipfTest, EmpiricalRankFrequencies) {
  const uint64_t n = 200000;
  const uint64_t d = 5000;
  const Dataset ds = *GenZipf(n, d, 1.1, 7);
  ASSERT_EQ(ds.n(), n);
  EXPECT_EQ(ds.d, d);
  const ZipfSampler z = *ZipfSampler::Create(d, 1.1);
  const FrequencyMap freq = ExactFrequency(ds.elements);
  for (uint64_t rank : {1, 2, 3, 10, 50}) {
    const double p = z.RankProbability(rank);
    const double got =
        static_cast<double>(CountOf(freq, ZipfRankElement(rank, d, 7))) / n;
    EXPECT_NEAR(got, p, 5 * std::sqrt(p * (1 - p) / n)) << "rank " << rank;
  }
}

TEST(GenZipfTest, RankMappingIsABijection) {
  const uint64_t d = 1000;
  std::vector<bool> hit(d, false);
  for (uint64_t r = 1; r <= d; ++r) {
    const uint64_t e = ZipfRankElement(r, d, 99);
    ASSERT_LT(e, d);
    ASSERT_FALSE(hit[e]);
    hit[e] = true;
  }
}

TEST(GenZipfTest, LargeDomainAndDeterminism) {
  const uint64_t d = uint64_t{1} << 32;
  const Dataset a = *GenZipf(1000, d, 1.1, 3);
  const Dataset b = *GenZipf(1000, d, 1.1, 3);
  EXPECT_EQ(a.elements, b.elements);
  for (uint64_t e : a.elements) EXPECT_LT(e, d);
  EXPECT_NE(GenZipf(1000, d, 1.1, 4)->elements, a.elements);
  EXPECT_EQ(GenZipf(10, 1, 1.1, 3)->elements, std::vector<uint64_t>(10, 0));
  EXPECT_FALSE(GenZipf(10, 0, 1.1, 3).ok());
}

TEST(GenPlantedTest, PlantsExactCounts) {
  const Dataset ds = *GenPlanted(10000, uint64_t{1} << 40,
                                 {{5, 2000}, {123456789012, 700}}, 1);
  const FrequencyMap freq = ExactFrequency(ds.elements);
  EXPECT_GE(CountOf(freq, 5), 2000u);
  EXPECT_LE(CountOf(freq, 5), 2001u);
  EXPECT_GE(CountOf(freq, 123456789012), 700u);
  EXPECT_LE(CountOf(freq, 123456789012), 701u);
  EXPECT_EQ(ds.n(), 10000u);
}

TEST(GenPlantedTest, IsShuffled) {
  const Dataset ds = *GenPlanted(1000, 1 << 20, {{3, 500}}, 2);
  int in_first_half = 0;
  for (int i = 0; i < 500; ++i) in_first_half += ds.elements[i] == 3;
  EXPECT_GT(in_first_half, 200);
  EXPECT_LT(in_first_half, 300);
}

TEST(GenPlantedTest, RejectsBadSpecs) {
  EXPECT_FALSE(GenPlanted(10, 100, {{100, 1}}, 1).ok());
  EXPECT_FALSE(GenPlanted(10, 100, {{1, 5}, {1, 2}}, 1).ok());
  EXPECT_FALSE(GenPlanted(10, 100, {{1, 6}, {2, 5}}, 1).ok());
  EXPECT_TRUE(GenPlanted(10, 100, {{1, 6}, {2, 4}}, 1).ok());
}

TEST(DatasetIoTest, BinaryRoundTrip) {
  Dataset ds;
  ds.d = uint64_t{1} << 33;
  ds.elements = {0, 1, (uint64_t{1} << 33) - 1, 77};
  const std::string bytes = EncodeBinary(ds);
  EXPECT_EQ(bytes.size(), 24 + 4 * 8u);
  EXPECT_EQ(bytes.substr(0, 4), "LDPD");
  const Dataset back = *DecodeBinary(bytes);
  EXPECT_EQ(back.d, ds.d);
  EXPECT_EQ(back.elements, ds.elements);
  EXPECT_EQ(DecodeBinary(bytes.substr(0, bytes.size() - 3)).status().code(),
            absl::StatusCode::kDataLoss);
  std::string bad = bytes;
  bad[24] = static_cast<char>(0xFF);
  bad[31] = static_cast<char>(0xFF);
  EXPECT_FALSE(DecodeBinary(bad).ok());
}

TEST(DatasetIoTest, TextRoundTripAndInference) {
  Dataset ds;
  ds.d = 50;
  ds.elements = {3, 49, 0};
  EXPECT_EQ(EncodeText(ds), "# d=50\n3\n49\n0\n");
  const Dataset back = *DecodeText(EncodeText(ds));
  EXPECT_EQ(back.d, 50u);
  EXPECT_EQ(back.elements, ds.elements);
  const Dataset inferred = *DecodeText("  4\n\n9\r\n2\n");
  EXPECT_EQ(inferred.d, 10u);
  EXPECT_EQ(inferred.elements, (std::vector<uint64_t>{4, 9, 2}));
  EXPECT_FALSE(DecodeText("# d=5\n7\n").ok());
  EXPECT_FALSE(DecodeText("12\nabc\n").ok());
}

TEST(DatasetIoTest, FilesDetectFormat) {
  const Dataset ds = *GenZipf(300, 1000, 1.1, 1);
  const std::string bin = TempPath("ds.bin");
  const std::string txt = TempPath("ds.txt");
  ASSERT_TRUE(WriteDataset(ds, bin, false).ok());
  ASSERT_TRUE(WriteDataset(ds, txt, true).ok());
  EXPECT_EQ(ReadDataset(bin)->elements, ds.elements);
  EXPECT_EQ(ReadDataset(txt)->elements, ds.elements);
  EXPECT_EQ(ReadDataset(txt)->d, 1000u);
  EXPECT_FALSE(ReadDataset(TempPath("missing.bin")).ok());
  std::remove(bin.c_str());
  std::remove(txt.c_str());
}

}  // namespace
}  // namespace hadaldp
