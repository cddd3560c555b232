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

#include "hadaldp/hadamard.h"

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "hadaldp/random.h"

namespace hadaldp {
namespace {

using Matrix = std::vector<std::vector<int>>;

// Sylvester recursion: H_1 = [1], H_2m = [[H, H], [H, -H]].
Matrix RecursiveHadamard(uint64_t m) {
  Matrix h = {{1}};
  for (uint64_t size = 1; size < m; size *= 2) {
    Matrix next(2 * size, std::vector<int>(2 * size));
    for (uint64_t i = 0; i < size; ++i) {
      for (uint64_t j = 0; j < size; ++j) {
        next[i][j] = h[i][j];
        next[i][j + size] = h[i][j];
        next[i + size][j] = h[i][j];
        next[i + size][j + size] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  return h;
}

std::vector<double> RandomIntegers(uint64_t m, Stream& rng) {
  std::vector<double> x(m);
  for (double& v : x) v = static_cast<double>(rng.Below(2001)) - 1000.0;
  return x;
}

TEST(HadamardDimTest, RejectsNonPowersOfTwo) {
  EXPECT_FALSE(HadamardDim::Create(0).ok());
  EXPECT_FALSE(HadamardDim::Create(3).ok());
  EXPECT_FALSE(HadamardDim::Create(12).ok());
  ASSERT_TRUE(HadamardDim::Create(1).ok());
  EXPECT_EQ(HadamardDim::Create(64)->log2(), 6);
}

TEST(HadamardDimTest, RoundsUp) {
  EXPECT_EQ(HadamardDim::ForDomain(1).size(), 1u);
  EXPECT_EQ(HadamardDim::ForDomain(5).size(), 8u);
  EXPECT_EQ(HadamardDim::ForDomain(8).size(), 8u);
  EXPECT_EQ(HadamardDim::AtLeast(100.0).size(), 128u);
  EXPECT_EQ(HadamardDim::AtLeast(0.3, 2).size(), 2u);
}

TEST(EntryTest, SmallSylvesterMatrices) {
  const int h2[2][2] = {{1, 1}, {1, -1}};
  const int h4[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  const HadamardDim d2 = *HadamardDim::Create(2);
  const HadamardDim d4 = *HadamardDim::Create(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_EQ(*Entry(d2, i, j), h2[i][j]);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(*Entry(d4, i, j), h4[i][j]);
  }
  EXPECT_EQ(*Entry(d4, 1, 1), -1);
}

TEST(EntryTest, MatchesRecursionUpTo256) {
  for (uint64_t m = 1; m <= 256; m *= 2) {
    const Matrix h = RecursiveHadamard(m);
    const HadamardDim dim = *HadamardDim::Create(m);
    for (uint64_t i = 0; i < m; ++i) {
      for (uint64_t j = 0; j < m; ++j) {
        ASSERT_EQ(*Entry(dim, i, j), h[i][j]) << m << " " << i << " " << j;
      }
    }
  }
  // 011 . 101 = 1, read from the recursive H_8.
  EXPECT_EQ(RecursiveHadamard(8)[3][5], -1);
  EXPECT_EQ(*Entry(*HadamardDim::Create(8), 3, 5), -1);
}

TEST(EntryTest, ZeroRowIsAllOnes) {
  const HadamardDim dim = *HadamardDim::Create(1024);
  for (uint64_t j = 0; j < 1024; ++j) EXPECT_EQ(*Entry(dim, 0, j), 1);
}

TEST(EntryTest, OutOfRangeIsRejected) {
  const HadamardDim dim = *HadamardDim::Create(4);
  EXPECT_EQ(Entry(dim, 4, 0).status().code(), absl::StatusCode::kOutOfRange);
  EXPECT_EQ(Entry(dim, 0, 7).status().code(), absl::StatusCode::kOutOfRange);
}

TEST(EntryTest, ColumnsOrthogonalAndSymmetric) {
  for (uint64_t m = 1; m <= 256; m *= 2) {
    for (uint64_t i = 0; i < m; ++i) {
      for (uint64_t j = 0; j < m; ++j) {
        ASSERT_EQ(EntryUnchecked(i, j), EntryUnchecked(j, i));
        if (i == j) continue;
        int dot = 0;
        for (uint64_t r = 0; r < m; ++r) {
          dot += EntryUnchecked(r, i) * EntryUnchecked(r, j);
        }
        ASSERT_EQ(dot, 0) << "m=" << m << " columns " << i << "," << j;
      }
    }
  }
}

TEST(FhtTest, BasisAndOnes) {
  EXPECT_EQ(*Fht(std::vector<double>{1, 0, 0, 0}),
            (std::vector<double>{1, 1, 1, 1}));
  EXPECT_EQ(*Fht(std::vector<double>{1, 1, 1, 1}),
            (std::vector<double>{4, 0, 0, 0}));
  EXPECT_EQ(*Fht(std::vector<double>{7}), (std::vector<double>{7}));
}

TEST(FhtTest, RejectsBadLengths) {
  EXPECT_FALSE(Fht(std::vector<double>{}).ok());
  EXPECT_FALSE(Fht(std::vector<double>{1, 2, 3}).ok());
  std::vector<double> six(6, 1.0);
  EXPECT_EQ(FhtInPlace(six).code(), absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(NaiveMultiply(*HadamardDim::Create(4), six).ok());
}

TEST(NaiveMultiplyTest, SmallCases) {
  EXPECT_EQ(*NaiveMultiply(*HadamardDim::Create(4), std::vector<double>{1, 0, 0, 0}),
            (std::vector<double>{1, 1, 1, 1}));
  const double a = 3.5;
  const double b = -1.25;
  EXPECT_EQ(*NaiveMultiply(*HadamardDim::Create(2), std::vector<double>{a, b}),
            (std::vector<double>{a + b, a - b}));
}

TEST(FhtTest, AgreesWithNaiveOnRandomIntegers) {
  Stream rng(20240611);
  for (uint64_t m = 1; m <= 4096; m *= 2) {
    const HadamardDim dim = *HadamardDim::Create(m);
    const int reps = m <= 256 ? 200 : 4;
    for (int t = 0; t < reps; ++t) {
      const std::vector<double> x = RandomIntegers(m, rng);
      ASSERT_EQ(*Fht(x), *NaiveMultiply(dim, x)) << "m=" << m;
    }
  }
}

TEST(FhtTest, InvolutionUpToScale) {
  Stream rng(7);
  for (uint64_t m = 1; m <= 4096; m *= 2) {
    std::vector<double> x = RandomIntegers(m, rng);
    std::vector<double> y = x;
    ASSERT_TRUE(FhtInPlace(y).ok());
    ASSERT_TRUE(FhtInPlace(y).ok());
    for (uint64_t i = 0; i < m; ++i) {
      ASSERT_EQ(y[i], static_cast<double>(m) * x[i]);
    }
  }
}

TEST(FhtTest, LinearOnIntegers) {
  Stream rng(99);
  for (int t = 0; t < 50; ++t) {
    const uint64_t m = uint64_t{1} << rng.Below(11);
    const std::vector<double> x = RandomIntegers(m, rng);
    const std::vector<double> y = RandomIntegers(m, rng);
    const double alpha = static_cast<double>(rng.Below(21)) - 10.0;
    const double beta = static_cast<double>(rng.Below(21)) - 10.0;
    std::vector<double> combo(m);
    for (uint64_t i = 0; i < m; ++i) combo[i] = alpha * x[i] + beta * y[i];
    const std::vector<double> fx = *Fht(x);
    const std::vector<double> fy = *Fht(y);
    const std::vector<double> fc = *Fht(combo);
    for (uint64_t i = 0; i < m; ++i) {
      ASSERT_EQ(fc[i], alpha * fx[i] + beta * fy[i]);
    }
  }
}

}  // namespace
}  // namespace hadaldp
