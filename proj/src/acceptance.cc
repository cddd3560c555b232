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

#include "hadaldp/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "absl/strings/str_format.h"
#include "hadaldp/dataset.h"
#include "hadaldp/exact.h"
#include "hadaldp/experiment.h"
#include "hadaldp/hada_heavy.h"
#include "hadaldp/hada_oracle.h"
#include "hadaldp/hadamard.h"
#include "hadaldp/hrr_oracle.h"
#include "hadaldp/partitioning.h"
#include "hadaldp/prefix_code.h"
#include "hadaldp/random.h"
#include "hadaldp/randomizer.h"

namespace hadaldp {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool passed;
  std::string detail;
};

// Wall-clock budget per criterion, in seconds.
constexpr double kBudget[kCriterionCount + 1] = {0,   10,  1,   5,    60,   300,
                                                 600, 600, 30,  1200, 5,    10,
                                                 600};

constexpr const char* kNames[kCriterionCount + 1] = {
    "",
    "transform correctness",
    "entry formula vs recursion",
    "epsilon-LDP exactness",
    "HRR unbiasedness",
    "HRR tail bound",
    "HadaOracle sqrt(n) scaling",
    "median good-set property",
    "search determinism with mock oracles",
    "end-to-end heavy hitters",
    "partitioning invariants",
    "prefix monotonicity",
    "performance sanity",
};

std::vector<double> RandomIntegers(uint64_t m, Stream& rng) {
  std::vector<double> x(m);
  for (double& v : x) v = static_cast<double>(rng.Below(2001)) - 1000.0;
  return x;
}

std::vector<uint64_t> UniformUsers(uint64_t n, uint64_t d, Stream& rng) {
  std::vector<uint64_t> users(n);
  for (uint64_t& u : users) u = rng.Below(d);
  return users;
}

Verdict TransformCorrectness(const AcceptanceOptions& o) {
  constexpr int kVectors = 200;
  Stream rng = DeriveStream(o.seed, StreamPurpose::kDataset, 1);
  uint64_t checked = 0;
  for (uint64_t m = 1; m <= 4096; m *= 2) {
    const HadamardDim dim = *HadamardDim::Create(m);
    for (int t = 0; t < kVectors; ++t) {
      const std::vector<double> x = RandomIntegers(m, rng);
      const std::vector<double> fast = *Fht(x);
      if (fast != *NaiveMultiply(dim, x)) {
        return {false, absl::StrFormat("fht != naive at m=%d vector %d", m, t)};
      }
      std::vector<double> twice = *Fht(fast);
      for (uint64_t i = 0; i < m; ++i) {
        if (twice[i] != static_cast<double>(m) * x[i]) {
          return {false, absl::StrFormat("H^2 x != m x at m=%d", m)};
        }
      }
      ++checked;
    }
  }
  return {true, absl::StrFormat("%d vectors over m=1..4096 exact", checked)};
}

Verdict EntryVsRecursion(const AcceptanceOptions&) {
  std::vector<std::vector<int>> h = {{1}};
  uint64_t entries = 0;
  for (uint64_t size = 1; size <= 256; size *= 2) {
    for (uint64_t i = 0; i < size; ++i) {
      for (uint64_t j = 0; j < size; ++j) {
        if (EntryUnchecked(i, j) != h[i][j]) {
          return {false,
                  absl::StrFormat("mismatch at m=%d (%d,%d)", size, i, j)};
        }
        ++entries;
      }
    }
    if (size == 256) break;
    std::vector<std::vector<int>> next(2 * size, std::vector<int>(2 * size));
    for (uint64_t i = 0; i < size; ++i) {
      for (uint64_t j = 0; j < size; ++j) {
        next[i][j] = next[i][j + size] = next[i + size][j] = h[i][j];
        next[i + size][j + size] = -h[i][j];
      }
    }
    h = std::move(next);
  }
  const int h2[2][2] = {{1, 1}, {1, -1}};
  const int h4[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if ((i < 2 && j < 2 &&
           *Entry(*HadamardDim::Create(2), i, j) != h2[i][j]) ||
          *Entry(*HadamardDim::Create(4), i, j) != h4[i][j]) {
        return {false, "small matrix example differs"};
      }
    }
  }
  return {true, absl::StrFormat("%d entries for m<=256, H2 and H4 match",
                                entries)};
}

Verdict LdpExactness(const AcceptanceOptions& o) {
  double worst_gap = -1.0;  // max over cases of ratio - e^eps
  uint64_t cases = 0;
  Stream rng = DeriveStream(o.seed, StreamPurpose::kHashFamily, 3);
  for (double eps : {0.1, 0.5, 1.0}) {
    const PrivacyBudget b = *PrivacyBudget::Create(eps);
    const double limit = std::exp(eps) + 1e-12;
    for (uint64_t m = 1; m <= 16; m *= 2) {
      const HadamardDim dim = *HadamardDim::Create(m);
      const PairwiseHash h = PairwiseHash::Sample(m, rng);
      const PrefixCode code = *PrefixCode::Create(2, 2, 16);
      // Each client maps (row, element) to the column it randomizes.
      const std::vector<std::function<uint64_t(uint64_t)>> columns = {
          [&](uint64_t v) { return *HrrColumn(dim, v); },
          [&](uint64_t v) { return *HadaOracleColumn(h, v); },
          [&](uint64_t v) { return *HadaHeavyColumn(code, 1, h, v); },
          [&](uint64_t v) { return *HadaHeavyColumn(code, 2, h, v); },
      };
      for (size_t client = 0; client < columns.size(); ++client) {
        const uint64_t domain = client == 0 ? m : 16;
        for (uint64_t r = 0; r < m; ++r) {
          for (uint64_t v = 0; v < domain; ++v) {
            for (uint64_t w = 0; w < domain; ++w) {
              const ReportLaw a = RandomizerLaw(r, columns[client](v), b);
              const ReportLaw c = RandomizerLaw(r, columns[client](w), b);
              const double ratio = std::max(a.p_plus / c.p_plus,
                                            a.p_minus() / c.p_minus());
              if (ratio > limit) {
                return {false, absl::StrFormat(
                                   "client %d eps=%g m=%d ratio %.17g", client,
                                   eps, m, ratio)};
              }
              worst_gap = std::max(worst_gap, ratio - std::exp(eps));
              ++cases;
            }
          }
        }
      }
    }
  }
  return {true, absl::StrFormat("%d (row,v,v') cases, max ratio - e^eps = %.3g",
                                cases, worst_gap)};
}

Verdict HrrUnbiasedness(const AcceptanceOptions& o) {
  constexpr uint64_t kN = 10000;
  constexpr int kBuilds = 200;
  const PrivacyBudget b = *PrivacyBudget::Create(1.0);
  const std::vector<uint64_t> users(kN, 0);
  double sum = 0.0;
  for (int t = 0; t < kBuilds; ++t) {
    sum += *BuildHrr(users, 1024, b,
                     DeriveSeed(o.seed, StreamPurpose::kTrial, 4, t))
                ->Query(0);
  }
  const double mean = sum / kBuilds;
  const double tol = 3 * b.debias_scale() * std::sqrt(double{kN} / kBuilds);
  return {std::abs(mean - kN) <= tol,
          absl::StrFormat("mean %.2f vs n=%d, tolerance %.2f", mean, kN, tol)};
}

Verdict HrrTailBound(const AcceptanceOptions& o) {
  constexpr uint64_t kN = 100000;
  constexpr uint64_t kD = 1024;
  constexpr int kTrials = 200;
  constexpr int kAllowed = 3;
  const double beta_prime = 0.01;
  const PrivacyBudget b = *PrivacyBudget::Create(1.0);
  const double bound =
      b.debias_scale() * std::sqrt(2.0 * kN * std::log(2.0 / beta_prime));
  const Dataset ds = *GenZipf(kN, kD, 1.1,
                              DeriveSeed(o.seed, StreamPurpose::kDataset, 5));
  const FrequencyMap truth = ExactFrequency(ds.elements);
  Stream pick = DeriveStream(o.seed, StreamPurpose::kQuerySample, 5);
  int exceed = 0;
  double worst = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const HrrState s = *BuildHrr(
        ds.elements, kD, b, DeriveSeed(o.seed, StreamPurpose::kTrial, 5, t));
    const uint64_t v = pick.Below(kD);
    const double err = std::abs(*s.Query(v) - double(CountOf(truth, v)));
    worst = std::max(worst, err);
    exceed += err > bound;
  }
  return {exceed <= kAllowed,
          absl::StrFormat("%d/%d trials exceed %.1f (max error %.1f)", exceed,
                          kTrials, bound, worst)};
}

// Absolute errors of `queries` sampled present elements, pooled over trials.
std::vector<double> OracleErrors(uint64_t n, const OracleParams& params,
                                 int trials, uint64_t seed) {
  constexpr uint64_t kD = uint64_t{1} << 32;
  constexpr uint64_t kQueries = 50;
  std::vector<double> errors;
  for (int t = 0; t < trials; ++t) {
    const Dataset ds =
        *GenZipf(n, kD, 1.1, DeriveSeed(seed, StreamPurpose::kDataset, n, t));
    const FrequencyMap truth = ExactFrequency(ds.elements);
    std::vector<uint64_t> distinct;
    for (const auto& [v, c] : truth) distinct.push_back(v);
    std::sort(distinct.begin(), distinct.end());
    Stream pick = DeriveStream(seed, StreamPurpose::kQuerySample, n, t);
    for (uint64_t i = 0; i < kQueries && i < distinct.size(); ++i) {
      std::swap(distinct[i], distinct[i + pick.Below(distinct.size() - i)]);
    }
    const OracleState s = *ConstructOracle(
        ds.elements, kD, params, DeriveSeed(seed, StreamPurpose::kTrial, n, t));
    for (uint64_t i = 0; i < kQueries && i < distinct.size(); ++i) {
      errors.push_back(std::abs(s.QueryUnchecked(distinct[i]) -
                                double(CountOf(truth, distinct[i]))));
    }
  }
  return errors;
}

Verdict SqrtScaling(const AcceptanceOptions& o) {
  const OracleParams p = OracleParams::ForProfile(Profile::kPractical, 1.0, 0.05);
  const double c = Quantile(OracleErrors(25000, p, 20, o.seed), 0.95);
  const double big = Quantile(OracleErrors(100000, p, 20, o.seed), 0.95);
  const double ratio = big / c;
  return {ratio >= 1.4 && ratio <= 2.6,
          absl::StrFormat("p95 %.1f at n=25000, %.1f at n=100000, ratio %.3f "
                          "(accept [1.4, 2.6])",
                          c, big, ratio)};
}

Verdict MedianGoodSet(const AcceptanceOptions& o) {
  constexpr uint64_t kN = 100000;
  constexpr uint64_t kD = uint64_t{1} << 32;
  constexpr uint64_t kPlanted = 0xC0FFEE;
  constexpr int kCalibration = 20;
  constexpr int kTrials = 50;
  constexpr int kRequired = 45;
  const OracleParams p = OracleParams::ForProfile(Profile::kPractical, 1.0, 0.05);
  const double unit = TheoreticalErrorBound(p, kN, 1.0);
  auto dataset = [&](uint64_t tag, int t) {
    return *GenPlanted(kN, kD, {{kPlanted, kN / 20}},
                       DeriveSeed(o.seed, StreamPurpose::kDataset, tag, t));
  };

  std::vector<double> normalized;
  for (int t = 0; t < kCalibration; ++t) {
    const Dataset ds = dataset(70, t);
    const double f = double(CountOf(ExactFrequency(ds.elements), kPlanted));
    const OracleState s = *ConstructOracle(
        ds.elements, kD, p, DeriveSeed(o.seed, StreamPurpose::kTrial, 70, t));
    for (double row : s.RowEstimates(kPlanted)) {
      normalized.push_back(std::abs(row - f) / unit);
    }
  }
  const double c = Quantile(normalized, 7.0 / 8.0);
  const double bound = c * unit;

  int good_trials = 0;
  int median_failures = 0;
  for (int t = 0; t < kTrials; ++t) {
    const Dataset ds = dataset(71, t);
    const double f = double(CountOf(ExactFrequency(ds.elements), kPlanted));
    const OracleState s = *ConstructOracle(
        ds.elements, kD, p, DeriveSeed(o.seed, StreamPurpose::kTrial, 71, t));
    const std::vector<double> rows = s.RowEstimates(kPlanted);
    const auto good = std::count_if(rows.begin(), rows.end(), [&](double r) {
      return std::abs(r - f) <= bound;
    });
    if (2 * static_cast<uint64_t>(good) > s.k()) {
      ++good_trials;
      median_failures += std::abs(s.QueryUnchecked(kPlanted) - f) > bound;
    }
  }
  return {good_trials >= kRequired && median_failures == 0,
          absl::StrFormat("c=%.3f (bound %.1f); >k/2 good rows in %d/%d trials "
                          "(need %d); median outside bound in %d of them",
                          c, bound, good_trials, kTrials, kRequired,
                          median_failures)};
}

Verdict SearchDeterminism(const AcceptanceOptions& o) {
  constexpr uint64_t kN = 100000;
  constexpr uint64_t kD = uint64_t{1} << 32;
  constexpr double kLambda = 500.0;
  constexpr int kInstances = 50;
  uint64_t heavy_total = 0;
  for (int t = 0; t < kInstances; ++t) {
    Stream rng = DeriveStream(o.seed, StreamPurpose::kDataset, 8, t);
    // Counts straddle lambda and 3 lambda so every class is populated.
    std::vector<std::pair<uint64_t, uint64_t>> planted;
    std::set<uint64_t> used;
    const uint64_t count = 5 + rng.Below(16);
    while (planted.size() < count) {
      const uint64_t v = rng.Below(kD);
      if (!used.insert(v).second) continue;
      planted.emplace_back(v, 100 + rng.Below(3500));
    }
    const Dataset ds = *GenPlanted(kN, kD, planted, rng.Next());
    const PrefixCode code = *PrefixCode::ForPopulation(kN, kD);
    std::vector<FrequencyMap> levels;
    for (int tau = 0; tau <= code.depth(); ++tau) {
      levels.push_back(ExactPrefixFrequency(ds.elements, code, tau));
    }
    const std::vector<uint64_t> heavy =
        ExactHeavyHitters(ds.elements, 3 * kLambda);
    const std::vector<uint64_t> light_ok =
        ExactHeavyHitters(ds.elements, kLambda);
    heavy_total += heavy.size();
    for (int mode = 0; mode < 2; ++mode) {
      const bool adversarial = mode == 1;
      const SearchResult r = SearchWithOracle(
          [&](int tau, uint64_t prefix) {
            const double f = double(CountOf(levels[tau], prefix));
            if (!adversarial) return f;
            if (f >= 3 * kLambda) return f - kLambda;
            if (f < kLambda) return f + kLambda;
            return (Mix64(prefix ^ tau) & 1) ? f + kLambda : f - kLambda;
          },
          code, kLambda, {kN, 0});
      const std::vector<uint64_t>& found = r.final_set();
      for (uint64_t v : heavy) {
        if (!std::binary_search(found.begin(), found.end(), v)) {
          return {false, absl::StrFormat("instance %d mode %d missed %d", t,
                                         mode, v)};
        }
      }
      for (uint64_t v : found) {
        if (!std::binary_search(light_ok.begin(), light_ok.end(), v)) {
          return {false, absl::StrFormat(
                             "instance %d mode %d returned %d with f < lambda",
                             t, mode, v)};
        }
      }
    }
  }
  return {true, absl::StrFormat("%d instances x {exact, +-lambda}: all %d "
                                "elements with f >= 3 lambda found, none with "
                                "f < lambda returned",
                                kInstances, heavy_total)};
}

Verdict EndToEndHeavy(const AcceptanceOptions& o) {
  constexpr uint64_t kN = 100000;
  constexpr uint64_t kD = uint64_t{1} << 32;
  constexpr int kPlanted = 10;
  constexpr int kTrials = 20;
  constexpr int kRequired = 18;
  constexpr int kCalibration = 10;
  HeavyParams params = HeavyParams::ForProfile(Profile::kPractical, 1.0, 0.1);
  params.c_lambda = 1.0;
  params.c_lambda = 0.02 * kN / (3.0 * params.Lambda(kN, kD));
  const double lambda = params.Lambda(kN, kD);
  // The search set is bounded by 2n/lambda when level estimates are within
  // lambda; twice that keeps runs finite when they are not.
  params.max_search_set = static_cast<uint64_t>(std::ceil(4.0 * kN / lambda));

  auto dataset = [&](uint64_t tag, int t) {
    Stream rng = DeriveStream(o.seed, StreamPurpose::kDataset, tag, t);
    std::vector<std::pair<uint64_t, uint64_t>> planted;
    std::set<uint64_t> used;
    while (planted.size() < kPlanted) {
      const uint64_t v = rng.Below(kD);
      if (!used.insert(v).second) continue;
      planted.emplace_back(
          v, static_cast<uint64_t>(std::ceil(3 * lambda)) + 50 * planted.size());
    }
    return *GenPlanted(kN, kD, planted, rng.Next());
  };

  // Refinement bound: largest normalized refinement-oracle error over the
  // planted elements and 1000 random domain elements per calibration run, so
  // it holds simultaneously for a search-set sized batch of queries.
  const PrefixCode code = *PrefixCode::ForPopulation(kN, kD);
  OracleParams refine = params.LevelOracleParams(kN, code.depth());
  refine.eps = params.eps / 2;
  const double unit = TheoreticalErrorBound(refine, kN, 1.0);
  double worst = 0.0;
  for (int t = 0; t < kCalibration; ++t) {
    const Dataset ds = dataset(90, t);
    const FrequencyMap truth = ExactFrequency(ds.elements);
    const OracleState s = *ConstructOracle(
        ds.elements, kD, refine, DeriveSeed(o.seed, StreamPurpose::kTrial, 90, t));
    std::vector<uint64_t> probes = HeavyHittersOf(truth, 2.0);
    Stream pick = DeriveStream(o.seed, StreamPurpose::kQuerySample, 90, t);
    for (int i = 0; i < 1000; ++i) probes.push_back(pick.Below(kD));
    for (uint64_t v : probes) {
      worst = std::max(worst, std::abs(s.QueryUnchecked(v) -
                                       double(CountOf(truth, v))) / unit);
    }
  }
  const double bound = worst * unit;

  int recall_ok = 0;
  int no_false_ok = 0;
  int estimates_ok = 0;
  double recall_sum = 0.0;
  uint64_t truncated = 0;
  for (int t = 0; t < kTrials; ++t) {
    const Dataset ds = dataset(91, t);
    const FrequencyMap truth = ExactFrequency(ds.elements);
    const HeavyRunResult run = *RunHeavyHitters(
        ds.elements, kD, params, DeriveSeed(o.seed, StreamPurpose::kTrial, 91, t));
    std::set<uint64_t> returned;
    bool false_pos = false;
    bool within = true;
    for (const HistogramEntry& e : run.histogram.entries) {
      const double f = double(CountOf(truth, e.element));
      returned.insert(e.element);
      false_pos |= f < lambda;
      within &= std::abs(e.estimate - f) <= bound;
    }
    const std::vector<uint64_t> heavy = HeavyHittersOf(truth, 3 * lambda);
    uint64_t hit = 0;
    for (uint64_t v : heavy) hit += returned.contains(v);
    const double recall = heavy.empty() ? 1.0 : double(hit) / heavy.size();
    recall_sum += recall;
    recall_ok += recall == 1.0;
    no_false_ok += !false_pos;
    estimates_ok += within;
    truncated += run.truncated;
  }
  return {recall_ok >= kRequired && no_false_ok >= kRequired &&
              estimates_ok >= kRequired,
          absl::StrFormat(
              "lambda=%.1f (C_lambda=%.4f); recall=1 in %d/%d (mean recall "
              "%.3f); no f<lambda in %d/%d; estimates within %.1f in %d/%d; "
              "search capped at %d in %d trials",
              lambda, params.c_lambda, recall_ok, kTrials,
              recall_sum / kTrials, no_false_ok, kTrials, bound, estimates_ok,
              kTrials, params.max_search_set, truncated)};
}

Verdict PartitionInvariants(const AcceptanceOptions& o) {
  Stream meta = DeriveStream(o.seed, StreamPurpose::kPartition, 10);
  for (int t = 0; t < 1000; ++t) {
    const uint64_t n = meta.Below(5000);
    const uint64_t k = 1 + meta.Below(100);
    const uint64_t seed = meta.Next();
    for (PartitionScheme scheme :
         {PartitionScheme::kIndependent, PartitionScheme::kPermutation}) {
      Stream rng(seed);
      const Partition p = *MakePartition(scheme, n, k, rng);
      std::vector<uint64_t> counts(k, 0);
      if (p.assignment.size() != n) return {false, "assignment size"};
      for (uint32_t j : p.assignment) {
        if (j >= k) return {false, "subset index out of range"};
        ++counts[j];
      }
      if (counts != p.subset_sizes) {
        return {false, absl::StrFormat("sizes disagree (n=%d k=%d)", n, k)};
      }
      if (scheme == PartitionScheme::kPermutation) {
        const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
        if (*hi - *lo > 1 || (n % k == 0 && *hi != *lo)) {
          return {false, absl::StrFormat("spread %d at n=%d k=%d", *hi - *lo,
                                         n, k)};
        }
      }
    }
  }
  return {true, "1000 (n,k,seed) triples: cover, disjoint, permutation "
                "spread <= 1 and 0 when k | n"};
}

Verdict PrefixMonotonicity(const AcceptanceOptions& o) {
  Stream meta = DeriveStream(o.seed, StreamPurpose::kDataset, 11);
  uint64_t checks = 0;
  for (int t = 0; t < 100; ++t) {
    const uint64_t n = 4 + meta.Below(20000);
    const uint64_t d = 2 + meta.Below(t % 2 ? uint64_t{1} << 32 : 5000);
    const ZipfSampler zipf =
        *ZipfSampler::Create(std::min<uint64_t>(d, 100000), 0.8 + 0.1 * (t % 7));
    const Dataset ds = t % 3 == 0 ? *GenPlanted(n, d, {}, meta.Next())
                                  : *GenZipf(n, d, zipf, meta.Next());
    const PrefixCode code = *PrefixCode::ForPopulation(n, d);
    std::vector<FrequencyMap> levels;
    for (int tau = 0; tau <= code.depth(); ++tau) {
      levels.push_back(ExactPrefixFrequency(ds.elements, code, tau));
    }
    const FrequencyMap exact = ExactFrequency(ds.elements);
    if (levels.back() != exact) return {false, "level L differs from f"};
    for (const auto& [v, f] : exact) {
      for (int tau = 0; tau < code.depth(); ++tau) {
        if (CountOf(levels[tau], code.EncodePrefixUnchecked(v, tau)) <
            CountOf(levels[tau + 1], code.EncodePrefixUnchecked(v, tau + 1))) {
          return {false, absl::StrFormat("dataset %d element %d level %d", t,
                                         v, tau)};
        }
        ++checks;
      }
    }
  }
  return {true, absl::StrFormat("100 datasets, %d (element, level) pairs "
                                "monotone", checks)};
}

double MedianSeconds(const std::function<void()>& fn, int runs) {
  std::vector<double> times;
  for (int i = 0; i < runs; ++i) {
    const Clock::time_point start = Clock::now();
    fn();
    times.push_back(SecondsSince(start));
  }
  return Quantile(times, 0.5);
}

Verdict Performance(const AcceptanceOptions& o) {
  const OracleParams p = OracleParams::ForProfile(Profile::kTheory, 1.0, 0.05);
  Stream rng = DeriveStream(o.seed, StreamPurpose::kDataset, 12);
  const std::vector<uint64_t> small = UniformUsers(100000, uint64_t{1} << 32, rng);
  const std::vector<uint64_t> large = UniformUsers(400000, uint64_t{1} << 32, rng);
  uint64_t oracle_bytes = 0;
  const double t_small = MedianSeconds(
      [&] { (void)ConstructOracle(small, uint64_t{1} << 32, p, 1); }, 3);
  const double t_large = MedianSeconds(
      [&] {
        oracle_bytes =
            ConstructOracle(large, uint64_t{1} << 32, p, 1)->MemoryBytes();
      },
      3);
  const double oracle_ratio = t_large / t_small;

  const PrivacyBudget b = *PrivacyBudget::Create(1.0);
  const std::vector<uint64_t> hrr_users = UniformUsers(10000, 1 << 20, rng);
  uint64_t mem_small = 0;
  uint64_t mem_large = 0;
  const double h_small = MedianSeconds(
      [&] { mem_small = BuildHrr(hrr_users, 1 << 20, b, 1)->MemoryBytes(); }, 3);
  const double h_large = MedianSeconds(
      [&] { mem_large = BuildHrr(hrr_users, 1 << 24, b, 1)->MemoryBytes(); }, 3);
  const double hrr_ratio = h_large / h_small;
  return {oracle_ratio <= 5.0 && mem_large == 16 * mem_small &&
              hrr_ratio >= 4.0,
          absl::StrFormat(
              "HadaOracle build %.3fs at n=1e5, %.3fs at 4e5 (x%.2f, accept "
              "<= 5; %.1f MiB); HRR d=2^20 %.3fs %.0f MiB, d=2^24 %.3fs %.0f "
              "MiB (time x%.1f, accept >= 4)",
              t_small, t_large, oracle_ratio, oracle_bytes / 1048576.0,
              h_small, mem_small / 1048576.0, h_large, mem_large / 1048576.0,
              hrr_ratio)};
}

}  // namespace

std::string_view CriterionName(int id) {
  return id >= 1 && id <= kCriterionCount ? kNames[id] : "unknown";
}

CriterionResult RunCriterion(int id, const AcceptanceOptions& options) {
  CriterionResult result;
  result.id = id;
  result.name = std::string(CriterionName(id));
  using Fn = Verdict (*)(const AcceptanceOptions&);
  static constexpr Fn kFns[kCriterionCount + 1] = {
      nullptr,           TransformCorrectness, EntryVsRecursion,
      LdpExactness,      HrrUnbiasedness,      HrrTailBound,
      SqrtScaling,       MedianGoodSet,        SearchDeterminism,
      EndToEndHeavy,     PartitionInvariants,  PrefixMonotonicity,
      Performance};
  if (id < 1 || id > kCriterionCount) {
    result.detail = "no such criterion";
    return result;
  }
  const Clock::time_point start = Clock::now();
  Verdict v = kFns[id](options);
  result.seconds = SecondsSince(start);
  result.passed = v.passed;
  result.detail = std::move(v.detail);
  if (result.seconds > kBudget[id]) {
    result.passed = false;
    absl::StrAppendFormat(&result.detail, "; exceeded %.0fs budget",
                          kBudget[id]);
  }
  return result;
}

std::string FormatResult(const CriterionResult& r) {
  return absl::StrFormat("%s C%02d %s: %s (%.2fs)", r.passed ? "PASS" : "FAIL",
                         r.id, r.name, r.detail, r.seconds);
}

}  // namespace hadaldp
