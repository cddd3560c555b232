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

#include "hadaldp/hada_heavy.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hadaldp/random.h"

namespace hadaldp {
namespace {

void SortHistogram(std::vector<HistogramEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const HistogramEntry& x, const HistogramEntry& y) {
              if (x.estimate != y.estimate) return x.estimate > y.estimate;
              return x.element < y.element;
            });
}

}  // namespace

HeavyParams HeavyParams::ForProfile(Profile profile, double eps, double beta) {
  const OracleParams oracle = OracleParams::ForProfile(profile, eps, 0.5);
  HeavyParams p;
  p.eps = eps;
  p.beta = beta;
  p.c_k = oracle.c_k;
  p.c_m = oracle.c_m;
  return p;
}

absl::Status HeavyParams::Validate() const {
  if (absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(eps); !b.ok()) {
    return b.status();
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  if (!(c_lambda > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("C_lambda must be positive, got ", c_lambda));
  }
  OracleParams probe;
  probe.eps = eps;
  probe.beta_prime = 0.5;
  probe.c_k = c_k;
  probe.c_m = c_m;
  return probe.Validate();
}

double HeavyParams::Lambda(uint64_t n, uint64_t d) const {
  const double nn = static_cast<double>(n);
  return c_lambda / eps *
         std::sqrt(nn * std::log2(static_cast<double>(d)) *
                   std::log(nn / beta) / std::log(nn));
}

double HeavyParams::LevelBetaPrime(uint64_t n, int depth) const {
  return beta / (static_cast<double>(n) * depth);
}

OracleParams HeavyParams::LevelOracleParams(uint64_t n, int depth) const {
  OracleParams p;
  p.eps = eps;
  p.beta_prime = LevelBetaPrime(n, depth);
  p.c_k = c_k;
  p.c_m = c_m;
  p.scheme = scheme;
  return p;
}

uint64_t SearchResult::total_queried() const {
  return std::accumulate(queried_per_level.begin(), queried_per_level.end(),
                         uint64_t{0});
}

SearchResult SearchWithOracle(const LevelOracleFn& oracle,
                              const PrefixCode& code, double lambda,
                              const SearchOptions& options) {
  SearchResult result;
  result.levels.push_back({0});
  const double threshold = 2.0 * lambda;
  const uint64_t fanout = code.branching();
  for (int tau = 1; tau <= code.depth(); ++tau) {
    const uint64_t level_size = code.LevelSize(tau);
    std::vector<std::pair<uint64_t, double>> kept;
    uint64_t queried = 0;
    for (uint64_t parent : result.levels.back()) {
      const uint64_t first = parent << code.digit_bits();
      for (uint64_t digit = 0; digit < fanout; ++digit) {
        const uint64_t s = first | digit;
        if (s >= level_size) break;
        ++queried;
        const double estimate = oracle(tau, s);
        if (estimate >= threshold) kept.emplace_back(s, estimate);
      }
    }
    result.queried_per_level.push_back(queried);

    if (options.n_users > 0 &&
        static_cast<double>(kept.size()) >
            2.0 * static_cast<double>(options.n_users) / lambda) {
      result.warnings.push_back(absl::StrCat(
          "level ", tau, ": ", kept.size(),
          " prefixes passed the 2*lambda threshold, more than 2n/lambda; "
          "level estimates are likely not within lambda"));
    }
    if (options.max_search_set > 0 && kept.size() > options.max_search_set) {
      std::partial_sort(kept.begin(), kept.begin() + options.max_search_set,
                        kept.end(), [](const auto& x, const auto& y) {
                          if (x.second != y.second) return x.second > y.second;
                          return x.first < y.first;
                        });
      result.warnings.push_back(absl::StrCat("level ", tau, ": search set of ",
                                             kept.size(), " truncated to ",
                                             options.max_search_set));
      kept.resize(options.max_search_set);
      result.truncated = true;
    }

    std::vector<uint64_t> level;
    level.reserve(kept.size());
    for (const auto& [s, estimate] : kept) level.push_back(s);
    std::sort(level.begin(), level.end());
    result.levels.push_back(std::move(level));
  }
  return result;
}

absl::StatusOr<HeavyRunResult> RunHeavyHitters(
    std::span<const uint64_t> users, uint64_t d, const HeavyParams& params,
    uint64_t seed, const HeavyRunOptions& options) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  HeavyRunResult result;
  result.seed = seed;
  const uint64_t n = users.size();
  if (n == 0) return result;
  for (uint64_t v : users) {
    if (v >= d) {
      return absl::OutOfRangeError(
          absl::StrCat("element ", v, " outside domain of size ", d));
    }
  }

  absl::StatusOr<PrefixCode> code = PrefixCode::ForPopulation(n, d);
  if (!code.ok()) return code.status();
  const int depth = code->depth();
  result.digit_bits = code->digit_bits();
  result.depth = depth;
  result.lambda = params.Lambda(n, d);
  if (result.lambda >= static_cast<double>(n)) {
    result.warnings.push_back(absl::StrFormat(
        "lambda = %.3f >= n = %d: the 2*lambda threshold is unreachable",
        result.lambda, n));
    return result;
  }

  const OracleParams oracle_params = params.LevelOracleParams(n, depth);
  const PrivacyBudget half = PrivacyBudget::Create(params.eps)->Half();
  const uint64_t k = oracle_params.Repetitions();
  // One hash family serves every level and the refinement round, so m is
  // sized once for the whole population at the halved budget.
  const HadamardDim dim = oracle_params.Dimension(n, half.epsilon());
  result.k = k;
  result.m = dim.size();
  const std::vector<PairwiseHash> hashes =
      internal::SampleHashes(k, dim, seed, 0);

  Stream level_rng = DeriveStream(seed, StreamPurpose::kLevelPartition, 0);
  absl::StatusOr<Partition> level_partition =
      MakePartition(params.scheme, n, depth, level_rng);
  if (!level_partition.ok()) return level_partition.status();
  const std::vector<std::vector<uint64_t>> groups =
      GroupBySubset(*level_partition);

  std::vector<OracleState> level_oracles;
  level_oracles.reserve(depth);
  for (int tau = 1; tau <= depth; ++tau) {
    const std::vector<uint64_t>& ids = groups[tau - 1];
    internal::RowBuildSpec spec{ids,
                                code->LevelSize(tau),
                                &hashes,
                                half,
                                params.scheme,
                                oracle_params.beta_prime,
                                seed,
                                0,
                                static_cast<uint64_t>(tau),
                                options.transcript};
    absl::StatusOr<OracleState> oracle = internal::BuildRows(
        spec, [&](uint64_t i, uint64_t row, const PairwiseHash& h,
                  Stream& coin) {
          return HadaHeavyClient(tau, row, h, half, users[ids[i]], *code,
                                 coin);
        });
    if (!oracle.ok()) return oracle.status();
    level_oracles.push_back(std::move(*oracle));
  }

  const double scale = static_cast<double>(depth);
  SearchResult search = SearchWithOracle(
      [&](int tau, uint64_t prefix) {
        return scale * level_oracles[tau - 1].QueryUnchecked(prefix);
      },
      *code, result.lambda, {n, params.max_search_set});
  for (int tau = 1; tau <= depth; ++tau) {
    result.level_sizes.push_back(search.levels[tau].size());
  }
  result.total_queried = search.total_queried();
  result.truncated = search.truncated;
  result.warnings.insert(result.warnings.end(), search.warnings.begin(),
                         search.warnings.end());

  std::vector<uint64_t> all_ids(n);
  std::iota(all_ids.begin(), all_ids.end(), uint64_t{0});
  internal::RowBuildSpec refine_spec{all_ids,
                                     d,
                                     &hashes,
                                     half,
                                     params.scheme,
                                     oracle_params.beta_prime,
                                     seed,
                                     1,
                                     static_cast<uint64_t>(depth) + 1,
                                     options.transcript};
  absl::StatusOr<OracleState> refinement = internal::BuildRows(
      refine_spec, [&](uint64_t i, uint64_t row, const PairwiseHash& h,
                       Stream& coin) {
        return HadaHeavyClient(depth, row, h, half, users[i], *code, coin);
      });
  if (!refinement.ok()) return refinement.status();

  for (uint64_t element : search.final_set()) {
    result.histogram.entries.push_back(
        {element, refinement->QueryUnchecked(element)});
  }
  SortHistogram(result.histogram.entries);
  return result;
}

std::string HistogramToCsv(const SuccinctHistogram& histogram) {
  std::string out = "element,estimate\n";
  for (const HistogramEntry& e : histogram.entries) {
    absl::StrAppendFormat(&out, "%d,%.6f\n", e.element, e.estimate);
  }
  return out;
}

nlohmann::json HeavyRunToJson(const HeavyRunResult& result,
                              const HeavyParams& params) {
  nlohmann::json entries = nlohmann::json::array();
  for (const HistogramEntry& e : result.histogram.entries) {
    entries.push_back({{"element", e.element}, {"estimate", e.estimate}});
  }
  return nlohmann::json{
      {"B", result.depth > 0 ? (uint64_t{1} << result.digit_bits) : 0},
      {"L", result.depth},
      {"lambda", result.lambda},
      {"k", result.k},
      {"m", result.m},
      {"seed", result.seed},
      {"eps", params.eps},
      {"beta", params.beta},
      {"c_lambda", params.c_lambda},
      {"c_k", params.c_k},
      {"c_m", params.c_m},
      {"scheme", SchemeName(params.scheme)},
      {"level_sizes", result.level_sizes},
      {"total_queried", result.total_queried},
      {"truncated", result.truncated},
      {"warnings", result.warnings},
      {"histogram", entries}};
}

}  // namespace hadaldp
