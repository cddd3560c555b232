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

#ifndef HADALDP_EXPERIMENT_H_
#define HADALDP_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "hadaldp/dataset.h"
#include "hadaldp/hada_oracle.h"
#include "hadaldp/partitioning.h"
#include "json.hpp"

namespace hadaldp {

enum class Protocol { kHrr, kHadaOracle, kHadaHeavy };
absl::StatusOr<Protocol> ParseProtocol(std::string_view name);
std::string_view ProtocolName(Protocol protocol);

struct DatasetSpec {
  std::string kind = "zipf";  // zipf | planted | uniform | file
  uint64_t n = 0;
  uint64_t d = 0;
  double s = 1.1;
  std::vector<std::pair<uint64_t, uint64_t>> heavy;
  std::string path;
  std::optional<uint64_t> seed;
};

// Each bound is checked against every trial.
struct Assertions {
  std::optional<double> max_err;
  std::optional<double> max_p95_err;
  std::optional<double> min_recall_3lambda;
  std::optional<uint64_t> max_false_pos_lt_lambda;
};

struct ExperimentConfig {
  Protocol protocol = Protocol::kHadaOracle;
  DatasetSpec dataset;
  double eps = 1.0;
  double beta = 0.1;
  double beta_prime = 0.05;
  Profile profile = Profile::kPractical;
  std::optional<double> c_k;
  std::optional<double> c_m;
  double c_lambda = 1.0;
  PartitionScheme scheme = PartitionScheme::kPermutation;
  uint64_t trials = 1;
  std::optional<uint64_t> seed;
  std::string out_dir;
  uint64_t queries = 50;
  bool record_timings = true;
  uint64_t max_search_set = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
  Assertions assertions;

  absl::Status Validate() const;
  OracleParams Oracle() const;
};

absl::StatusOr<ExperimentConfig> ConfigFromJson(const nlohmann::json& json);
absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path);

absl::StatusOr<Dataset> MaterializeDataset(const DatasetSpec& spec,
                                           uint64_t master_seed);

struct TrialMetrics {
  uint64_t trial = 0;
  uint64_t seed = 0;
  uint64_t k = 0;
  uint64_t m = 0;
  int digit_bits = 0;
  int depth = 0;
  std::optional<double> lambda;
  uint64_t queried = 0;
  double max_err = 0.0;
  double mean_err = 0.0;
  double p95_err = 0.0;
  double p99_err = 0.0;
  std::optional<double> recall_3lambda;
  std::optional<double> precision_lambda;
  std::optional<uint64_t> false_pos_lt_lambda;
  double build_ms = 0.0;
  double query_ms = 0.0;
  uint64_t memory_bytes = 0;
  std::vector<std::string> warnings;
};

struct AssertionOutcome {
  std::string name;
  double threshold;
  double observed;
  bool passed;
};

struct ExperimentReport {
  ExperimentConfig config;
  uint64_t n = 0;
  uint64_t d = 0;
  std::vector<TrialMetrics> trials;
  // Heavy-hitter output of trial 0, as element,estimate CSV.
  std::string first_histogram_csv;
  std::vector<AssertionOutcome> assertions;

  bool passed() const;
};

absl::StatusOr<TrialMetrics> RunTrial(const ExperimentConfig& config,
                                      const Dataset& dataset, uint64_t trial,
                                      std::string* histogram_csv = nullptr);

absl::StatusOr<ExperimentReport> RunExperiment(const ExperimentConfig& config);
absl::StatusOr<ExperimentReport> RunExperiment(const ExperimentConfig& config,
                                               const Dataset& dataset);

// Linear interpolation between closest ranks; values need not be sorted.
double Quantile(std::vector<double> values, double q);

std::string TrialsToCsv(const ExperimentReport& report);
nlohmann::json SummaryJson(const ExperimentReport& report);

// Writes trials.csv, summary.json and, for heavy hitters, histogram.csv.
absl::Status WriteReport(const ExperimentReport& report,
                         const std::string& out_dir);

}  // namespace hadaldp

#endif  // HADALDP_EXPERIMENT_H_
