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

#include "hadaldp/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "hadaldp/exact.h"
#include "hadaldp/hada_heavy.h"
#include "hadaldp/hrr_oracle.h"
#include "hadaldp/random.h"

namespace hadaldp {
namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

absl::Status TypeError(const std::string& key, const char* want) {
  return absl::InvalidArgumentError(
      absl::StrCat("config field '", key, "' must be ", want));
}

absl::Status ReadDouble(const Json& j, const std::string& key, double* out) {
  if (!j.contains(key)) return absl::OkStatus();
  if (!j[key].is_number()) return TypeError(key, "a number");
  *out = j[key].get<double>();
  return absl::OkStatus();
}

absl::Status ReadU64(const Json& j, const std::string& key, uint64_t* out) {
  if (!j.contains(key)) return absl::OkStatus();
  const Json& v = j[key];
  if (v.is_number_unsigned()) {
    *out = v.get<uint64_t>();
  } else if (v.is_number_float() && v.get<double>() >= 0 &&
             v.get<double>() < 18446744073709551616.0 &&
             std::floor(v.get<double>()) == v.get<double>()) {
    *out = static_cast<uint64_t>(v.get<double>());
  } else {
    return TypeError(key, "a non-negative integer");
  }
  return absl::OkStatus();
}

absl::Status ReadString(const Json& j, const std::string& key,
                        std::string* out) {
  if (!j.contains(key)) return absl::OkStatus();
  if (!j[key].is_string()) return TypeError(key, "a string");
  *out = j[key].get<std::string>();
  return absl::OkStatus();
}

template <typename T>
absl::Status ReadOptional(const Json& j, const std::string& key,
                          std::optional<T>* out) {
  if (!j.contains(key) || j[key].is_null()) return absl::OkStatus();
  T value{};
  absl::Status s;
  if constexpr (std::is_same_v<T, double>) {
    s = ReadDouble(j, key, &value);
  } else {
    s = ReadU64(j, key, &value);
  }
  if (s.ok()) *out = value;
  return s;
}

absl::Status CheckKeys(const Json& j, std::initializer_list<const char*> keys,
                       const char* where) {
  for (const auto& [key, unused] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(),
                     [&](const char* k) { return key == k; })) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown ", where, " field '", key, "'"));
    }
  }
  return absl::OkStatus();
}

#define HADALDP_RETURN_IF_ERROR(expr)      \
  do {                                     \
    if (absl::Status _s = (expr); !_s.ok()) \
      return _s;                           \
  } while (0)

absl::StatusOr<DatasetSpec> DatasetFromJson(const Json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("config field 'dataset' must be an object");
  }
  HADALDP_RETURN_IF_ERROR(
      CheckKeys(j, {"kind", "n", "d", "s", "heavy", "path", "seed"}, "dataset"));
  DatasetSpec spec;
  HADALDP_RETURN_IF_ERROR(ReadString(j, "kind", &spec.kind));
  HADALDP_RETURN_IF_ERROR(ReadU64(j, "n", &spec.n));
  HADALDP_RETURN_IF_ERROR(ReadU64(j, "d", &spec.d));
  HADALDP_RETURN_IF_ERROR(ReadDouble(j, "s", &spec.s));
  HADALDP_RETURN_IF_ERROR(ReadString(j, "path", &spec.path));
  HADALDP_RETURN_IF_ERROR(ReadOptional(j, "seed", &spec.seed));
  if (j.contains("heavy")) {
    if (!j["heavy"].is_array()) return TypeError("heavy", "an array");
    for (const Json& pair : j["heavy"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
          !pair[1].is_number_unsigned()) {
        return TypeError("heavy", "a list of [element, count] pairs");
      }
      spec.heavy.emplace_back(pair[0].get<uint64_t>(), pair[1].get<uint64_t>());
    }
  }
  return spec;
}

std::string FormatOptional(const std::optional<double>& v) {
  return v.has_value() ? absl::StrFormat("%.6f", *v) : "";
}

Json OptionalJson(const std::optional<double>& v) {
  return v.has_value() ? Json(*v) : Json(nullptr);
}

double Median(std::vector<double> values) {
  return values.empty() ? 0.0 : Quantile(std::move(values), 0.5);
}

struct TrialContext {
  const ExperimentConfig& config;
  const Dataset& dataset;
  const FrequencyMap& truth;
  const std::vector<uint64_t>& distinct;  // sorted
};

std::vector<uint64_t> SampleQueries(const TrialContext& ctx, uint64_t trial) {
  const uint64_t want = ctx.config.queries;
  if (want >= ctx.distinct.size()) return ctx.distinct;
  Stream rng = DeriveStream(*ctx.config.seed, StreamPurpose::kQuerySample,
                            trial);
  std::vector<uint64_t> pool = ctx.distinct;
  for (uint64_t i = 0; i < want; ++i) {
    std::swap(pool[i], pool[i + rng.Below(pool.size() - i)]);
  }
  pool.resize(want);
  std::sort(pool.begin(), pool.end());
  return pool;
}

void FillErrors(std::vector<double> errors, TrialMetrics& out) {
  out.queried = errors.size();
  if (errors.empty()) return;
  out.max_err = *std::max_element(errors.begin(), errors.end());
  out.mean_err =
      std::accumulate(errors.begin(), errors.end(), 0.0) / errors.size();
  out.p95_err = Quantile(errors, 0.95);
  out.p99_err = Quantile(std::move(errors), 0.99);
}

absl::StatusOr<TrialMetrics> RunTrialWithContext(const TrialContext& ctx,
                                                 uint64_t trial,
                                                 std::string* histogram_csv) {
  const ExperimentConfig& config = ctx.config;
  const std::span<const uint64_t> users = ctx.dataset.elements;
  const uint64_t d = ctx.dataset.d;
  TrialMetrics out;
  out.trial = trial;
  out.seed = DeriveSeed(*config.seed, StreamPurpose::kTrial, trial);
  const bool timed = config.record_timings;

  if (config.protocol == Protocol::kHadaHeavy) {
    HeavyParams params;
    params.eps = config.eps;
    params.beta = config.beta;
    params.c_lambda = config.c_lambda;
    const OracleParams oracle = config.Oracle();
    params.c_k = oracle.c_k;
    params.c_m = oracle.c_m;
    params.scheme = config.scheme;
    params.max_search_set = config.max_search_set;
    const Clock::time_point start = Clock::now();
    absl::StatusOr<HeavyRunResult> run =
        RunHeavyHitters(users, d, params, out.seed);
    if (!run.ok()) return run.status();
    out.build_ms = timed ? MillisSince(start) : 0.0;
    out.k = run->k;
    out.m = run->m;
    out.digit_bits = run->digit_bits;
    out.depth = run->depth;
    out.lambda = run->lambda;
    out.memory_bytes = (run->depth + 1) * run->k * run->m * sizeof(double);
    out.warnings = run->warnings;

    std::vector<double> errors;
    uint64_t false_pos = 0;
    std::set<uint64_t> returned;
    for (const HistogramEntry& e : run->histogram.entries) {
      const double f = static_cast<double>(CountOf(ctx.truth, e.element));
      errors.push_back(std::abs(e.estimate - f));
      false_pos += f < run->lambda;
      returned.insert(e.element);
    }
    const std::vector<uint64_t> heavy = HeavyHittersOf(ctx.truth, 3 * run->lambda);
    uint64_t hit = 0;
    for (uint64_t v : heavy) hit += returned.contains(v);
    out.recall_3lambda =
        heavy.empty() ? 1.0 : static_cast<double>(hit) / heavy.size();
    out.false_pos_lt_lambda = false_pos;
    out.precision_lambda =
        returned.empty() ? 1.0
                         : 1.0 - static_cast<double>(false_pos) / returned.size();
    FillErrors(std::move(errors), out);
    if (histogram_csv != nullptr) *histogram_csv = HistogramToCsv(run->histogram);
    return out;
  }

  const std::vector<uint64_t> queries = SampleQueries(ctx, trial);
  std::vector<double> errors;
  errors.reserve(queries.size());
  if (config.protocol == Protocol::kHrr) {
    const PrivacyBudget budget = *PrivacyBudget::Create(config.eps);
    const Clock::time_point start = Clock::now();
    absl::StatusOr<HrrState> state = BuildHrr(users, d, budget, out.seed);
    if (!state.ok()) return state.status();
    out.build_ms = timed ? MillisSince(start) : 0.0;
    out.k = 1;
    out.m = state->dim().size();
    out.memory_bytes = state->MemoryBytes();
    const Clock::time_point qstart = Clock::now();
    for (uint64_t v : queries) {
      errors.push_back(std::abs(*state->Query(v) -
                                static_cast<double>(CountOf(ctx.truth, v))));
    }
    out.query_ms = timed ? MillisSince(qstart) : 0.0;
  } else {
    const Clock::time_point start = Clock::now();
    absl::StatusOr<OracleState> state =
        ConstructOracle(users, d, config.Oracle(), out.seed);
    if (!state.ok()) return state.status();
    out.build_ms = timed ? MillisSince(start) : 0.0;
    out.k = state->k();
    out.m = state->dim().size();
    out.memory_bytes = state->MemoryBytes();
    const Clock::time_point qstart = Clock::now();
    for (uint64_t v : queries) {
      errors.push_back(std::abs(state->QueryUnchecked(v) -
                                static_cast<double>(CountOf(ctx.truth, v))));
    }
    out.query_ms = timed ? MillisSince(qstart) : 0.0;
  }
  FillErrors(std::move(errors), out);
  return out;
}

std::vector<uint64_t> SortedKeys(const FrequencyMap& freq) {
  std::vector<uint64_t> keys;
  keys.reserve(freq.size());
  for (const auto& [v, count] : freq) keys.push_back(v);
  std::sort(keys.begin(), keys.end());
  return keys;
}

void Check(std::vector<AssertionOutcome>& out, const std::string& name,
           double threshold, double observed, bool passed) {
  out.push_back({name, threshold, observed, passed});
}

}  // namespace

absl::StatusOr<Protocol> ParseProtocol(std::string_view name) {
  if (name == "hrr") return Protocol::kHrr;
  if (name == "hada-oracle") return Protocol::kHadaOracle;
  if (name == "hada-heavy") return Protocol::kHadaHeavy;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown protocol '", std::string(name), "'"));
}

std::string_view ProtocolName(Protocol protocol) {
  switch (protocol) {
    case Protocol::kHrr:
      return "hrr";
    case Protocol::kHadaOracle:
      return "hada-oracle";
    case Protocol::kHadaHeavy:
      return "hada-heavy";
  }
  return "";
}

absl::Status ExperimentConfig::Validate() const {
  if (absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Create(eps); !b.ok()) {
    return b.status();
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  if (!(beta_prime > 0.0 && beta_prime < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta' must lie in (0, 1), got ", beta_prime));
  }
  if (trials == 0) return absl::InvalidArgumentError("trials must be >= 1");
  if (!(c_lambda > 0.0)) {
    return absl::InvalidArgumentError("C_lambda must be positive");
  }
  return Oracle().Validate();
}

OracleParams ExperimentConfig::Oracle() const {
  OracleParams p = OracleParams::ForProfile(profile, eps, beta_prime);
  if (c_k.has_value()) {
    p.c_k = *c_k;
    if (profile == Profile::kTheory && !c_m.has_value()) {
      p.c_m = TheoryDimensionConstant(*c_k);
    }
  }
  if (c_m.has_value()) p.c_m = *c_m;
  p.scheme = scheme;
  return p;
}

absl::StatusOr<ExperimentConfig> ConfigFromJson(const Json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  HADALDP_RETURN_IF_ERROR(CheckKeys(
      j,
      {"protocol", "dataset", "eps", "beta", "beta_prime", "profile", "c_k",
       "c_m", "c_lambda", "scheme", "trials", "seed", "out", "queries",
       "record_timings", "max_search_set", "threads", "assertions"},
      "config"));
  ExperimentConfig c;
  std::string text;
  if (j.contains("protocol")) {
    HADALDP_RETURN_IF_ERROR(ReadString(j, "protocol", &text));
    absl::StatusOr<Protocol> p = ParseProtocol(text);
    if (!p.ok()) return p.status();
    c.protocol = *p;
  }
  if (j.contains("dataset")) {
    absl::StatusOr<DatasetSpec> spec = DatasetFromJson(j["dataset"]);
    if (!spec.ok()) return spec.status();
    c.dataset = *std::move(spec);
  }
  HADALDP_RETURN_IF_ERROR(ReadDouble(j, "eps", &c.eps));
  HADALDP_RETURN_IF_ERROR(ReadDouble(j, "beta", &c.beta));
  HADALDP_RETURN_IF_ERROR(ReadDouble(j, "beta_prime", &c.beta_prime));
  if (j.contains("profile")) {
    HADALDP_RETURN_IF_ERROR(ReadString(j, "profile", &text));
    absl::StatusOr<Profile> p = ParseProfile(text);
    if (!p.ok()) return p.status();
    c.profile = *p;
  }
  HADALDP_RETURN_IF_ERROR(ReadOptional(j, "c_k", &c.c_k));
  HADALDP_RETURN_IF_ERROR(ReadOptional(j, "c_m", &c.c_m));
  HADALDP_RETURN_IF_ERROR(ReadDouble(j, "c_lambda", &c.c_lambda));
  if (j.contains("scheme")) {
    HADALDP_RETURN_IF_ERROR(ReadString(j, "scheme", &text));
    absl::StatusOr<PartitionScheme> s = ParseScheme(text);
    if (!s.ok()) return s.status();
    c.scheme = *s;
  }
  HADALDP_RETURN_IF_ERROR(ReadU64(j, "trials", &c.trials));
  HADALDP_RETURN_IF_ERROR(ReadOptional(j, "seed", &c.seed));
  HADALDP_RETURN_IF_ERROR(ReadString(j, "out", &c.out_dir));
  HADALDP_RETURN_IF_ERROR(ReadU64(j, "queries", &c.queries));
  if (j.contains("record_timings")) {
    if (!j["record_timings"].is_boolean()) {
      return TypeError("record_timings", "a boolean");
    }
    c.record_timings = j["record_timings"].get<bool>();
  }
  HADALDP_RETURN_IF_ERROR(ReadU64(j, "max_search_set", &c.max_search_set));
  uint64_t threads = 0;
  HADALDP_RETURN_IF_ERROR(ReadU64(j, "threads", &threads));
  c.threads = static_cast<unsigned>(std::min<uint64_t>(threads, 1024));
  if (j.contains("assertions")) {
    const Json& a = j["assertions"];
    if (!a.is_object()) return TypeError("assertions", "an object");
    HADALDP_RETURN_IF_ERROR(CheckKeys(a,
                                      {"max_err", "max_p95_err",
                                       "min_recall_3lambda",
                                       "max_false_pos_lt_lambda"},
                                      "assertions"));
    HADALDP_RETURN_IF_ERROR(ReadOptional(a, "max_err", &c.assertions.max_err));
    HADALDP_RETURN_IF_ERROR(
        ReadOptional(a, "max_p95_err", &c.assertions.max_p95_err));
    HADALDP_RETURN_IF_ERROR(ReadOptional(a, "min_recall_3lambda",
                                         &c.assertions.min_recall_3lambda));
    HADALDP_RETURN_IF_ERROR(ReadOptional(
        a, "max_false_pos_lt_lambda", &c.assertions.max_false_pos_lt_lambda));
  }
  return c;
}

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path) {
  std::ifstream f(path);
  if (!f) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  Json j = Json::parse(f, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": malformed JSON"));
  }
  absl::StatusOr<ExperimentConfig> config = ConfigFromJson(j);
  if (!config.ok()) {
    return absl::Status(config.status().code(),
                        absl::StrCat(path, ": ", config.status().message()));
  }
  return config;
}

absl::StatusOr<Dataset> MaterializeDataset(const DatasetSpec& spec,
                                           uint64_t master_seed) {
  const uint64_t seed =
      spec.seed.value_or(DeriveSeed(master_seed, StreamPurpose::kDataset, 0));
  if (spec.kind == "file") {
    if (spec.path.empty()) {
      return absl::InvalidArgumentError("file dataset needs a path");
    }
    return ReadDataset(spec.path);
  }
  if (spec.d == 0) return absl::InvalidArgumentError("dataset d must be >= 1");
  if (spec.kind == "zipf") return GenZipf(spec.n, spec.d, spec.s, seed);
  if (spec.kind == "planted") return GenPlanted(spec.n, spec.d, spec.heavy, seed);
  if (spec.kind == "uniform") return GenPlanted(spec.n, spec.d, {}, seed);
  return absl::InvalidArgumentError(
      absl::StrCat("unknown dataset kind '", spec.kind, "'"));
}

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

bool ExperimentReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const AssertionOutcome& a) { return a.passed; });
}

absl::StatusOr<TrialMetrics> RunTrial(const ExperimentConfig& config,
                                      const Dataset& dataset, uint64_t trial,
                                      std::string* histogram_csv) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (!config.seed.has_value()) {
    return absl::FailedPreconditionError("a master seed is required");
  }
  const FrequencyMap truth = ExactFrequency(dataset.elements);
  const std::vector<uint64_t> distinct = SortedKeys(truth);
  return RunTrialWithContext({config, dataset, truth, distinct}, trial,
                             histogram_csv);
}

absl::StatusOr<ExperimentReport> RunExperiment(const ExperimentConfig& config) {
  if (!config.seed.has_value()) {
    return absl::FailedPreconditionError("a master seed is required");
  }
  absl::StatusOr<Dataset> dataset =
      MaterializeDataset(config.dataset, *config.seed);
  if (!dataset.ok()) return dataset.status();
  return RunExperiment(config, *dataset);
}

absl::StatusOr<ExperimentReport> RunExperiment(const ExperimentConfig& config,
                                               const Dataset& dataset) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (!config.seed.has_value()) {
    return absl::FailedPreconditionError("a master seed is required");
  }
  const FrequencyMap truth = ExactFrequency(dataset.elements);
  const std::vector<uint64_t> distinct = SortedKeys(truth);
  const TrialContext ctx{config, dataset, truth, distinct};

  ExperimentReport report;
  report.config = config;
  report.n = dataset.n();
  report.d = dataset.d;

  std::vector<absl::StatusOr<TrialMetrics>> results(
      config.trials, absl::UnknownError("trial did not run"));
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    for (uint64_t t = next++; t < config.trials; t = next++) {
      results[t] = RunTrialWithContext(
          ctx, t, t == 0 ? &report.first_histogram_csv : nullptr);
    }
  };
  unsigned threads = config.threads != 0
                         ? config.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<uint64_t>(threads, config.trials));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  for (absl::StatusOr<TrialMetrics>& r : results) {
    if (!r.ok()) return r.status();
    report.trials.push_back(*std::move(r));
  }

  const Assertions& a = config.assertions;
  double worst_max = 0.0;
  double worst_p95 = 0.0;
  double worst_recall = 1.0;
  uint64_t worst_fp = 0;
  for (const TrialMetrics& m : report.trials) {
    worst_max = std::max(worst_max, m.max_err);
    worst_p95 = std::max(worst_p95, m.p95_err);
    worst_recall = std::min(worst_recall, m.recall_3lambda.value_or(1.0));
    worst_fp = std::max(worst_fp, m.false_pos_lt_lambda.value_or(0));
  }
  if (a.max_err) {
    Check(report.assertions, "max_err", *a.max_err, worst_max,
          worst_max <= *a.max_err);
  }
  if (a.max_p95_err) {
    Check(report.assertions, "max_p95_err", *a.max_p95_err, worst_p95,
          worst_p95 <= *a.max_p95_err);
  }
  if (a.min_recall_3lambda) {
    Check(report.assertions, "min_recall_3lambda", *a.min_recall_3lambda,
          worst_recall, worst_recall >= *a.min_recall_3lambda);
  }
  if (a.max_false_pos_lt_lambda) {
    Check(report.assertions, "max_false_pos_lt_lambda",
          static_cast<double>(*a.max_false_pos_lt_lambda),
          static_cast<double>(worst_fp), worst_fp <= *a.max_false_pos_lt_lambda);
  }
  return report;
}

std::string TrialsToCsv(const ExperimentReport& report) {
  std::string out =
      "trial,protocol,n,d,eps,k,m,B,L,lambda,max_err,p95_err,p99_err,"
      "recall_3lambda,false_pos_lt_lambda,build_ms,query_ms\n";
  const bool heavy = report.config.protocol == Protocol::kHadaHeavy;
  for (const TrialMetrics& t : report.trials) {
    const std::string branching =
        heavy && t.depth > 0 ? absl::StrCat(uint64_t{1} << t.digit_bits) : "";
    const std::string depth = heavy ? absl::StrCat(t.depth) : "";
    const std::string false_pos =
        t.false_pos_lt_lambda ? absl::StrCat(*t.false_pos_lt_lambda) : "";
    absl::StrAppendFormat(
        &out, "%d,%s,%d,%d,%g,%d,%d,%s,%s,%s,%.6f,%.6f,%.6f,%s,%s,%.3f,%.3f\n",
        t.trial, std::string(ProtocolName(report.config.protocol)), report.n,
        report.d,
        report.config.eps, t.k, t.m, branching, depth, FormatOptional(t.lambda),
        t.max_err, t.p95_err, t.p99_err, FormatOptional(t.recall_3lambda),
        false_pos, t.build_ms, t.query_ms);
  }
  return out;
}

Json SummaryJson(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  const OracleParams oracle = c.Oracle();
  const bool heavy = c.protocol == Protocol::kHadaHeavy;
  std::vector<double> build;
  std::vector<double> query;
  std::vector<double> max_err;
  std::vector<double> p95;
  std::vector<double> p99;
  std::vector<double> recall;
  uint64_t memory = 0;
  uint64_t worst_fp = 0;
  std::set<std::string> warnings;
  for (const TrialMetrics& t : report.trials) {
    build.push_back(t.build_ms);
    query.push_back(t.query_ms);
    max_err.push_back(t.max_err);
    p95.push_back(t.p95_err);
    p99.push_back(t.p99_err);
    if (t.recall_3lambda) recall.push_back(*t.recall_3lambda);
    worst_fp = std::max(worst_fp, t.false_pos_lt_lambda.value_or(0));
    memory = std::max(memory, t.memory_bytes);
    warnings.insert(t.warnings.begin(), t.warnings.end());
  }
  const TrialMetrics& first = report.trials.front();
  Json assertions = Json::array();
  for (const AssertionOutcome& a : report.assertions) {
    assertions.push_back({{"name", a.name},
                          {"threshold", a.threshold},
                          {"observed", a.observed},
                          {"passed", a.passed}});
  }
  auto stats = [](const std::vector<double>& v) {
    return Json{{"median", Median(v)},
                {"max", *std::max_element(v.begin(), v.end())}};
  };
  Json j = {
      {"protocol", ProtocolName(c.protocol)},
      {"n", report.n},
      {"d", report.d},
      {"eps", c.eps},
      {"beta", c.beta},
      {"beta_prime", c.beta_prime},
      {"profile", ProfileName(c.profile)},
      {"c_k", oracle.c_k},
      {"c_m", oracle.c_m},
      {"c_lambda", heavy ? Json(c.c_lambda) : Json(nullptr)},
      {"scheme", SchemeName(c.scheme)},
      {"trials", c.trials},
      {"seed", *c.seed},
      {"k", first.k},
      {"m", first.m},
      {"B", heavy && first.depth > 0 ? Json(uint64_t{1} << first.digit_bits)
                                     : Json(nullptr)},
      {"L", heavy ? Json(first.depth) : Json(nullptr)},
      {"lambda", OptionalJson(first.lambda)},
      {"median_build_ms", Median(build)},
      {"median_query_ms", Median(query)},
      {"memory_bytes", memory},
      {"max_err", stats(max_err)},
      {"p95_err", stats(p95)},
      {"p99_err", stats(p99)},
      {"recall_3lambda",
       recall.empty()
           ? Json(nullptr)
           : Json{{"min", *std::min_element(recall.begin(), recall.end())},
                  {"mean", std::accumulate(recall.begin(), recall.end(), 0.0) /
                               recall.size()}}},
      {"false_pos_lt_lambda",
       heavy ? Json{{"max", worst_fp}} : Json(nullptr)},
      {"warnings", std::vector<std::string>(warnings.begin(), warnings.end())},
      {"assertions", assertions},
      {"passed", report.passed()}};
  return j;
}

absl::Status WriteReport(const ExperimentReport& report,
                         const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", out_dir, ": ", ec.message()));
  }
  auto write = [](const std::filesystem::path& path,
                  const std::string& body) -> absl::Status {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << body;
    f.close();
    if (!f) {
      return absl::DataLossError(
          absl::StrCat("failed writing ", path.string()));
    }
    return absl::OkStatus();
  };
  const std::filesystem::path dir(out_dir);
  HADALDP_RETURN_IF_ERROR(write(dir / "trials.csv", TrialsToCsv(report)));
  HADALDP_RETURN_IF_ERROR(
      write(dir / "summary.json", SummaryJson(report).dump(2) + "\n"));
  if (report.config.protocol == Protocol::kHadaHeavy) {
    HADALDP_RETURN_IF_ERROR(
        write(dir / "histogram.csv", report.first_histogram_csv));
  }
  return absl::OkStatus();
}

}  // namespace hadaldp
