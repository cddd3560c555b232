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

// Command-line front end: dataset generation, frequency-oracle and
// heavy-hitter experiments, a timing table, and the acceptance suite.
//
//   ldp_cli gen --kind zipf --n 100000 --d 4294967296 --seed 1 --out data
//   ldp_cli fo  --data data/dataset.bin --seed 7 --trials 20 --out runs/fo
//   ldp_cli hh  --config hh.json --seed 7 --out runs/hh
//   ldp_cli bench --trials 3
//   ldp_cli verify 1 2 3

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "hadaldp/acceptance.h"
#include "hadaldp/dataset.h"
#include "hadaldp/experiment.h"
#include "hadaldp/hada_oracle.h"
#include "hadaldp/hrr_oracle.h"
#include "hadaldp/random.h"

namespace {

using hadaldp::ExperimentConfig;

struct GlobalFlags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> trials;
  std::optional<double> eps;
  std::optional<double> beta;
  std::optional<double> beta_prime;
  std::optional<double> c_k;
  std::optional<double> c_m;
  std::optional<double> c_lambda;
  std::optional<std::string> scheme;
  std::optional<std::string> out;
  std::optional<std::string> profile;
};

struct DatasetFlags {
  std::optional<std::string> data;
  std::optional<std::string> kind;
  std::optional<uint64_t> n;
  std::optional<uint64_t> d;
  std::optional<double> s;
  std::optional<std::string> heavy;
};

struct RunFlags {
  DatasetFlags dataset;
  std::optional<std::string> protocol;
  std::optional<uint64_t> queries;
  std::optional<uint64_t> max_search_set;
  std::optional<unsigned> threads;
  bool no_timings = false;
};

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return 1;
}

absl::StatusOr<std::vector<std::pair<uint64_t, uint64_t>>> ParseHeavy(
    const std::string& text) {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    std::vector<absl::string_view> parts = absl::StrSplit(item, ':');
    uint64_t element = 0;
    uint64_t count = 0;
    if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &element) ||
        !absl::SimpleAtoi(parts[1], &count)) {
      return absl::InvalidArgumentError(
          absl::StrCat("--heavy expects element:count pairs, got '",
                       std::string(item), "'"));
    }
    out.emplace_back(element, count);
  }
  return out;
}

void AddGlobalFlags(CLI::App& app, GlobalFlags& g) {
  app.add_option("--config", g.config, "JSON experiment config")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "master seed (u64)");
  app.add_option("--trials", g.trials, "number of trials")
      ->check(CLI::PositiveNumber);
  app.add_option("--eps", g.eps, "privacy budget in (0, 1]");
  app.add_option("--beta", g.beta, "heavy-hitter failure probability");
  app.add_option("--beta-prime", g.beta_prime,
                 "frequency-oracle failure probability");
  app.add_option("--ck", g.c_k, "repetition constant C_K");
  app.add_option("--cm", g.c_m, "dimension constant C_M");
  app.add_option("--clambda", g.c_lambda, "threshold constant C_lambda");
  app.add_option("--scheme", g.scheme, "partitioning scheme")
      ->check(CLI::IsMember({"independent", "permutation"}));
  app.add_option("--out", g.out, "output directory");
  app.add_option("--profile", g.profile, "constant profile")
      ->check(CLI::IsMember({"theory", "practical"}));
}

void AddDatasetFlags(CLI::App* cmd, DatasetFlags& f) {
  cmd->add_option("--data", f.data, "dataset file (binary or text)");
  cmd->add_option("--kind", f.kind, "generated dataset kind")
      ->check(CLI::IsMember({"zipf", "planted", "uniform"}));
  cmd->add_option("--n", f.n, "number of users");
  cmd->add_option("--d", f.d, "domain size");
  cmd->add_option("--s", f.s, "Zipf exponent");
  cmd->add_option("--heavy", f.heavy, "planted element:count list");
}

absl::Status ApplyDataset(const DatasetFlags& f, hadaldp::DatasetSpec& spec) {
  if (f.data) {
    spec.kind = "file";
    spec.path = *f.data;
  }
  if (f.kind) spec.kind = *f.kind;
  if (f.n) spec.n = *f.n;
  if (f.d) spec.d = *f.d;
  if (f.s) spec.s = *f.s;
  if (f.heavy) {
    absl::StatusOr<std::vector<std::pair<uint64_t, uint64_t>>> heavy =
        ParseHeavy(*f.heavy);
    if (!heavy.ok()) return heavy.status();
    spec.heavy = *std::move(heavy);
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentConfig> BuildConfig(const GlobalFlags& g,
                                             const RunFlags& r,
                                             hadaldp::Protocol fallback) {
  ExperimentConfig c;
  if (!g.config.empty()) {
    absl::StatusOr<ExperimentConfig> loaded = hadaldp::LoadConfig(g.config);
    if (!loaded.ok()) return loaded.status();
    c = *std::move(loaded);
  } else {
    c.protocol = fallback;
  }
  if (g.seed) c.seed = *g.seed;
  if (g.trials) c.trials = *g.trials;
  if (g.eps) c.eps = *g.eps;
  if (g.beta) c.beta = *g.beta;
  if (g.beta_prime) c.beta_prime = *g.beta_prime;
  if (g.c_k) c.c_k = *g.c_k;
  if (g.c_m) c.c_m = *g.c_m;
  if (g.c_lambda) c.c_lambda = *g.c_lambda;
  if (g.scheme) c.scheme = *hadaldp::ParseScheme(*g.scheme);
  if (g.profile) c.profile = *hadaldp::ParseProfile(*g.profile);
  if (g.out) c.out_dir = *g.out;
  if (r.protocol) {
    absl::StatusOr<hadaldp::Protocol> p = hadaldp::ParseProtocol(*r.protocol);
    if (!p.ok()) return p.status();
    c.protocol = *p;
  }
  if (r.queries) c.queries = *r.queries;
  if (r.max_search_set) c.max_search_set = *r.max_search_set;
  if (r.threads) c.threads = *r.threads;
  if (r.no_timings) c.record_timings = false;
  if (absl::Status s = ApplyDataset(r.dataset, c.dataset); !s.ok()) return s;
  if (!c.seed) {
    return absl::InvalidArgumentError("--seed (or a config seed) is required");
  }
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  return c;
}

int RunAndReport(const ExperimentConfig& config) {
  absl::StatusOr<hadaldp::ExperimentReport> report =
      hadaldp::RunExperiment(config);
  if (!report.ok()) return Fail(report.status());
  if (!config.out_dir.empty()) {
    if (absl::Status s = hadaldp::WriteReport(*report, config.out_dir);
        !s.ok()) {
      return Fail(s);
    }
  }
  std::cout << hadaldp::SummaryJson(*report).dump(2) << "\n";
  if (config.out_dir.empty() &&
      config.protocol == hadaldp::Protocol::kHadaHeavy) {
    std::cout << report->first_histogram_csv;
  }
  for (const hadaldp::AssertionOutcome& a : report->assertions) {
    std::cerr << (a.passed ? "ok   " : "FAIL ") << a.name << ": observed "
              << a.observed << ", threshold " << a.threshold << "\n";
  }
  return report->passed() ? 0 : 3;
}

int Gen(const GlobalFlags& g, const DatasetFlags& f, bool text) {
  if (!g.seed) return Fail(absl::InvalidArgumentError("--seed is required"));
  hadaldp::DatasetSpec spec;
  if (absl::Status s = ApplyDataset(f, spec); !s.ok()) return Fail(s);
  if (spec.kind == "file") {
    return Fail(absl::InvalidArgumentError("gen needs --kind, not --data"));
  }
  spec.seed = *g.seed;
  absl::StatusOr<hadaldp::Dataset> ds = hadaldp::MaterializeDataset(spec, *g.seed);
  if (!ds.ok()) return Fail(ds.status());
  const std::filesystem::path dir(g.out.value_or("."));
  std::filesystem::create_directories(dir);
  const std::string path =
      (dir / (text ? "dataset.txt" : "dataset.bin")).string();
  if (absl::Status s = hadaldp::WriteDataset(*ds, path, text); !s.ok()) {
    return Fail(s);
  }
  std::cout << absl::StrFormat("wrote %d elements over d=%d to %s\n", ds->n(),
                               ds->d, path);
  return 0;
}

double MedianMillis(int runs, const std::function<void()>& fn) {
  std::vector<double> times;
  for (int i = 0; i < runs; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count());
  }
  return hadaldp::Quantile(times, 0.5);
}

int Bench(const GlobalFlags& g, const std::vector<uint64_t>& ns,
          const std::vector<uint64_t>& hrr_ds) {
  const uint64_t seed = g.seed.value_or(1);
  const int runs = static_cast<int>(g.trials.value_or(3));
  const double eps = g.eps.value_or(1.0);
  hadaldp::OracleParams p = hadaldp::OracleParams::ForProfile(
      hadaldp::ParseProfile(g.profile.value_or("practical")).value(), eps,
      g.beta_prime.value_or(0.05));
  if (g.c_k) p.c_k = *g.c_k;
  if (g.c_m) p.c_m = *g.c_m;
  if (absl::Status s = p.Validate(); !s.ok()) return Fail(s);
  const uint64_t d = uint64_t{1} << 32;
  const hadaldp::PrivacyBudget budget = *hadaldp::PrivacyBudget::Create(eps);

  std::string csv = "protocol,n,d,k,m,build_ms,query_us,memory_bytes\n";
  std::cout << absl::StrFormat("%-12s %10s %12s %5s %9s %11s %10s %12s\n",
                               "protocol", "n", "d", "k", "m", "build_ms",
                               "query_us", "memory_MiB");
  auto row = [&](const char* protocol, uint64_t n, uint64_t dd, uint64_t k,
                 uint64_t m, double build, double query, uint64_t bytes) {
    std::cout << absl::StrFormat("%-12s %10d %12d %5d %9d %11.2f %10.3f %12.2f\n",
                                 protocol, n, dd, k, m, build, query,
                                 bytes / 1048576.0);
    absl::StrAppendFormat(&csv, "%s,%d,%d,%d,%d,%.3f,%.4f,%d\n", protocol, n,
                          dd, k, m, build, query, bytes);
  };
  for (uint64_t n : ns) {
    hadaldp::Stream rng = hadaldp::DeriveStream(seed, hadaldp::StreamPurpose::kDataset, n);
    std::vector<uint64_t> users(n);
    for (uint64_t& u : users) u = rng.Below(d);
    std::optional<hadaldp::OracleState> state;
    const double build = MedianMillis(runs, [&] {
      state.emplace(*hadaldp::ConstructOracle(users, d, p, seed));
    });
    constexpr int kQueries = 10000;
    double sink = 0.0;
    const double query = MedianMillis(runs, [&] {
      for (int q = 0; q < kQueries; ++q) sink += state->QueryUnchecked(users[q % n]);
    }) * 1000.0 / kQueries;
    (void)sink;
    row("hada-oracle", n, d, state->k(), state->dim().size(), build, query,
        state->MemoryBytes());
  }
  for (uint64_t dd : hrr_ds) {
    const uint64_t n = ns.empty() ? 100000 : ns.front();
    hadaldp::Stream rng = hadaldp::DeriveStream(seed, hadaldp::StreamPurpose::kDataset, dd);
    std::vector<uint64_t> users(n);
    for (uint64_t& u : users) u = rng.Below(dd);
    std::optional<hadaldp::HrrState> state;
    const double build = MedianMillis(runs, [&] {
      absl::StatusOr<hadaldp::HrrState> s = hadaldp::BuildHrr(users, dd, budget, seed);
      if (s.ok()) state.emplace(*std::move(s));
    });
    if (!state) {
      std::cerr << "skipping HRR at d=" << dd << ": transform too large\n";
      continue;
    }
    row("hrr", n, dd, 1, state->dim().size(), build, 0.0, state->MemoryBytes());
  }
  if (g.out) {
    std::filesystem::create_directories(*g.out);
    std::ofstream f(std::filesystem::path(*g.out) / "bench.csv");
    f << csv;
  }
  return 0;
}

int Verify(const std::vector<int>& ids, std::optional<uint64_t> seed) {
  hadaldp::AcceptanceOptions options;
  if (seed) options.seed = *seed;
  std::vector<int> selected = ids;
  if (selected.empty()) {
    for (int id = 1; id <= hadaldp::kCriterionCount; ++id) selected.push_back(id);
  }
  int failed = 0;
  for (int id : selected) {
    const hadaldp::CriterionResult r = hadaldp::RunCriterion(id, options);
    std::cout << hadaldp::FormatResult(r) << std::endl;
    failed += !r.passed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private frequency estimation and heavy hitters"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  AddGlobalFlags(app, g);

  DatasetFlags gen_flags;
  bool text = false;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  AddDatasetFlags(gen, gen_flags);
  gen->add_flag("--text", text, "write the decimal text format");

  RunFlags fo_flags;
  CLI::App* fo = app.add_subcommand("fo", "frequency-oracle experiment");
  AddDatasetFlags(fo, fo_flags.dataset);
  fo->add_option("--protocol", fo_flags.protocol, "hrr or hada-oracle")
      ->check(CLI::IsMember({"hrr", "hada-oracle"}));
  fo->add_option("--queries", fo_flags.queries, "elements queried per trial");
  fo->add_option("--threads", fo_flags.threads, "worker threads");
  fo->add_flag("--no-timings", fo_flags.no_timings,
               "write zero timings for byte-identical reruns");

  RunFlags hh_flags;
  CLI::App* hh = app.add_subcommand("hh", "heavy-hitter experiment");
  AddDatasetFlags(hh, hh_flags.dataset);
  hh->add_option("--max-search-set", hh_flags.max_search_set,
                 "per-level prefix cap (0 = none)");
  hh->add_option("--threads", hh_flags.threads, "worker threads");
  hh->add_flag("--no-timings", hh_flags.no_timings,
               "write zero timings for byte-identical reruns");

  std::vector<uint64_t> bench_ns = {10000, 100000, 1000000};
  std::vector<uint64_t> bench_ds = {uint64_t{1} << 16, uint64_t{1} << 20,
                                    uint64_t{1} << 24};
  CLI::App* bench = app.add_subcommand("bench", "construction timing table");
  bench->add_option("--n", bench_ns, "population sizes for HadaOracle");
  bench->add_option("--hrr-d", bench_ds, "domain sizes for HRR");

  std::vector<int> criteria;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("criteria", criteria, "criterion ids (default: all)")
      ->check(CLI::Range(1, hadaldp::kCriterionCount));

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) return Gen(g, gen_flags, text);
  if (fo->parsed() || hh->parsed()) {
    const bool heavy = hh->parsed();
    RunFlags& flags = heavy ? hh_flags : fo_flags;
    absl::StatusOr<ExperimentConfig> config = BuildConfig(
        g, flags,
        heavy ? hadaldp::Protocol::kHadaHeavy : hadaldp::Protocol::kHadaOracle);
    if (!config.ok()) return Fail(config.status());
    if (heavy != (config->protocol == hadaldp::Protocol::kHadaHeavy)) {
      return Fail(absl::InvalidArgumentError(
          "config protocol does not match the subcommand"));
    }
    return RunAndReport(*config);
  }
  if (bench->parsed()) return Bench(g, bench_ns, bench_ds);
  return Verify(criteria, g.seed);
}
