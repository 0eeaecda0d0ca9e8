// Copyright 2026 The ksearch Authors
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

// Serial reference vs OpenMP kernels: Monte Carlo trials and the brute-force
// maximum-likelihood decoder. Exits non-zero if the two paths disagree.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ksearch/analysis.hpp"
#include "ksearch/experiment.hpp"

namespace {

template <typename Fn>
double time_ms(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

bool same_rows(const ksearch::ExperimentResult& a, const ksearch::ExperimentResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.trial != y.trial || x.seed != y.seed || x.queries != y.queries ||
        x.success != y.success) {
      return false;
    }
  }
  return true;
}

void report(const std::string& what, double serial, double parallel) {
  std::cout << std::left << std::setw(26) << what << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << serial << " ms" << std::setw(10)
            << parallel << " ms   speedup " << std::setprecision(2) << serial / parallel
            << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP timing for ksearch kernels"};
  ksearch::ExperimentConfig cfg;
  cfg.n = 1024;
  cfg.k = 4;
  cfg.trials = 32;
  cfg.instance = ksearch::InstanceKind::kDistinct;
  std::string algo = "walker";
  ksearch::Value decode_n = 12;
  ksearch::Value decode_k = 4;
  std::size_t decode_queries = 2000;
  app.add_option("--n", cfg.n);
  app.add_option("--k", cfg.k);
  app.add_option("--delta", cfg.delta);
  app.add_option("--trials", cfg.trials);
  app.add_option("--seed", cfg.master_seed);
  app.add_option("--algo", algo);
  app.add_option("--decode-n", decode_n);
  app.add_option("--decode-k", decode_k);
  app.add_option("--decode-queries", decode_queries);
  CLI11_PARSE(app, argc, argv);
  cfg.algo = ksearch::parse_algo(algo);

  std::cout << "threads: " << ksearch::max_threads() << '\n';
  bool ok = true;

  ksearch::ExperimentResult serial_rows;
  ksearch::ExperimentResult parallel_rows;
  const double ts = time_ms([&] { serial_rows = run_experiment(cfg, ksearch::Execution::kSerial); });
  const double tp = time_ms([&] { parallel_rows = run_experiment(cfg, ksearch::Execution::kParallel); });
  report("run_experiment (" + algo + ")", ts, tp);
  if (!same_rows(serial_rows, parallel_rows)) {
    std::cout << "MISMATCH: run_experiment serial and parallel rows differ\n";
    ok = false;
  }

  const ksearch::Instance inst = ksearch::sample_instance(
      decode_n, decode_k, ksearch::SampleMode::kWithReplacement, cfg.master_seed);
  ksearch::Oracle oracle(inst, ksearch::NoiseModel(1.0), ksearch::derive_seed(cfg.master_seed, 1));
  const ksearch::Transcript transcript =
      ksearch::sample_transcript(oracle, decode_queries, ksearch::derive_seed(cfg.master_seed, 2));
  std::vector<ksearch::Value> serial_fit;
  std::vector<ksearch::Value> parallel_fit;
  const double ds = time_ms([&] {
    serial_fit = ksearch::ml_decode(transcript, decode_n, decode_k, 1.0, ksearch::Execution::kSerial);
  });
  const double dp = time_ms([&] {
    parallel_fit = ksearch::ml_decode(transcript, decode_n, decode_k, 1.0, ksearch::Execution::kParallel);
  });
  report("ml_decode (" + std::to_string(ksearch::multiset_count(decode_n, decode_k)) + " cand.)", ds, dp);
  if (serial_fit != parallel_fit) {
    std::cout << "MISMATCH: ml_decode serial and parallel maximizers differ\n";
    ok = false;
  }
  return ok ? 0 : 1;
}
