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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksearch/core_model.hpp"
#include "ksearch/execution.hpp"
#include "ksearch/walker.hpp"

namespace ksearch {

enum class Algo { kWalker, kDense, kNaive };
enum class InstanceKind { kUniform, kDistinct, kCluster, kBins, kFile };

std::string_view to_string(Algo algo);
std::string_view to_string(InstanceKind kind);
/// Throw std::invalid_argument on unknown names.
Algo parse_algo(std::string_view name);
/// Accepts uniform, distinct, cluster, bins, or file:<path>.
std::pair<InstanceKind, std::string> parse_instance_kind(std::string_view spec);

struct ExperimentConfig {
  Value n = 16;
  Value k = 2;
  double delta = 0.1;
  double rho = 1.0;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  Algo algo = Algo::kWalker;
  InstanceKind instance = InstanceKind::kUniform;
  std::string instance_path;  // kFile only
  bool faithful_chain_queries = false;
  double dense_c = 1.0;
};

/// Throws std::invalid_argument when any field is outside the preconditions
/// of the selected generator or solver.
void validate(const ExperimentConfig& cfg);

struct ExperimentRow {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  Value n = 0;
  Value k = 0;
  Algo algo = Algo::kWalker;
  InstanceKind instance = InstanceKind::kUniform;
  QueryCount queries = 0;
  bool success = false;
  double elapsed_ms = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // ordered by trial

  double success_rate() const;
  std::vector<QueryCount> queries() const;
};

/// Per-trial seeds: trial seed s = derive_seed(master_seed, trial); the
/// instance is drawn with derive_seed(s, 0) and the oracle runs on
/// derive_seed(s, 1).
std::uint64_t instance_seed(std::uint64_t trial_seed);
std::uint64_t oracle_seed(std::uint64_t trial_seed);

/// Instance a trial runs on. `fixed` is used for InstanceKind::kFile.
Instance make_trial_instance(const ExperimentConfig& cfg, std::uint64_t trial_seed,
                             const Instance* fixed = nullptr);

/// Runs the configured solver once and checks it against the instance.
SolverReport run_solver(const ExperimentConfig& cfg, Oracle& oracle);

/// Every trial, ordered by trial index. Deterministic given the config:
/// the serial and parallel paths produce identical rows apart from timing.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                Execution exec = Execution::kParallel);

/// Header: trial,seed,n,k,algo,instance,queries,success,elapsed_ms
inline constexpr std::string_view kCsvHeader =
    "trial,seed,n,k,algo,instance,queries,success,elapsed_ms";
void write_csv(std::ostream& out, const ExperimentResult& result,
               bool include_timing = true);
/// Array of objects with the CSV column names as keys.
void write_json(std::ostream& out, const ExperimentResult& result);

/// Reads {"n": int, "k": int, "items": [int, ...]}. Throws DataError.
Instance load_instance_file(const std::string& path);
Instance parse_instance_json(std::string_view text);
std::string instance_to_json(const Instance& instance);

double median(std::vector<QueryCount> values);

struct ScalingPoint {
  double x;
  QueryCount queries;
};

/// Least-squares slope of log2(median queries at x) against log2(x). Needs at
/// least three distinct x values; throws std::domain_error otherwise.
double fit_scaling(const std::vector<ScalingPoint>& points);

}  // namespace ksearch
