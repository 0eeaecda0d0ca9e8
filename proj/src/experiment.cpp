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

#include "ksearch/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "ksearch/dense_naive.hpp"
#include "ksearch/hard_instances.hpp"

namespace ksearch {

std::string_view to_string(Algo algo) {
  switch (algo) {
    case Algo::kWalker: return "walker";
    case Algo::kDense: return "dense";
    case Algo::kNaive: return "naive";
  }
  return "?";
}

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kUniform: return "uniform";
    case InstanceKind::kDistinct: return "distinct";
    case InstanceKind::kCluster: return "cluster";
    case InstanceKind::kBins: return "bins";
    case InstanceKind::kFile: return "file";
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  if (name == "walker") return Algo::kWalker;
  if (name == "dense") return Algo::kDense;
  if (name == "naive") return Algo::kNaive;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::pair<InstanceKind, std::string> parse_instance_kind(std::string_view spec) {
  if (spec == "uniform") return {InstanceKind::kUniform, {}};
  if (spec == "distinct") return {InstanceKind::kDistinct, {}};
  if (spec == "cluster") return {InstanceKind::kCluster, {}};
  if (spec == "bins") return {InstanceKind::kBins, {}};
  if (spec.starts_with("file:") && spec.size() > 5) {
    return {InstanceKind::kFile, std::string(spec.substr(5))};
  }
  throw std::invalid_argument("unknown instance kind '" + std::string(spec) + "'");
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (cfg.n < 1) fail("n must be >= 1");
  if (cfg.k < 1) fail("k must be >= 1");
  if (cfg.trials < 1) fail("trials must be >= 1");
  if (!(cfg.rho > 0.5 && cfg.rho <= 1.0)) fail("rho must lie in (1/2, 1]");
  if (cfg.algo != Algo::kDense && !(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    fail("delta must lie in (0, 1)");
  }
  if (cfg.algo == Algo::kDense && !(cfg.dense_c > 0.0)) fail("dense-c must be positive");
  if (cfg.algo != Algo::kDense && cfg.k > cfg.n) {
    fail(std::string(to_string(cfg.algo)) + " requires k <= n");
  }
  switch (cfg.instance) {
    case InstanceKind::kDistinct:
      if (cfg.k > cfg.n) fail("distinct instances require k <= n");
      break;
    case InstanceKind::kCluster:
      if (cfg.n % cfg.k != 0) fail("cluster instances require k | n");
      break;
    case InstanceKind::kBins:
      if (cfg.k % 4 != 0 || cfg.k > cfg.n - 2) fail("bin instances require 4 | k and k <= n - 2");
      break;
    case InstanceKind::kFile:
      if (cfg.instance_path.empty()) fail("file instance needs a path");
      break;
    case InstanceKind::kUniform:
      break;
  }
}

double ExperimentResult::success_rate() const {
  if (rows.empty()) return 0.0;
  const auto ok = std::count_if(rows.begin(), rows.end(),
                                [](const ExperimentRow& r) { return r.success; });
  return static_cast<double>(ok) / static_cast<double>(rows.size());
}

std::vector<QueryCount> ExperimentResult::queries() const {
  std::vector<QueryCount> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.queries);
  return out;
}

std::uint64_t instance_seed(std::uint64_t trial_seed) { return derive_seed(trial_seed, 0); }
std::uint64_t oracle_seed(std::uint64_t trial_seed) { return derive_seed(trial_seed, 1); }

Instance make_trial_instance(const ExperimentConfig& cfg, std::uint64_t trial_seed,
                             const Instance* fixed) {
  const std::uint64_t seed = instance_seed(trial_seed);
  switch (cfg.instance) {
    case InstanceKind::kUniform:
      return sample_instance(cfg.n, cfg.k, SampleMode::kWithReplacement, seed);
    case InstanceKind::kDistinct:
      return sample_instance(cfg.n, cfg.k, SampleMode::kDistinct, seed);
    case InstanceKind::kCluster:
      return cluster_instance(cfg.n, cfg.k, seed);
    case InstanceKind::kBins:
      return bin_instance(cfg.n, cfg.k, seed);
    case InstanceKind::kFile:
      if (!fixed) throw std::invalid_argument("file instance not loaded");
      return *fixed;
  }
  throw std::logic_error("unreachable");
}

SolverReport run_solver(const ExperimentConfig& cfg, Oracle& oracle) {
  SolverReport report;
  switch (cfg.algo) {
    case Algo::kWalker:
      report = solve_walker(oracle, cfg.n, cfg.k, cfg.delta, cfg.faithful_chain_queries);
      break;
    case Algo::kDense:
      report = solve_dense(oracle, cfg.n, cfg.k, cfg.dense_c);
      break;
    case Algo::kNaive:
      report = solve_naive(oracle, cfg.n, cfg.k, cfg.delta);
      break;
  }
  report.check_against(oracle.instance());
  return report;
}

namespace {

ExperimentRow run_trial(const ExperimentConfig& cfg, std::uint64_t trial,
                        const Instance* fixed) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = derive_seed(cfg.master_seed, trial);
  Oracle oracle(make_trial_instance(cfg, seed, fixed), NoiseModel(cfg.rho), oracle_seed(seed));
  const SolverReport report = run_solver(cfg, oracle);
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;
  return {trial,      seed,      cfg.n, cfg.k, cfg.algo, cfg.instance, report.total_queries,
          report.success.value_or(false), elapsed.count()};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, Execution exec) {
  validate(cfg);
  std::optional<Instance> fixed;
  if (cfg.instance == InstanceKind::kFile) {
    fixed = load_instance_file(cfg.instance_path);
    if (fixed->n() != cfg.n || fixed->k() != cfg.k) {
      throw std::invalid_argument("instance file (n, k) disagrees with the configuration");
    }
  }
  const Instance* fixed_ptr = fixed ? &*fixed : nullptr;

  ExperimentResult result;
  result.rows.resize(cfg.trials);
  if (exec == Execution::kSerial) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) result.rows[t] = run_trial(cfg, t, fixed_ptr);
    return result;
  }

  std::vector<std::exception_ptr> errors(cfg.trials);
  const auto trials = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto i = static_cast<std::uint64_t>(t);
    try {
      result.rows[i] = run_trial(cfg, i, fixed_ptr);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

void write_csv(std::ostream& out, const ExperimentResult& result, bool include_timing) {
  out << (include_timing ? kCsvHeader : kCsvHeader.substr(0, kCsvHeader.rfind(','))) << '\n';
  for (const auto& r : result.rows) {
    out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.k << ',' << to_string(r.algo)
        << ',' << to_string(r.instance) << ',' << r.queries << ','
        << (r.success ? "true" : "false");
    if (include_timing) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(3) << r.elapsed_ms;
      out << ',' << ms.str();
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const ExperimentResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"trial", r.trial},
                    {"seed", r.seed},
                    {"n", r.n},
                    {"k", r.k},
                    {"algo", to_string(r.algo)},
                    {"instance", to_string(r.instance)},
                    {"queries", r.queries},
                    {"success", r.success},
                    {"elapsed_ms", r.elapsed_ms}});
  }
  out << rows.dump(2) << '\n';
}

Instance parse_instance_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("instance file: ") + e.what());
  }
  try {
    const auto n = doc.at("n").get<Value>();
    const auto k = doc.at("k").get<Value>();
    auto items = doc.at("items").get<std::vector<Value>>();
    return Instance::make(n, k, std::move(items));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("instance file: ") + e.what());
  } catch (const std::domain_error& e) {
    throw DataError(std::string("instance file: ") + e.what());
  }
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string instance_to_json(const Instance& instance) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.n();
  doc["k"] = instance.k();
  doc["items"] = std::vector<Value>(instance.items().begin(), instance.items().end());
  return doc.dump();
}

double median(std::vector<QueryCount> values) {
  if (values.empty()) throw std::domain_error("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return static_cast<double>(values[mid]);
  return 0.5 * (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid]));
}

double fit_scaling(const std::vector<ScalingPoint>& points) {
  std::map<double, std::vector<QueryCount>> by_x;
  for (const auto& p : points) {
    if (!(p.x > 0.0)) throw std::domain_error("fit_scaling: x must be positive");
    if (p.queries == 0) throw std::domain_error("fit_scaling: queries must be positive");
    by_x[p.x].push_back(p.queries);
  }
  if (by_x.size() < 3) throw std::domain_error("fit_scaling: need at least 3 distinct x values");

  std::vector<double> xs;
  std::vector<double> ys;
  for (auto& [x, qs] : by_x) {
    xs.push_back(std::log2(x));
    ys.push_back(std::log2(median(std::move(qs))));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace ksearch
