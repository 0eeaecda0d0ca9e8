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

// ksearch: solve one hidden instance, run seeded Monte Carlo benchmarks, or
// sweep k / n and fit the query-count scaling exponent.
//
// Exit codes: 0 success, 2 usage error, 3 data error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ksearch/experiment.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Options {
  ksearch::ExperimentConfig cfg;
  std::string algo = "walker";
  std::string instance = "uniform";
  std::string out_path;
  std::string format = "csv";
  std::string sweep = "k";
  std::vector<ksearch::Value> values;
};

void add_common(CLI::App* cmd, Options& o, bool with_trials) {
  cmd->add_option("--n", o.cfg.n, "Range upper bound");
  cmd->add_option("--k", o.cfg.k, "Multiset size");
  cmd->add_option("--delta", o.cfg.delta, "Target failure probability (walker, naive)");
  cmd->add_option("--rho", o.cfg.rho, "Per-query comparison correctness in (1/2, 1]");
  cmd->add_option("--seed", o.cfg.master_seed, "Master seed");
  cmd->add_option("--algo", o.algo, "walker | dense | naive");
  cmd->add_option("--instance", o.instance, "uniform | distinct | cluster | bins | file:PATH");
  cmd->add_option("--dense-c", o.cfg.dense_c, "Error exponent c for the dense solver");
  cmd->add_flag("--faithful-chain-queries", o.cfg.faithful_chain_queries,
                "Spend the midpoint budget on leaf-chain steps too");
  cmd->add_option("--out", o.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  if (with_trials) cmd->add_option("--trials", o.cfg.trials, "Monte Carlo trials");
}

// Resolves names and, for file instances, takes (n, k) from the file.
void finalize(const CLI::App* cmd, Options& o) {
  o.cfg.algo = ksearch::parse_algo(o.algo);
  auto [kind, path] = ksearch::parse_instance_kind(o.instance);
  o.cfg.instance = kind;
  o.cfg.instance_path = path;
  if (kind == ksearch::InstanceKind::kFile) {
    const ksearch::Instance inst = ksearch::load_instance_file(path);
    if ((cmd->count("--n") && o.cfg.n != inst.n()) ||
        (cmd->count("--k") && o.cfg.k != inst.k())) {
      throw std::invalid_argument("--n/--k disagree with the instance file");
    }
    o.cfg.n = inst.n();
    o.cfg.k = inst.k();
  }
  ksearch::validate(o.cfg);
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  fn(out);
}

void write_result(const Options& o, const ksearch::ExperimentResult& result) {
  with_output(o.out_path, [&](std::ostream& out) {
    if (o.format == "json") {
      ksearch::write_json(out, result);
    } else {
      ksearch::write_csv(out, result);
    }
  });
}

int run_solve(const CLI::App* cmd, Options& o) {
  finalize(cmd, o);
  const std::uint64_t seed = ksearch::derive_seed(o.cfg.master_seed, 0);
  std::optional<ksearch::Instance> fixed;
  if (o.cfg.instance == ksearch::InstanceKind::kFile) {
    fixed = ksearch::load_instance_file(o.cfg.instance_path);
  }
  const ksearch::Instance inst =
      ksearch::make_trial_instance(o.cfg, seed, fixed ? &*fixed : nullptr);
  ksearch::Oracle oracle(inst, ksearch::NoiseModel(o.cfg.rho), ksearch::oracle_seed(seed));
  const ksearch::SolverReport report = ksearch::run_solver(o.cfg, oracle);

  with_output(o.out_path, [&](std::ostream& out) {
    if (o.format == "json") {
      nlohmann::ordered_json doc;
      doc["algo"] = ksearch::to_string(o.cfg.algo);
      doc["instance"] = nlohmann::json::parse(ksearch::instance_to_json(inst));
      doc["recovered"] = report.recovered;
      nlohmann::ordered_json targets = nlohmann::ordered_json::array();
      for (const auto& r : report.per_target) {
        nlohmann::ordered_json row;
        row["t"] = r.t;
        row["value"] = r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json();
        row["queries"] = r.queries;
        targets.push_back(row);
      }
      doc["per_target"] = targets;
      doc["total_queries"] = report.total_queries;
      doc["success"] = report.success.value_or(false);
      out << doc.dump(2) << '\n';
      return;
    }
    out << "algo           " << ksearch::to_string(o.cfg.algo) << '\n'
        << "instance       " << ksearch::instance_to_json(inst) << '\n'
        << "recovered      [";
    for (std::size_t i = 0; i < report.recovered.size(); ++i) {
      out << (i ? ", " : "") << report.recovered[i];
    }
    out << "]\n";
    for (const auto& r : report.per_target) {
      out << "  t=" << r.t << "  value="
          << (r.value ? std::to_string(*r.value) : std::string("FAIL"))
          << "  queries=" << r.queries << '\n';
    }
    out << "total_queries  " << report.total_queries << '\n'
        << "success        " << (report.success.value_or(false) ? "true" : "false") << '\n';
  });
  return 0;
}

int run_bench(const CLI::App* cmd, Options& o) {
  finalize(cmd, o);
  write_result(o, ksearch::run_experiment(o.cfg));
  return 0;
}

int run_scaling(const CLI::App* cmd, Options& o) {
  finalize(cmd, o);
  if (o.values.size() < 3) throw std::invalid_argument("--values needs at least 3 entries");
  if (o.cfg.instance == ksearch::InstanceKind::kFile) {
    throw std::invalid_argument("scaling sweeps cannot use a fixed instance file");
  }

  std::vector<ksearch::ScalingPoint> points;
  ksearch::ExperimentResult all;
  std::cout << (o.sweep == "k" ? "k" : "n") << "\tx\tmedian_queries\tsuccess_rate\n";
  for (ksearch::Value v : o.values) {
    ksearch::ExperimentConfig cfg = o.cfg;
    (o.sweep == "k" ? cfg.k : cfg.n) = v;
    const ksearch::ExperimentResult res = ksearch::run_experiment(cfg);
    const double x = o.sweep == "k" ? static_cast<double>(v)
                                    : std::log2(static_cast<double>(v));
    for (const auto q : res.queries()) points.push_back({x, q});
    std::cout << v << '\t' << x << '\t' << ksearch::median(res.queries()) << '\t'
              << res.success_rate() << '\n';
    all.rows.insert(all.rows.end(), res.rows.begin(), res.rows.end());
  }
  std::cout << "slope\t" << ksearch::fit_scaling(points) << '\n';
  if (!o.out_path.empty()) write_result(o, all);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover a hidden multiset from comparison queries answered by a random element"};
  app.require_subcommand(1);

  Options solve_opts;
  Options bench_opts;
  Options scaling_opts;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance and print the report");
  add_common(solve, solve_opts, false);
  CLI::App* bench = app.add_subcommand("bench", "Monte Carlo trials; writes one row per trial");
  add_common(bench, bench_opts, true);
  CLI::App* scaling = app.add_subcommand("scaling", "Sweep k or n and fit the scaling slope");
  add_common(scaling, scaling_opts, true);
  scaling->add_option("--sweep", scaling_opts.sweep, "Parameter to sweep: k | n")
      ->check(CLI::IsMember({"k", "n"}));
  scaling->add_option("--values", scaling_opts.values, "Sweep values (x = k, or log2 n)")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve, solve_opts);
    if (*bench) return run_bench(bench, bench_opts);
    return run_scaling(scaling, scaling_opts);
  } catch (const ksearch::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}
