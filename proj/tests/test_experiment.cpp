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

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "ksearch/experiment.hpp"

namespace ksearch {
namespace {

std::string csv_without_timing(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(out, r, false);
  return out.str();
}

TEST_CASE("fit_scaling") {
  std::vector<ScalingPoint> cubic;
  for (double k : {2.0, 4.0, 8.0}) cubic.push_back({k, static_cast<QueryCount>(7 * k * k * k)});
  CHECK(fit_scaling(cubic) == doctest::Approx(3.0).epsilon(1e-12));

  // Medians per x, not means: one outlier per x does not move the slope.
  std::vector<ScalingPoint> noisy;
  for (double x : {1.0, 2.0, 4.0, 8.0}) {
    for (int i = 0; i < 5; ++i) noisy.push_back({x, static_cast<QueryCount>(100 * x)});
    noisy.push_back({x, 1'000'000});
  }
  CHECK(fit_scaling(noisy) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(fit_scaling({{1.0, 5}, {2.0, 6}}), std::domain_error);
  CHECK_THROWS_AS(fit_scaling({{1.0, 5}, {2.0, 6}, {2.0, 7}}), std::domain_error);
  CHECK_THROWS_AS(fit_scaling({{1.0, 5}, {2.0, 6}, {3.0, 0}}), std::domain_error);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK_THROWS_AS(median({}), std::domain_error);
}

TEST_CASE("parse names") {
  CHECK(parse_algo("dense") == Algo::kDense);
  CHECK_THROWS_AS(parse_algo("quick"), std::invalid_argument);
  CHECK(parse_instance_kind("bins").first == InstanceKind::kBins);
  const auto [kind, path] = parse_instance_kind("file:/tmp/x.json");
  CHECK(kind == InstanceKind::kFile);
  CHECK(path == "/tmp/x.json");
  CHECK_THROWS_AS(parse_instance_kind("file:"), std::invalid_argument);
}

TEST_CASE("validate rejects configurations outside the preconditions") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  auto bad = [&](auto mutate) {
    ExperimentConfig c = cfg;
    mutate(c);
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
  };
  bad([](ExperimentConfig& c) { c.trials = 0; });
  bad([](ExperimentConfig& c) { c.delta = 1.0; });
  bad([](ExperimentConfig& c) { c.rho = 0.5; });
  bad([](ExperimentConfig& c) { c.k = 20; });  // walker needs k <= n
  bad([](ExperimentConfig& c) {
    c.instance = InstanceKind::kCluster;
    c.k = 3;
  });
  bad([](ExperimentConfig& c) {
    c.instance = InstanceKind::kBins;
    c.k = 6;
  });
  bad([](ExperimentConfig& c) {
    c.algo = Algo::kDense;
    c.dense_c = 0.0;
  });
  ExperimentConfig dense = cfg;
  dense.algo = Algo::kDense;
  dense.n = 4;
  dense.k = 9;
  CHECK_NOTHROW(validate(dense));
}

TEST_CASE("run_experiment is deterministic and the parallel path matches serial") {
  ExperimentConfig cfg;
  cfg.n = 64;
  cfg.k = 3;
  cfg.trials = 12;
  cfg.master_seed = 99;
  for (Algo algo : {Algo::kWalker, Algo::kNaive, Algo::kDense}) {
    cfg.algo = algo;
    const ExperimentResult serial = run_experiment(cfg, Execution::kSerial);
    const ExperimentResult parallel = run_experiment(cfg, Execution::kParallel);
    const ExperimentResult again = run_experiment(cfg, Execution::kParallel);
    CHECK(csv_without_timing(serial) == csv_without_timing(parallel));
    CHECK(csv_without_timing(parallel) == csv_without_timing(again));
    REQUIRE(serial.rows.size() == 12);
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
      CHECK(serial.rows[i].trial == i);
      CHECK(serial.rows[i].seed == derive_seed(99, i));
      CHECK(serial.rows[i].queries > 0);
    }
  }
}

TEST_CASE("success flags agree with multiset equality") {
  ExperimentConfig cfg;
  cfg.n = 32;
  cfg.k = 3;
  cfg.delta = 0.5;
  cfg.trials = 30;
  cfg.master_seed = 4;
  cfg.algo = Algo::kNaive;
  cfg.rho = 0.7;  // naive with noise and a loose delta: some trials fail
  const ExperimentResult res = run_experiment(cfg, Execution::kSerial);
  for (const auto& row : res.rows) {
    const Instance truth = make_trial_instance(cfg, row.seed);
    Oracle oracle(truth, NoiseModel(cfg.rho), oracle_seed(row.seed));
    const SolverReport rep = run_solver(cfg, oracle);
    CHECK(rep.total_queries == row.queries);
    const bool equal = std::equal(rep.recovered.begin(), rep.recovered.end(),
                                  truth.items().begin(), truth.items().end());
    CHECK(row.success == (rep.complete() && equal));
  }
}

TEST_CASE("CSV and JSON schema") {
  ExperimentConfig cfg;
  cfg.trials = 3;
  const ExperimentResult res = run_experiment(cfg);
  std::ostringstream csv;
  write_csv(csv, res);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "trial,seed,n,k,algo,instance,queries,success,elapsed_ms");
  std::string row;
  int count = 0;
  while (std::getline(lines, row)) {
    ++count;
    CHECK(std::count(row.begin(), row.end(), ',') == 8);
    CHECK(row.find(",walker,uniform,") != std::string::npos);
  }
  CHECK(count == 3);

  std::ostringstream js;
  write_json(js, res);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 3);
  CHECK(doc[1]["trial"] == 1);
  CHECK(doc[1]["seed"].get<std::uint64_t>() == res.rows[1].seed);
  CHECK(doc[1]["algo"] == "walker");
  CHECK(doc[1]["success"].is_boolean());
}

TEST_CASE("instance files") {
  const Instance s = parse_instance_json(R"({"n": 16, "k": 2, "items": [10, 3]})");
  CHECK(s == make_instance(16, 2, {3, 10}));
  CHECK(parse_instance_json(instance_to_json(s)) == s);
  CHECK_THROWS_AS(parse_instance_json("{"), DataError);
  CHECK_THROWS_AS(parse_instance_json(R"({"n": 16, "k": 2})"), DataError);
  CHECK_THROWS_AS(parse_instance_json(R"({"n": 16, "k": 2, "items": [3, 17]})"), DataError);
  CHECK_THROWS_AS(parse_instance_json(R"({"n": "x", "k": 2, "items": [3, 4]})"), DataError);
  CHECK_THROWS_AS(load_instance_file("/nonexistent/instance.json"), DataError);

  const std::string path = std::string(KSEARCH_TEST_TMPDIR) + "/unit_instance.json";
  std::ofstream(path) << instance_to_json(s);
  ExperimentConfig cfg;
  cfg.instance = InstanceKind::kFile;
  cfg.instance_path = path;
  cfg.trials = 4;
  const ExperimentResult res = run_experiment(cfg);
  for (const auto& row : res.rows) CHECK(row.instance == InstanceKind::kFile);
  cfg.n = 17;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace ksearch
