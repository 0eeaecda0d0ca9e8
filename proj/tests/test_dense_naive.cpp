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

#include <bit>
#include <vector>

#include "doctest.h"
#include "ksearch/dense_naive.hpp"
#include "ksearch/kposition.hpp"

namespace ksearch {
namespace {

std::vector<Value> true_profile(const Instance& s) {
  std::vector<Value> out;
  for (Value y = 1; y <= s.n(); ++y) out.push_back(s.k_position(y));
  return out;
}

TEST_CASE("repair_profile differencing on exact profiles") {
  const Instance s = make_instance(4, 4, {1, 2, 2, 4});
  const DenseProfile p = repair_profile(true_profile(s));
  CHECK(p.kpos_by_y == std::vector<Value>{1, 3, 3, 4});
  CHECK(p.counts == std::vector<Value>{1, 2, 0, 1});
  CHECK(profile_multiset(p) == std::vector<Value>{1, 2, 2, 4});
}

TEST_CASE("exact profiles recover every instance") {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const Value n = rng.between(1, 12);
    const Value k = rng.between(1, 20);
    const Instance s = sample_instance(n, k, SampleMode::kWithReplacement, rng.next());
    const DenseProfile p = repair_profile(true_profile(s));
    CHECK(p.total() == k);
    const std::vector<Value> got = profile_multiset(p);
    CHECK(std::equal(got.begin(), got.end(), s.items().begin(), s.items().end()));
  }
}

TEST_CASE("monotone repair never lowers and fixes monotone input") {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    std::vector<Value> raw(static_cast<std::size_t>(rng.between(1, 15)));
    for (auto& v : raw) v = rng.between(0, 9);
    const DenseProfile p = repair_profile(raw);
    for (std::size_t j = 0; j < raw.size(); ++j) {
      CHECK(p.kpos_by_y[j] >= raw[j]);
      if (j > 0) CHECK(p.kpos_by_y[j] >= p.kpos_by_y[j - 1]);
    }
    std::sort(raw.begin(), raw.end());
    CHECK(repair_profile(raw).kpos_by_y == raw);
  }
}

TEST_CASE("solve_dense") {
  SUBCASE("n = 1 costs nothing") {
    Oracle oracle(make_instance(1, 5, {1, 1, 1, 1, 1}), NoiseModel(), 1);
    SolverReport rep = solve_dense(oracle, 1, 5, 1.0);
    rep.check_against(oracle.instance());
    CHECK(rep.success == true);
    CHECK(rep.total_queries == 0);
  }
  SUBCASE("query count equals the closed-form budget") {
    // n = 8, k = 12, c = 1: delta = 1/64, 2 * 144 * log2(128) = 2016 per point.
    CHECK(dense_point_budget(8, 12, 1.0, 1.0) == 2016);
    Oracle oracle(make_instance(8, 12, {1, 1, 2, 3, 3, 3, 5, 6, 8, 8, 8, 8}), NoiseModel(), 2);
    SolverReport rep = solve_dense(oracle, 8, 12, 1.0);
    CHECK(rep.total_queries == 7 * 2016);
    CHECK(rep.per_target.size() == 12);
    QueryCount sum = 0;
    for (const auto& r : rep.per_target) sum += r.queries;
    CHECK(sum == rep.total_queries);
  }
  SUBCASE("success rate on k >= n") {
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Oracle oracle(sample_instance(8, 12, SampleMode::kWithReplacement, seed), NoiseModel(),
                    derive_seed(seed, 9));
      SolverReport rep = solve_dense(oracle, 8, 12, 1.0);
      rep.check_against(oracle.instance());
      ok += rep.success.value();
    }
    CHECK(ok >= 51);
  }
  CHECK_THROWS_AS(dense_point_budget(8, 12, 0.0, 1.0), std::domain_error);
}

TEST_CASE("solve_naive") {
  SUBCASE("probe sequence on the small example") {
    // delta_per = 0.1 / (2 * 4); each probe repeats 59 times.
    CHECK(naive_probe_budget(16, 2, 0.1, 1.0) == queries_for_confidence(2, 0.0125));
    CHECK(naive_probe_budget(16, 2, 0.1, 1.0) == 59);
    int ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Oracle oracle(make_instance(16, 2, {3, 10}), NoiseModel(), seed);
      SolverReport rep = solve_naive(oracle, 16, 2, 0.1);
      rep.check_against(oracle.instance());
      ok += rep.success.value();
      // Four probes per target (y = 8, 4, 2, 3 for the first when exact).
      for (const auto& r : rep.per_target) CHECK(r.queries == 4 * 59);
    }
    CHECK(ok >= 45);
  }
  SUBCASE("n = 2, single exact probe") {
    Oracle oracle(make_instance(2, 1, {2}), NoiseModel(), 1);
    SolverReport rep = solve_naive(oracle, 2, 1, 0.1);
    rep.check_against(oracle.instance());
    CHECK(rep.success == true);
    CHECK(rep.total_queries == naive_probe_budget(2, 1, 0.1, 1.0));
  }
  SUBCASE("probe count per target is within one of ceil(log2 n)") {
    for (Value n : {3, 5, 6, 7, 9, 100, 1000}) {
      const QueryCount budget = naive_probe_budget(n, 3, 0.1, 1.0);
      const auto ceil_log = static_cast<QueryCount>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
      Oracle oracle(sample_instance(n, 3, SampleMode::kWithReplacement, static_cast<std::uint64_t>(n)),
                    NoiseModel(), 3);
      const SolverReport rep = solve_naive(oracle, n, 3, 0.1);
      for (const auto& r : rep.per_target) {
        CHECK(r.queries % budget == 0);
        CHECK(r.queries / budget <= ceil_log + 1);
        CHECK(r.queries / budget + 1 >= ceil_log);
      }
    }
  }
  Oracle big(make_instance(3, 4, {1, 1, 2, 3}), NoiseModel(), 1);
  CHECK_THROWS_AS(solve_naive(big, 3, 4, 0.1), std::domain_error);
}

}  // namespace
}  // namespace ksearch
