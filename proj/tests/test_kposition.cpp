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

#include "doctest.h"
#include "ksearch/analysis.hpp"
#include "ksearch/kposition.hpp"

namespace ksearch {
namespace {

TEST_CASE("queries_for_confidence budgets") {
  CHECK(queries_for_confidence(2, 1.0 / 8) == 32);
  CHECK(queries_for_confidence(2, 1.0 / 16) == 40);
  CHECK(queries_for_confidence(1, 0.5) == 4);
  // 8k^2 and 10k^2 at the walker's two confidence levels.
  for (Value k = 1; k <= 12; ++k) {
    CHECK(queries_for_confidence(k, 1.0 / 8) == static_cast<QueryCount>(8 * k * k));
    CHECK(queries_for_confidence(k, 1.0 / 16) == static_cast<QueryCount>(10 * k * k));
  }
  // Noise scales the budget by (2 rho - 1)^-2.
  CHECK(queries_for_confidence(2, 1.0 / 8, 0.75) == 128);
  CHECK_THROWS_AS(queries_for_confidence(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(queries_for_confidence(2, 1.0), std::domain_error);
  CHECK_THROWS_AS(queries_for_confidence(2, 0.1, 0.5), std::domain_error);
}

TEST_CASE("round_leq_count: nearest grid point, ties down") {
  // k = 2, m = 32: grid 0, 16, 32 in Leq-count units; midpoints 8 and 24.
  CHECK(round_leq_count(0, 32, 2, 1.0) == 0);
  CHECK(round_leq_count(8, 32, 2, 1.0) == 0);
  CHECK(round_leq_count(9, 32, 2, 1.0) == 1);
  CHECK(round_leq_count(24, 32, 2, 1.0) == 1);
  CHECK(round_leq_count(25, 32, 2, 1.0) == 2);
  CHECK(round_leq_count(32, 32, 2, 1.0) == 2);
  // Projection: exact grid points map to themselves.
  for (Value k = 1; k <= 9; ++k) {
    for (Value i = 0; i <= k; ++i) {
      CHECK(round_leq_count(static_cast<QueryCount>(i * 7), static_cast<QueryCount>(k * 7), k, 1.0) == i);
    }
  }
  // Noisy de-biasing: rho = 0.75 maps raw 0.25 -> 0, 0.5 -> 1/2, 0.75 -> 1.
  CHECK(round_leq_count(25, 100, 2, 0.75) == 0);
  CHECK(round_leq_count(50, 100, 2, 0.75) == 1);
  CHECK(round_leq_count(75, 100, 2, 0.75) == 2);
  CHECK(round_leq_count(0, 100, 2, 0.75) == 0);    // clamped below
  CHECK(round_leq_count(100, 100, 2, 0.75) == 2);  // clamped above
}

TEST_CASE("estimate_k_position boundaries are free") {
  Oracle oracle(make_instance(16, 2, {3, 10}), NoiseModel(), 5);
  const KPosEstimate top = estimate_k_position(oracle, 16, 32);
  CHECK(top.k_pos == 2);
  CHECK(top.m_used == 0);
  const KPosEstimate bottom = estimate_k_position(oracle, 0, 32);
  CHECK(bottom.k_pos == 0);
  CHECK(bottom.m_used == 0);
  CHECK(oracle.query_count() == 0);
  CHECK_THROWS_AS(estimate_k_position(oracle, 17, 32), std::domain_error);
  CHECK_THROWS_AS(estimate_k_position(oracle, 5, 0), std::domain_error);
}

TEST_CASE("estimate_k_position is exact when every item is on one side") {
  Oracle oracle(make_instance(16, 3, {5, 6, 7}), NoiseModel(), 11);
  for (QueryCount m : {1u, 2u, 17u}) {
    const KPosEstimate lo = estimate_k_position(oracle, 4, m);
    CHECK(lo.k_pos == 0);
    CHECK(lo.p_hat == 0.0);
    const KPosEstimate hi = estimate_k_position(oracle, 7, m);
    CHECK(hi.k_pos == 3);
    CHECK(hi.p_hat == 1.0);
    CHECK(hi.m_used == m);
  }
  CHECK(oracle.query_count() == 2 * (1 + 2 + 17));
}

TEST_CASE("estimate_k_position Monte Carlo agrees with the exact binomial oracle") {
  // S = {3, 10}, y = 8: true k-position 1, m = 32.
  const double exact = estimator_success_prob(2, 32, 1, 1.0);
  CHECK(exact >= 7.0 / 8.0);
  Oracle oracle(make_instance(16, 2, {3, 10}), NoiseModel(), 31337);
  constexpr int kTrials = 20000;
  int correct = 0;
  for (int i = 0; i < kTrials; ++i) correct += estimate_k_position(oracle, 8, 32).k_pos == 1;
  CHECK(std::abs(static_cast<double>(correct) / kTrials - exact) <= 0.01);
  CHECK(oracle.query_count() == 32u * kTrials);
}

}  // namespace
}  // namespace ksearch
