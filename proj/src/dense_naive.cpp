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

#include "ksearch/dense_naive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "ksearch/kposition.hpp"

namespace ksearch {

namespace {

void check_solver_args(const Oracle& oracle, Value n, Value k) {
  const Instance& inst = oracle.instance();
  if (n != inst.n() || k != inst.k()) {
    throw std::invalid_argument("solver: (n, k) do not match the oracle's instance");
  }
}

Value ceil_log2(Value n) {
  return static_cast<Value>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
}

}  // namespace

Value DenseProfile::total() const {
  return std::accumulate(counts.begin(), counts.end(), Value{0});
}

DenseProfile repair_profile(std::span<const Value> raw_kpos) {
  DenseProfile profile;
  profile.kpos_by_y.reserve(raw_kpos.size());
  profile.counts.reserve(raw_kpos.size());
  Value running = 0;
  for (Value v : raw_kpos) {
    const Value prev = running;
    running = std::max(running, v);
    profile.kpos_by_y.push_back(running);
    profile.counts.push_back(running - prev);
  }
  return profile;
}

std::vector<Value> profile_multiset(const DenseProfile& profile) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(profile.counts[i]),
               static_cast<Value>(i + 1));
  }
  return out;
}

QueryCount dense_point_budget(Value n, Value k, double c, double rho) {
  if (!(c > 0.0)) throw std::domain_error("solve_dense: c must be positive");
  if (n == 1) return 0;
  const double delta = std::pow(static_cast<double>(n), -(c + 1.0));
  return queries_for_confidence(k, delta, rho);
}

SolverReport solve_dense(Oracle& oracle, Value n, Value k, double c) {
  check_solver_args(oracle, n, k);
  const QueryCount budget = dense_point_budget(n, k, c, oracle.noise().rho());
  const QueryCount before = oracle.query_count();

  std::vector<Value> raw;
  raw.reserve(static_cast<std::size_t>(n));
  for (Value y = 1; y < n; ++y) raw.push_back(estimate_k_position(oracle, y, budget).k_pos);
  raw.push_back(k);

  const DenseProfile profile = repair_profile(raw);
  SolverReport report;
  report.total_queries = oracle.query_count() - before;

  // Queries are shared across targets; attribute them evenly so that the
  // per-target column still sums to the total.
  const QueryCount share = report.total_queries / static_cast<QueryCount>(k);
  QueryCount remainder = report.total_queries % static_cast<QueryCount>(k);
  const bool ok = profile.total() == k;
  std::vector<Value> values = ok ? profile_multiset(profile) : std::vector<Value>{};
  for (Value t = 1; t <= k; ++t) {
    TargetResult r{t, std::nullopt, share + (remainder > 0 ? 1 : 0)};
    if (remainder > 0) --remainder;
    if (ok) r.value = values[static_cast<std::size_t>(t - 1)];
    report.per_target.push_back(r);
  }
  if (ok) report.recovered = std::move(values);
  return report;
}

QueryCount naive_probe_budget(Value n, Value k, double delta, double rho) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("solve_naive: delta must lie in (0, 1)");
  }
  if (n == 1) return 0;
  const double per_probe =
      delta / (static_cast<double>(k) * static_cast<double>(ceil_log2(n)));
  return queries_for_confidence(k, per_probe, rho);
}

SolverReport solve_naive(Oracle& oracle, Value n, Value k, double delta) {
  check_solver_args(oracle, n, k);
  if (k > n) throw std::domain_error("solve_naive: requires k <= n");
  const QueryCount budget = naive_probe_budget(n, k, delta, oracle.noise().rho());

  SolverReport report;
  for (Value t = 1; t <= k; ++t) {
    const QueryCount before = oracle.query_count();
    // Invariant (as estimated): K(lo - 1) <= t - 1 and K(hi) >= t.
    Value lo = 1;
    Value hi = n;
    while (lo < hi) {
      const Value y = lo + (hi - lo) / 2;
      if (estimate_k_position(oracle, y, budget).k_pos >= t) {
        hi = y;
      } else {
        lo = y + 1;
      }
    }
    report.per_target.push_back({t, lo, oracle.query_count() - before});
    report.recovered.push_back(lo);
    report.total_queries += report.per_target.back().queries;
  }
  std::sort(report.recovered.begin(), report.recovered.end());
  return report;
}

}  // namespace ksearch
