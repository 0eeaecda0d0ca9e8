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

#include <span>
#include <vector>

#include "ksearch/core_model.hpp"
#include "ksearch/walker.hpp"

namespace ksearch {

/// k-positions of every y in [1, n] and the per-value multiplicities they
/// imply. kpos_by_y[i] and counts[i] refer to y = i + 1.
struct DenseProfile {
  std::vector<Value> kpos_by_y;
  std::vector<Value> counts;

  Value total() const;
};

/// Running-maximum repair followed by differencing.
DenseProfile repair_profile(std::span<const Value> raw_kpos);

/// Expands counts into the sorted multiset they describe.
std::vector<Value> profile_multiset(const DenseProfile& profile);

/// Per-point budget used by solve_dense: queries_for_confidence(k, n^-(c+1), rho).
/// Zero when n = 1 (nothing to estimate).
QueryCount dense_point_budget(Value n, Value k, double c, double rho);

/// Estimates the k-position of every y in [1, n - 1] (y = n is forced) and
/// reads the multiset off the repaired profile. Intended for k >= n.
SolverReport solve_dense(Oracle& oracle, Value n, Value k, double c);

/// Repeated binary search: one search per target, every probe repeated
/// queries_for_confidence(k, delta / (k ceil(log2 n)), rho) times.
SolverReport solve_naive(Oracle& oracle, Value n, Value k, double delta);

/// Per-probe repetitions used by solve_naive. Zero when n = 1.
QueryCount naive_probe_budget(Value n, Value k, double delta, double rho);

}  // namespace ksearch
