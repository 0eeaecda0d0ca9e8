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

#include "ksearch/core_model.hpp"

namespace ksearch {

struct KPosEstimate {
  Value k_pos = 0;
  QueryCount m_used = 0;
  double p_hat = 0.0;
};

/// Repetitions of one query point so that its k-position is recovered with
/// probability at least 1 - delta:
///
///   m = ceil(2 k^2 log2(2 / delta) / (2 rho - 1)^2)
///
/// For rho = 1 this is the plain 2 k^2 log2(2 / delta) budget; with comparison
/// noise the grid spacing in Leq-frequency shrinks by (2 rho - 1).
QueryCount queries_for_confidence(Value k, double delta, double rho = 1.0);

/// Queries y `m` times and rounds the de-noised Leq frequency to the nearest
/// multiple of 1/k (ties toward the smaller multiple). y = 0 and y = n are
/// answered for free. Throws std::domain_error when y is outside [0, n] or
/// m is zero.
KPosEstimate estimate_k_position(Oracle& oracle, Value y, QueryCount m);

/// The rounding step alone: maps x Leq answers out of m to a k-position.
Value round_leq_count(QueryCount x, QueryCount m, Value k, double rho);

}  // namespace ksearch
