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

#include "ksearch/kposition.hpp"

#include <algorithm>
#include <cmath>

namespace ksearch {

QueryCount queries_for_confidence(Value k, double delta, double rho) {
  if (k < 1) throw std::domain_error("queries_for_confidence: k must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("queries_for_confidence: delta must lie in (0, 1)");
  }
  const double gap = 2.0 * NoiseModel(rho).rho() - 1.0;
  const double kk = static_cast<double>(k);
  const double m = 2.0 * kk * kk * std::log2(2.0 / delta) / (gap * gap);
  return static_cast<QueryCount>(std::ceil(m));
}

Value round_leq_count(QueryCount x, QueryCount m, Value k, double rho) {
  if (rho == 1.0) {
    // Exact: smallest i with x/m <= (2i + 1) / (2k), i.e.
    // i = ceil((2xk - m) / 2m).
    const auto num = 2 * static_cast<__int128>(x) * k - static_cast<__int128>(m);
    const auto den = 2 * static_cast<__int128>(m);
    __int128 i = num >= 0 ? (num + den - 1) / den : -((-num) / den);
    return static_cast<Value>(std::clamp<__int128>(i, 0, k));
  }
  const double p_hat = static_cast<double>(x) / static_cast<double>(m);
  const double p = std::clamp((p_hat - (1.0 - rho)) / (2.0 * rho - 1.0), 0.0, 1.0);
  const double i = std::ceil(p * static_cast<double>(k) - 0.5);
  return std::clamp(static_cast<Value>(i), Value{0}, k);
}

KPosEstimate estimate_k_position(Oracle& oracle, Value y, QueryCount m) {
  const Instance& inst = oracle.instance();
  if (y < 0 || y > inst.n()) {
    throw std::domain_error("estimate_k_position: y outside [0, n]");
  }
  if (m == 0) throw std::domain_error("estimate_k_position: m must be >= 1");
  if (y == 0) return {0, 0, 0.0};
  if (y == inst.n()) return {inst.k(), 0, 1.0};

  QueryCount leq = 0;
  for (QueryCount i = 0; i < m; ++i) {
    if (oracle.query(y) == Response::kLeq) ++leq;
  }
  return {round_leq_count(leq, m, inst.k(), oracle.noise().rho()), m,
          static_cast<double>(leq) / static_cast<double>(m)};
}

}  // namespace ksearch
