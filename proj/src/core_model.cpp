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

#include "ksearch/core_model.hpp"

#include <algorithm>
#include <unordered_set>

namespace ksearch {

Instance Instance::make(Value n, Value k, std::vector<Value> items) {
  if (n < 1) throw std::domain_error("instance: n must be >= 1");
  if (k < 1) throw std::domain_error("instance: k must be >= 1");
  if (static_cast<Value>(items.size()) != k) {
    throw std::domain_error("instance: expected " + std::to_string(k) +
                            " items, got " + std::to_string(items.size()));
  }
  for (Value v : items) {
    if (v < 1 || v > n) {
      throw std::domain_error("instance: item " + std::to_string(v) +
                              " outside [1, " + std::to_string(n) + "]");
    }
  }
  std::sort(items.begin(), items.end());
  return Instance(n, std::move(items));
}

Value Instance::order_statistic(Value t) const {
  if (t < 1 || t > k()) throw std::domain_error("order_statistic: t out of range");
  return items_[static_cast<std::size_t>(t - 1)];
}

Value Instance::k_position(Value y) const {
  if (y < 0 || y > n_) {
    throw std::domain_error("k_position: y=" + std::to_string(y) +
                            " outside [0, " + std::to_string(n_) + "]");
  }
  return std::upper_bound(items_.begin(), items_.end(), y) - items_.begin();
}

Instance sample_instance(Value n, Value k, SampleMode mode, std::uint64_t seed) {
  if (n < 1 || k < 1) throw std::domain_error("sample_instance: n, k must be >= 1");
  Rng rng(seed);
  std::vector<Value> items;
  items.reserve(static_cast<std::size_t>(k));
  if (mode == SampleMode::kWithReplacement) {
    for (Value i = 0; i < k; ++i) items.push_back(rng.between(1, n));
  } else {
    if (k > n) throw std::domain_error("sample_instance: distinct mode needs k <= n");
    // Floyd's subset sampling: one draw per element.
    std::unordered_set<Value> chosen;
    for (Value j = n - k + 1; j <= n; ++j) {
      const Value r = rng.between(1, j);
      const Value pick = chosen.contains(r) ? j : r;
      chosen.insert(pick);
      items.push_back(pick);
    }
  }
  return Instance::make(n, k, std::move(items));
}

NoiseModel::NoiseModel(double rho) : rho_(rho) {
  if (!(rho > 0.5 && rho <= 1.0)) {
    throw std::domain_error("noise: rho must lie in (1/2, 1]");
  }
}

double NoiseModel::leq_probability(Value k_pos, Value k) const noexcept {
  const double frac = static_cast<double>(k_pos) / static_cast<double>(k);
  return rho_ * frac + (1.0 - rho_) * (1.0 - frac);
}

Oracle::Oracle(Instance instance, NoiseModel noise, std::uint64_t seed)
    : instance_(std::move(instance)), noise_(noise), rng_(seed) {}

Response Oracle::query(Value y) {
  if (y < 1 || y > instance_.n()) {
    throw std::domain_error("query: y=" + std::to_string(y) + " outside [1, " +
                            std::to_string(instance_.n()) + "]");
  }
  const auto items = instance_.items();
  const Value picked = items[rng_.below(items.size())];
  bool leq = picked <= y;
  if (!noise_.noiseless() && !rng_.bernoulli(noise_.rho())) leq = !leq;
  ++query_count_;
  return leq ? Response::kLeq : Response::kGt;
}

std::string to_string(Response r) { return r == Response::kLeq ? "<=" : ">"; }

}  // namespace ksearch
