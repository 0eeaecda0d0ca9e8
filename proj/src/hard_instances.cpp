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

#include "ksearch/hard_instances.hpp"

#include <string>
#include <vector>

namespace ksearch {

ClusterSpec ClusterSpec::make(Value n, Value k) {
  if (n < 1 || k < 1) throw std::domain_error("cluster: n and k must be >= 1");
  if (n % k != 0) {
    throw std::domain_error("cluster: k=" + std::to_string(k) +
                            " does not divide n=" + std::to_string(n));
  }
  return {n, k};
}

BinSpec BinSpec::make(Value n, Value k) {
  if (k < 4 || k % 4 != 0) throw std::domain_error("bins: k must be a positive multiple of 4");
  if (k > n - 2) {
    throw std::domain_error("bins: k/2 bins {2i, 2i+1} need k <= n - 2, got n=" +
                            std::to_string(n) + " k=" + std::to_string(k));
  }
  return {n, k};
}

Instance cluster_instance(Value n, Value k, std::uint64_t seed) {
  const ClusterSpec spec = ClusterSpec::make(n, k);
  Rng rng(seed);
  std::vector<Value> items;
  items.reserve(static_cast<std::size_t>(k));
  for (Value i = 1; i <= k; ++i) {
    items.push_back(rng.between(spec.cluster_low(i), spec.cluster_high(i)));
  }
  return Instance::make(n, k, std::move(items));
}

Instance bin_instance(Value n, Value k, std::uint64_t seed) {
  const BinSpec spec = BinSpec::make(n, k);
  Rng rng(seed);
  std::vector<Value> items(static_cast<std::size_t>(k / 4), 1);
  items.insert(items.end(), static_cast<std::size_t>(k / 4), n);
  for (Value i = 1; i <= spec.bins(); ++i) {
    items.push_back(2 * i + static_cast<Value>(rng.below(2)));
  }
  return Instance::make(n, k, std::move(items));
}

}  // namespace ksearch
