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

#include <cstdint>

#include "ksearch/core_model.hpp"

namespace ksearch {

/// [1, n] cut into k consecutive clusters of width n / k.
struct ClusterSpec {
  Value n;
  Value k;

  /// Throws std::domain_error unless k >= 1 and k divides n.
  static ClusterSpec make(Value n, Value k);
  Value width() const noexcept { return n / k; }
  Value cluster_low(Value i) const noexcept { return (i - 1) * width() + 1; }
  Value cluster_high(Value i) const noexcept { return i * width(); }
};

/// k/4 copies each of 1 and n, plus k/2 two-element bins {2i, 2i + 1}.
struct BinSpec {
  Value n;
  Value k;

  /// Throws std::domain_error unless 4 | k and every bin fits inside
  /// [2, n - 1], i.e. k <= n - 2.
  static BinSpec make(Value n, Value k);
  Value bins() const noexcept { return k / 2; }
};

/// One uniform element in each cluster.
Instance cluster_instance(Value n, Value k, std::uint64_t seed);

/// k/4 ones, k/4 copies of n, and one uniform element from each bin.
Instance bin_instance(Value n, Value k, std::uint64_t seed);

}  // namespace ksearch
