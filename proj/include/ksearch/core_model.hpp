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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ksearch/rng.hpp"

namespace ksearch {

using Value = std::int64_t;
using QueryCount = std::uint64_t;

/// Malformed external data (instance files and the like).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation refused because it would exceed a fixed size guard.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The hidden multiset: k integers in [1, n], stored sorted.
class Instance {
 public:
  /// Validates and canonicalizes. Throws std::domain_error when n or k is
  /// non-positive, when items.size() != k, or when any item is outside [1, n].
  static Instance make(Value n, Value k, std::vector<Value> items);

  Value n() const noexcept { return n_; }
  Value k() const noexcept { return static_cast<Value>(items_.size()); }
  std::span<const Value> items() const noexcept { return items_; }

  /// t-th smallest element, 1-based.
  Value order_statistic(Value t) const;

  /// Number of items <= y, with multiplicity. y must lie in [0, n].
  Value k_position(Value y) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance(Value n, std::vector<Value> items)
      : n_(n), items_(std::move(items)) {}

  Value n_;
  std::vector<Value> items_;
};

inline Instance make_instance(Value n, Value k, std::vector<Value> items) {
  return Instance::make(n, k, std::move(items));
}

inline Value k_position_true(const Instance& instance, Value y) {
  return instance.k_position(y);
}

enum class SampleMode { kWithReplacement, kDistinct };

/// Random instance: k i.i.d. uniform values, or a uniform k-subset of [1, n].
Instance sample_instance(Value n, Value k, SampleMode mode, std::uint64_t seed);

/// Per-query probability that the comparison is reported truthfully.
class NoiseModel {
 public:
  /// Throws std::domain_error unless 1/2 < rho <= 1.
  explicit NoiseModel(double rho = 1.0);

  double rho() const noexcept { return rho_; }
  bool noiseless() const noexcept { return rho_ == 1.0; }

  /// Pr[Leq] for a query whose true k-position is `k_pos` out of `k`.
  double leq_probability(Value k_pos, Value k) const noexcept;

 private:
  double rho_;
};

/// Leq: the sampled element is <= y. Gt: it is > y.
enum class Response : std::uint8_t { kLeq, kGt };

struct TranscriptEntry {
  Value y;
  Response response;
};

using Transcript = std::vector<TranscriptEntry>;

/// Query simulator. Each query draws a fresh uniform element of the instance,
/// compares it with y, and flips the answer with probability 1 - rho.
///
/// Single-owner: movable across threads, never shared between them.
class Oracle {
 public:
  Oracle(Instance instance, NoiseModel noise, std::uint64_t seed);

  /// Throws std::domain_error unless 1 <= y <= n.
  Response query(Value y);

  QueryCount query_count() const noexcept { return query_count_; }
  const Instance& instance() const noexcept { return instance_; }
  const NoiseModel& noise() const noexcept { return noise_; }

 private:
  Instance instance_;
  NoiseModel noise_;
  Rng rng_;
  QueryCount query_count_ = 0;
};

std::string to_string(Response r);

}  // namespace ksearch
