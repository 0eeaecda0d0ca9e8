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

#include <optional>
#include <vector>

#include "ksearch/core_model.hpp"

namespace ksearch {

/// Outcome for one target t of a solver.
struct TargetResult {
  Value t = 0;
  std::optional<Value> value;  // empty on failure
  QueryCount queries = 0;
};

struct SolverReport {
  std::vector<Value> recovered;  // sorted; successful targets only
  QueryCount total_queries = 0;
  std::vector<TargetResult> per_target;
  std::optional<bool> success;  // set by check_against()

  bool complete() const;
  /// Multiset comparison with the ground truth; sets `success`.
  void check_against(const Instance& truth);
};

/// Node of the implicit search tree: an interval [a, b], or a position
/// `chain_depth` steps down the chain hanging below leaf a == b.
struct WalkNode {
  Value a = 1;
  Value b = 1;
  Value chain_depth = 0;

  bool is_leaf() const noexcept { return a == b; }
  friend bool operator==(const WalkNode&, const WalkNode&) = default;
};

WalkNode root_node(Value n);
Value midpoint(const WalkNode& node);

struct Children {
  WalkNode left;
  WalkNode right;
};
/// Requires a < b.
Children children(const WalkNode& node);

/// Tree parent of an interval node (chain_depth == 0). The root is its own
/// parent.
WalkNode parent(const WalkNode& node, Value n);

struct WalkConfig {
  QueryCount m = 1;        // walk steps
  QueryCount step1_m = 0;  // per-endpoint membership budget
  QueryCount step2_m = 0;  // midpoint budget
  bool faithful_chain_queries = false;

  /// step1_m = queries_for_confidence(k, 1/8, rho)   (8k^2 when rho = 1)
  /// step2_m = queries_for_confidence(k, 1/16, rho)  (10k^2 when rho = 1)
  static WalkConfig standard(Value k, QueryCount m, double rho = 1.0,
                             bool faithful_chain_queries = false);

  Value chain_length() const noexcept { return static_cast<Value>(m) + 1; }
};

/// 70 * ceil(log2 n) when delta >= 1/n, else 70 * ceil(log2(1 / delta)).
QueryCount choose_walk_length(Value n, double delta);

enum class Move { kParent, kLeft, kRight, kChainDown, kChainUp, kStay };

struct StepOutcome {
  WalkNode next;
  Move move = Move::kStay;
  bool membership = false;
  QueryCount queries = 0;
};

/// One step of the walk toward the t-th smallest element.
StepOutcome walk_step(Oracle& oracle, const WalkNode& node, Value t,
                      const WalkConfig& cfg);

/// The move a step would make if every k-position estimate were exact.
Move correct_move(const Instance& truth, const WalkNode& node, Value t);

/// Queries a step at `node` costs, given the membership verdict it reached.
QueryCount step_cost(const WalkNode& node, Value n, bool membership,
                     const WalkConfig& cfg);

/// Runs exactly cfg.m steps from the root; returns the leaf value if the walk
/// ends on a leaf or chain, nothing otherwise. `trace`, when given, receives
/// every step outcome.
TargetResult find_tth(Oracle& oracle, Value t, Value n, Value k,
                      const WalkConfig& cfg,
                      std::vector<StepOutcome>* trace = nullptr);

/// Finds all k elements for k <= n with failure probability about delta.
SolverReport solve_walker(Oracle& oracle, Value n, Value k, double delta,
                          bool faithful_chain_queries = false);

}  // namespace ksearch
