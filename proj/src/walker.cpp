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

#include "ksearch/walker.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ksearch/kposition.hpp"

namespace ksearch {

bool SolverReport::complete() const {
  return std::all_of(per_target.begin(), per_target.end(),
                     [](const TargetResult& r) { return r.value.has_value(); });
}

void SolverReport::check_against(const Instance& truth) {
  const auto items = truth.items();
  success = complete() &&
            std::equal(recovered.begin(), recovered.end(), items.begin(), items.end());
}

WalkNode root_node(Value n) { return {1, n, 0}; }

Value midpoint(const WalkNode& node) { return node.a + (node.b - node.a) / 2; }

Children children(const WalkNode& node) {
  if (node.a >= node.b) throw std::logic_error("children: node is a leaf");
  const Value u = midpoint(node);
  return {{node.a, u, 0}, {u + 1, node.b, 0}};
}

WalkNode parent(const WalkNode& node, Value n) {
  if (node.chain_depth != 0) throw std::logic_error("parent: node is on a chain");
  WalkNode cur = root_node(n);
  if (node == cur) return cur;
  while (!cur.is_leaf()) {
    const auto [left, right] = children(cur);
    const WalkNode& next = node.b <= left.b ? left : right;
    if (next == node) return cur;
    cur = next;
  }
  throw std::logic_error("parent: node is not in the tree over [1, n]");
}

WalkConfig WalkConfig::standard(Value k, QueryCount m, double rho,
                                bool faithful_chain_queries) {
  if (m < 1) throw std::domain_error("walk config: m must be >= 1");
  return {m, queries_for_confidence(k, 1.0 / 8.0, rho),
          queries_for_confidence(k, 1.0 / 16.0, rho), faithful_chain_queries};
}

QueryCount choose_walk_length(Value n, double delta) {
  if (n < 1) throw std::domain_error("choose_walk_length: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("choose_walk_length: delta must lie in (0, 1)");
  }
  if (delta >= 1.0 / static_cast<double>(n)) {
    return 70 * static_cast<QueryCount>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
  }
  return 70 * static_cast<QueryCount>(std::ceil(std::log2(1.0 / delta)));
}

StepOutcome walk_step(Oracle& oracle, const WalkNode& node, Value t,
                      const WalkConfig& cfg) {
  const Instance& inst = oracle.instance();
  if (t < 1 || t > inst.k()) throw std::domain_error("walk_step: t outside [1, k]");
  const QueryCount before = oracle.query_count();

  const Value below = estimate_k_position(oracle, node.a - 1, cfg.step1_m).k_pos;
  const Value upto = estimate_k_position(oracle, node.b, cfg.step1_m).k_pos;

  StepOutcome out;
  out.membership = below <= t - 1 && upto >= t;
  if (!out.membership) {
    if (node.chain_depth > 0) {
      out.next = {node.a, node.b, node.chain_depth - 1};
      out.move = Move::kChainUp;
    } else if (node == root_node(inst.n())) {
      out.next = node;
      out.move = Move::kStay;
    } else {
      out.next = parent(node, inst.n());
      out.move = Move::kParent;
    }
  } else if (!node.is_leaf()) {
    const Value u = midpoint(node);
    const auto [left, right] = children(node);
    if (estimate_k_position(oracle, u, cfg.step2_m).k_pos <= t - 1) {
      out.next = right;
      out.move = Move::kRight;
    } else {
      out.next = left;
      out.move = Move::kLeft;
    }
  } else {
    // The midpoint answer is discarded on leaves and chains.
    if (cfg.faithful_chain_queries) estimate_k_position(oracle, node.a, cfg.step2_m);
    out.next = {node.a, node.b,
                std::min(node.chain_depth + 1, cfg.chain_length())};
    out.move = Move::kChainDown;
  }
  out.queries = oracle.query_count() - before;
  return out;
}

Move correct_move(const Instance& truth, const WalkNode& node, Value t) {
  const Value v = truth.order_statistic(t);
  if (v < node.a || v > node.b) {
    if (node.chain_depth > 0) return Move::kChainUp;
    if (node == root_node(truth.n())) return Move::kStay;
    return Move::kParent;
  }
  if (node.is_leaf()) return Move::kChainDown;
  return v <= midpoint(node) ? Move::kLeft : Move::kRight;
}

QueryCount step_cost(const WalkNode& node, Value n, bool membership,
                     const WalkConfig& cfg) {
  QueryCount cost = 0;
  if (node.a - 1 != 0) cost += cfg.step1_m;
  if (node.b != n) cost += cfg.step1_m;
  if (membership) {
    if (!node.is_leaf()) {
      cost += cfg.step2_m;
    } else if (cfg.faithful_chain_queries && node.a != n) {
      cost += cfg.step2_m;
    }
  }
  return cost;
}

namespace {

void check_solver_args(const Oracle& oracle, Value n, Value k) {
  const Instance& inst = oracle.instance();
  if (n != inst.n() || k != inst.k()) {
    throw std::invalid_argument("solver: (n, k) do not match the oracle's instance");
  }
}

}  // namespace

TargetResult find_tth(Oracle& oracle, Value t, Value n, Value k,
                      const WalkConfig& cfg, std::vector<StepOutcome>* trace) {
  check_solver_args(oracle, n, k);
  if (k > n) throw std::domain_error("find_tth: requires k <= n");
  if (t < 1 || t > k) throw std::domain_error("find_tth: t outside [1, k]");

  const QueryCount before = oracle.query_count();
  WalkNode node = root_node(n);
  for (QueryCount step = 0; step < cfg.m; ++step) {
    StepOutcome out = walk_step(oracle, node, t, cfg);
    node = out.next;
    if (trace) trace->push_back(out);
  }
  TargetResult result{t, std::nullopt, oracle.query_count() - before};
  if (node.is_leaf()) result.value = node.a;
  return result;
}

SolverReport solve_walker(Oracle& oracle, Value n, Value k, double delta,
                          bool faithful_chain_queries) {
  check_solver_args(oracle, n, k);
  if (k > n) throw std::domain_error("solve_walker: requires k <= n");
  const QueryCount m = choose_walk_length(n, delta);
  const WalkConfig cfg =
      WalkConfig::standard(k, m, oracle.noise().rho(), faithful_chain_queries);

  SolverReport report;
  for (Value t = 1; t <= k; ++t) {
    TargetResult r = find_tth(oracle, t, n, k, cfg);
    report.total_queries += r.queries;
    if (r.value) report.recovered.push_back(*r.value);
    report.per_target.push_back(r);
  }
  std::sort(report.recovered.begin(), report.recovered.end());
  return report;
}

}  // namespace ksearch
