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

#include <cmath>
#include <cstdint>
#include <vector>

#include "ksearch/core_model.hpp"
#include "ksearch/execution.hpp"

namespace ksearch {

/// A KL divergence in bits; +infinity when the support condition fails.
struct DivergenceValue {
  double bits = 0.0;

  bool infinite() const noexcept { return std::isinf(bits); }
};

/// D(Bern(p) || Bern(q)) in bits, with 0 log(0/q) = 0 and a log(a/0) = +inf.
DivergenceValue kl_bernoulli(double p, double q);

/// 32 eps^2 / (3 ln 2): the quadratic bound on D(Bern(p +- eps) || Bern(p))
/// for p in [1/4, 3/4] and eps <= 1/8.
double berndiv_bound(double eps);

/// True iff both D(Bern(p + eps) || Bern(p)) and D(Bern(p - eps) || Bern(p))
/// stay under berndiv_bound(eps). Domain: p in [1/4, 3/4], eps in [0, 1/8].
bool berndiv_bound_check(double p, double eps);

/// Exact distribution of the k-position estimate produced from m queries at a
/// point with true k-position k_true: entry i is Pr[estimate = i].
std::vector<double> estimate_distribution(Value k, std::uint64_t m, Value k_true,
                                          double rho = 1.0);

/// Pr[estimate == k_true], by exact binomial summation.
double estimator_success_prob(Value k, std::uint64_t m, Value k_true,
                              double rho = 1.0);

/// Upper limit on the number of candidate multisets ml_decode will score.
inline constexpr std::uint64_t kMlDecodeMaxCandidates = 10'000'000;

/// C(n + k - 1, k), saturating at `cap + 1`.
std::uint64_t multiset_count(Value n, Value k, std::uint64_t cap = kMlDecodeMaxCandidates);

/// Transcript log-likelihood (natural log) of a sorted candidate multiset.
double transcript_log_likelihood(const Transcript& transcript,
                                 const std::vector<Value>& candidate, Value k,
                                 double rho);

/// Maximum-likelihood multiset for a transcript, by exhaustive enumeration.
/// Ties go to the lexicographically smallest sorted sequence. Throws
/// CapacityError when more than kMlDecodeMaxCandidates multisets exist.
std::vector<Value> ml_decode(const Transcript& transcript, Value n, Value k,
                             double rho = 1.0,
                             Execution exec = Execution::kParallel);

/// `count` queries at uniform y in [1, n], with y drawn from its own stream.
Transcript sample_transcript(Oracle& oracle, std::size_t count, std::uint64_t seed);

}  // namespace ksearch
