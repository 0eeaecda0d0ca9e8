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

#include "ksearch/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ksearch {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + ": probability outside [0, 1]");
  }
}

double kl_term(double a, double b) {
  if (a == 0.0) return 0.0;
  if (b == 0.0) return kInf;
  return a * std::log2(a / b);
}

}  // namespace

DivergenceValue kl_bernoulli(double p, double q) {
  check_probability(p, "kl_bernoulli");
  check_probability(q, "kl_bernoulli");
  return {kl_term(p, q) + kl_term(1.0 - p, 1.0 - q)};
}

double berndiv_bound(double eps) {
  return 32.0 * eps * eps / (3.0 * std::numbers::ln2);
}

bool berndiv_bound_check(double p, double eps) {
  if (!(p >= 0.25 && p <= 0.75)) throw std::domain_error("berndiv: p outside [1/4, 3/4]");
  if (!(eps >= 0.0 && eps <= 0.125)) throw std::domain_error("berndiv: eps outside [0, 1/8]");
  const double bound = berndiv_bound(eps);
  return kl_bernoulli(p + eps, p).bits <= bound && kl_bernoulli(p - eps, p).bits <= bound;
}

std::vector<double> estimate_distribution(Value k, std::uint64_t m, Value k_true,
                                          double rho) {
  if (k < 1 || m < 1) throw std::domain_error("estimate_distribution: k, m must be >= 1");
  if (k_true < 0 || k_true > k) throw std::domain_error("estimate_distribution: k_true outside [0, k]");
  const double rho_checked = NoiseModel(rho).rho();

  const long double frac = static_cast<long double>(k_true) / k;
  const long double q = rho_checked * frac + (1.0L - rho_checked) * (1.0L - frac);

  // Grid point nearest to the de-noised frequency; ties to the smaller index.
  auto nearest = [&](std::uint64_t x) -> Value {
    Value best = 0;
    if (rho_checked == 1.0) {
      // Distances scaled by k*m: |x k - j m|, exact in integers.
      auto dist = [&](Value j) {
        const __int128 d = static_cast<__int128>(x) * k - static_cast<__int128>(j) * m;
        return d < 0 ? -d : d;
      };
      for (Value j = 1; j <= k; ++j) {
        if (dist(j) < dist(best)) best = j;
      }
    } else {
      const double raw = static_cast<double>(x) / static_cast<double>(m);
      const double p = std::clamp((raw - (1.0 - rho_checked)) / (2.0 * rho_checked - 1.0), 0.0, 1.0);
      auto dist = [&](Value j) { return std::abs(p - static_cast<double>(j) / k); };
      for (Value j = 1; j <= k; ++j) {
        if (dist(j) < dist(best)) best = j;
      }
    }
    return best;
  };

  std::vector<double> dist(static_cast<std::size_t>(k + 1), 0.0);
  if (q <= 0.0L) {
    dist[static_cast<std::size_t>(nearest(0))] = 1.0;
    return dist;
  }
  if (q >= 1.0L) {
    dist[static_cast<std::size_t>(nearest(m))] = 1.0;
    return dist;
  }
  const long double log_q = std::log(q);
  const long double log_1q = std::log1p(-q);
  const long double log_mfact = std::lgamma(static_cast<long double>(m) + 1.0L);
  std::vector<long double> acc(static_cast<std::size_t>(k + 1), 0.0L);
  for (std::uint64_t x = 0; x <= m; ++x) {
    const long double xl = static_cast<long double>(x);
    const long double log_pmf = log_mfact - std::lgamma(xl + 1.0L) -
                                std::lgamma(static_cast<long double>(m - x) + 1.0L) +
                                xl * log_q + static_cast<long double>(m - x) * log_1q;
    acc[static_cast<std::size_t>(nearest(x))] += std::exp(log_pmf);
  }
  std::transform(acc.begin(), acc.end(), dist.begin(),
                 [](long double v) { return static_cast<double>(v); });
  return dist;
}

double estimator_success_prob(Value k, std::uint64_t m, Value k_true, double rho) {
  return estimate_distribution(k, m, k_true, rho)[static_cast<std::size_t>(k_true)];
}

std::uint64_t multiset_count(Value n, Value k, std::uint64_t cap) {
  if (n < 1 || k < 1) throw std::domain_error("multiset_count: n, k must be >= 1");
  // C(n + k - 1, k) built as a product of ratios; each partial is an integer.
  const std::uint64_t r = static_cast<std::uint64_t>(std::min(k, n - 1));
  const std::uint64_t top = static_cast<std::uint64_t>(n + k - 1);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (top - r + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

struct PointCounts {
  Value y;
  std::uint64_t leq;
  std::uint64_t gt;
};

std::vector<PointCounts> aggregate(const Transcript& transcript, Value n) {
  std::map<Value, PointCounts> by_y;
  for (const auto& e : transcript) {
    if (e.y < 1 || e.y > n) throw std::domain_error("transcript: y outside [1, n]");
    auto& pc = by_y.try_emplace(e.y, PointCounts{e.y, 0, 0}).first->second;
    (e.response == Response::kLeq ? pc.leq : pc.gt) += 1;
  }
  std::vector<PointCounts> out;
  out.reserve(by_y.size());
  for (const auto& [y, pc] : by_y) out.push_back(pc);
  return out;
}

// log Pr[Leq] and log Pr[Gt] for every candidate k-position 0..k.
struct ResponseLogs {
  std::vector<double> leq;
  std::vector<double> gt;

  ResponseLogs(Value k, double rho) {
    const NoiseModel noise(rho);
    for (Value j = 0; j <= k; ++j) {
      const double p = noise.leq_probability(j, k);
      leq.push_back(p > 0.0 ? std::log(p) : -kInf);
      gt.push_back(p < 1.0 ? std::log1p(-p) : -kInf);
    }
  }
};

double score(const std::vector<PointCounts>& points, const ResponseLogs& logs,
             const Value* cand, Value k) {
  double ll = 0.0;
  Value below = 0;
  for (const auto& pc : points) {
    while (below < k && cand[below] <= pc.y) ++below;
    const auto j = static_cast<std::size_t>(below);
    if (pc.leq) ll += static_cast<double>(pc.leq) * logs.leq[j];
    if (pc.gt) ll += static_cast<double>(pc.gt) * logs.gt[j];
    if (ll == -kInf) return ll;
  }
  return ll;
}

// Advances a non-decreasing sequence over [1, n] to its lexicographic
// successor, leaving positions before `fixed` untouched. Returns false when
// exhausted.
bool next_multiset(std::vector<Value>& seq, Value n, std::size_t fixed) {
  std::size_t i = seq.size();
  while (i > fixed) {
    --i;
    if (seq[i] < n) {
      const Value v = seq[i] + 1;
      std::fill(seq.begin() + static_cast<std::ptrdiff_t>(i), seq.end(), v);
      return true;
    }
  }
  return false;
}

struct Best {
  double ll = -kInf;
  std::vector<Value> seq;
  bool seen = false;

  void offer(double ll_new, const std::vector<Value>& cand) {
    if (!seen || ll_new > ll) {
      ll = ll_new;
      seq = cand;
      seen = true;
    }
  }
};

}  // namespace

double transcript_log_likelihood(const Transcript& transcript,
                                 const std::vector<Value>& candidate, Value k,
                                 double rho) {
  if (static_cast<Value>(candidate.size()) != k || !std::is_sorted(candidate.begin(), candidate.end())) {
    throw std::invalid_argument("transcript_log_likelihood: candidate must be sorted with k entries");
  }
  return score(aggregate(transcript, std::numeric_limits<Value>::max()), ResponseLogs(k, rho), candidate.data(), k);
}

std::vector<Value> ml_decode(const Transcript& transcript, Value n, Value k,
                             double rho, Execution exec) {
  if (n < 1 || k < 1) throw std::domain_error("ml_decode: n, k must be >= 1");
  const std::uint64_t candidates = multiset_count(n, k);
  if (candidates > kMlDecodeMaxCandidates) {
    throw CapacityError("ml_decode: more than " + std::to_string(kMlDecodeMaxCandidates) +
                        " candidate multisets");
  }
  const auto points = aggregate(transcript, n);
  const ResponseLogs logs(k, rho);
  const auto kk = static_cast<std::size_t>(k);

  if (exec == Execution::kSerial) {
    Best best;
    std::vector<Value> seq(kk, 1);
    do {
      best.offer(score(points, logs, seq.data(), k), seq);
    } while (next_multiset(seq, n, 0));
    return best.seq;
  }

  // One task per smallest element; merged in ascending order so that
  // lexicographic tie-breaking matches the serial scan.
  std::vector<Best> per_first(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (Value first = 1; first <= n; ++first) {
    Best& local = per_first[static_cast<std::size_t>(first - 1)];
    std::vector<Value> seq(kk, first);
    do {
      local.offer(score(points, logs, seq.data(), k), seq);
    } while (next_multiset(seq, n, 1));
  }
  Best best;
  for (const Best& b : per_first) best.offer(b.ll, b.seq);
  return best.seq;
}

Transcript sample_transcript(Oracle& oracle, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  Transcript out;
  out.reserve(count);
  const Value n = oracle.instance().n();
  for (std::size_t i = 0; i < count; ++i) {
    const Value y = rng.between(1, n);
    out.push_back({y, oracle.query(y)});
  }
  return out;
}

}  // namespace ksearch
