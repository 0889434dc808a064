// Copyright 2026 The deftsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "deftsched/crunch.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "deftsched/errors.hpp"

namespace deftsched {
namespace {

// Right edge of a row: the only candidate for the row's maximum.
struct Edge {
  double value;
  int depth;  // 1-based
  int device;
};

// Largest value first; ties cut the deeper entry, then the lower device.
struct EdgeLess {
  bool operator()(const Edge& a, const Edge& b) const {
    if (a.value != b.value) return a.value < b.value;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.device > b.device;
  }
};

std::string join_blocks(const std::vector<int>& blocks) {
  std::string out;
  for (int b : blocks) {
    if (!out.empty()) out += ", ";
    out += std::to_string(b);
  }
  return out;
}

void require_coverable(std::span<const int> limits, int L) {
  auto bad = uncoverable_blocks(limits, L);
  if (!bad.empty())
    throw InfeasibleError("memory limits leave blocks uncoverable: " + join_blocks(bad), bad);
}

// Shared cutting loop. On return `support` holds the minimal feasible
// profile and the returned cut is the one that broke feasibility.
Cut run_cuts(const RealMatrix& w, std::span<const int> limits, std::vector<int>& support,
             std::vector<Cut>* log) {
  const int K = static_cast<int>(w.rows());
  const int L = static_cast<int>(w.cols());
  support.assign(limits.begin(), limits.end());

  // at_least[v] = number of rows whose support is >= v. The support
  // condition is equivalent to at_least[l] >= L - l + 1 for all l.
  std::vector<int> at_least(L + 2, 0);
  for (int s : support)
    for (int v = 1; v <= s; ++v) ++at_least[v];

  std::priority_queue<Edge, std::vector<Edge>, EdgeLess> edges;
  for (int k = 0; k < K; ++k)
    if (support[k] > 0) edges.push({w(k, support[k] - 1), support[k], k});

  for (;;) {
    // An all-zero profile is infeasible for L >= 1, so the queue cannot
    // drain before the condition breaks.
    const Edge top = edges.top();
    edges.pop();
    const Cut cut{top.device, top.depth, top.value};
    if (log) log->push_back(cut);

    const int v = support[top.device];
    support[top.device] = v - 1;
    --at_least[v];
    if (at_least[v] < L - v + 1) {
      support[top.device] = v;  // restore the breaking entry
      return cut;
    }
    if (v - 1 > 0) edges.push({w(top.device, v - 2), v - 1, top.device});
  }
}

}  // namespace

BottleneckProblem BottleneckProblem::from_cost(const CostMatrix& cost) {
  return {cost.total, cost.admissible_depths()};
}

void BottleneckProblem::validate() const {
  const int K = num_devices();
  const int L = num_blocks();
  if (static_cast<int>(depth_limit.size()) != K)
    throw std::invalid_argument("depth_limit size does not match latency rows");
  if (L < 1) throw std::invalid_argument("problem has no blocks");
  if (K < L)
    throw InfeasibleError(std::to_string(K) + " devices cannot cover " + std::to_string(L) +
                          " blocks");
  for (int k = 0; k < K; ++k) {
    if (depth_limit[k] < 0 || depth_limit[k] > L)
      throw std::invalid_argument("depth_limit out of range for device " + std::to_string(k));
    for (int l = 1; l < depth_limit[k]; ++l)
      if (latency(k, l) < latency(k, l - 1))
        throw std::invalid_argument("latency row " + std::to_string(k) +
                                    " decreases with depth");
  }
}

QMatrix build_q(const BottleneckProblem& problem, double threshold) {
  const int K = problem.num_devices();
  const int L = problem.num_blocks();
  QMatrix q{RealMatrix(K, L, 0.0), std::vector<int>(K, 0), threshold};
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < std::min(L, problem.depth_limit[k]); ++l) {
      if (problem.latency(k, l) <= threshold) q.values(k, l) = problem.latency(k, l);
    }
    int count = 0;
    for (int l = 0; l < L; ++l) count += q.values(k, l) != 0.0;
    // Monotone latency and memory make every row a prefix.
    for (int l = 0; l < L; ++l)
      if ((q.values(k, l) != 0.0) != (l < count))
        throw std::logic_error("q row " + std::to_string(k) + " is not a prefix");
    q.row_support[k] = count;
  }
  return q;
}

SortedSupport sort_support(std::span<const int> row_support) {
  SortedSupport out;
  out.device.resize(row_support.size());
  std::iota(out.device.begin(), out.device.end(), 0);
  std::stable_sort(out.device.begin(), out.device.end(),
                   [&](int a, int b) { return row_support[a] < row_support[b]; });
  out.support.reserve(row_support.size());
  for (int k : out.device) out.support.push_back(row_support[k]);
  return out;
}

bool feasible(const SortedSupport& sorted, int num_blocks) {
  const int K = static_cast<int>(sorted.support.size());
  const int L = num_blocks;
  if (K < L) return false;
  for (int l = 1; l <= L; ++l)
    if (sorted.support[K - L + l - 1] < l) return false;
  return true;
}

Assignment extract_assignment(const QMatrix& q, const SortedSupport& sorted) {
  const int K = static_cast<int>(q.values.rows());
  const int L = static_cast<int>(q.values.cols());
  if (!feasible(sorted, L))
    throw std::logic_error("extract_assignment called on infeasible supports");
  Assignment a;
  a.device_of_block.resize(L);
  for (int l = 1; l <= L; ++l) {
    const int k = sorted.device[K - L + l - 1];
    if (q.values(k, l - 1) == 0.0)
      throw std::logic_error("extracted pair is disqualified in q");
    a.device_of_block[l - 1] = k;
  }
  return a;
}

std::vector<int> uncoverable_blocks(std::span<const int> depth_limit, int num_blocks) {
  const int L = num_blocks;
  std::vector<int> at_least(L + 2, 0);
  for (int s : depth_limit)
    for (int v = 1; v <= std::min(s, L); ++v) ++at_least[v];
  std::vector<int> bad;
  for (int l = 1; l <= L; ++l)
    if (at_least[l] < L - l + 1) bad.push_back(l);
  return bad;
}

CrunchResult crunch_solve(const BottleneckProblem& problem, bool record_cuts) {
  problem.validate();
  const int L = problem.num_blocks();
  require_coverable(problem.depth_limit, L);

  CrunchResult result;
  std::vector<int> support;
  const Cut last = run_cuts(problem.latency, problem.depth_limit, support,
                            record_cuts ? &result.cuts : nullptr);
  result.latency = last.value;

  // Rebuild q at the breaking threshold, i.e. with the last cut restored.
  QMatrix q{RealMatrix(problem.num_devices(), L, 0.0), support, last.value};
  for (int k = 0; k < problem.num_devices(); ++k)
    for (int l = 0; l < support[k]; ++l) q.values(k, l) = problem.latency(k, l);
  result.assignment = extract_assignment(q, sort_support(support));
  return result;
}

CrunchPrune crunch_prune(const RealMatrix& weights, std::span<const int> depth_limit) {
  const int L = static_cast<int>(weights.cols());
  require_coverable(depth_limit, L);
  CrunchPrune out;
  out.threshold = run_cuts(weights, depth_limit, out.support, nullptr).value;
  return out;
}

}  // namespace deftsched
