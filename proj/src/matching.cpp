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


#include "deftsched/matching.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "deftsched/errors.hpp"

namespace deftsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::optional<MatchingResult> try_min_weight_perfect_matching(const RealMatrix& weights) {
  const int K = static_cast<int>(weights.rows());
  const int L = static_cast<int>(weights.cols());
  if (K < L) return std::nullopt;
  if (L == 0) return MatchingResult{0.0, {}, std::vector<double>(K, 0.0), {}};

  // Forbidden pairs get a finite sentinel that no perfect matching on
  // finite entries can reach: any matching using it costs more than
  // big - (L - 1) * max|w| > L * max|w|.
  double max_abs = 0.0;
  for (double w : weights.data())
    if (std::isfinite(w)) max_abs = std::max(max_abs, std::abs(w));
  const double big = (static_cast<double>(K) * L + 1.0) * (max_abs + 1.0) * 2.0;

  // Square K x K problem, 1-based; columns beyond L are zero-weight dummies.
  const int n = K;
  auto cost = [&](int i, int j) {
    if (j > L) return 0.0;
    const double w = weights(i - 1, j - 1);
    return std::isfinite(w) ? w : big;
  };

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
    // -v[0] is the optimal cost over rows 1..i. Past big / 2 that optimum
    // needs a forbidden pair, and so does every completion of it.
    if (-v[0] > 0.5 * big) return std::nullopt;
  }

  MatchingResult out;
  out.assignment.device_of_block.resize(L);
  for (int j = 1; j <= L; ++j) {
    const int k = p[j] - 1;
    const double w = weights(k, j - 1);
    if (!std::isfinite(w)) return std::nullopt;
    out.assignment.device_of_block[j - 1] = k;
    out.total_weight += w;
  }
  out.row_potential.assign(u.begin() + 1, u.end());
  out.col_potential.assign(v.begin() + 1, v.begin() + 1 + L);
  return out;
}

MatchingResult min_weight_perfect_matching(const RealMatrix& weights) {
  auto result = try_min_weight_perfect_matching(weights);
  if (!result)
    throw InfeasibleError("no perfect matching on admissible pairs (" +
                          std::to_string(weights.rows()) + " x " +
                          std::to_string(weights.cols()) + ")");
  return std::move(*result);
}

int max_cardinality_matching(const BoolMatrix& adjacency) {
  const int K = static_cast<int>(adjacency.rows());
  const int L = static_cast<int>(adjacency.cols());
  std::vector<std::vector<int>> adj(K);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < L; ++l)
      if (adjacency(k, l)) adj[k].push_back(l);

  std::vector<int> match_row(K, -1), match_col(L, -1), dist(K);
  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int k = 0; k < K; ++k) {
      if (match_row[k] < 0) {
        dist[k] = 0;
        q.push(k);
      } else {
        dist[k] = -1;
      }
    }
    while (!q.empty()) {
      const int k = q.front();
      q.pop();
      for (int l : adj[k]) {
        const int k2 = match_col[l];
        if (k2 < 0) {
          found = true;
        } else if (dist[k2] < 0) {
          dist[k2] = dist[k] + 1;
          q.push(k2);
        }
      }
    }
    return found;
  };
  auto dfs = [&](auto&& self, int k) -> bool {
    for (int l : adj[k]) {
      const int k2 = match_col[l];
      if (k2 < 0 || (dist[k2] == dist[k] + 1 && self(self, k2))) {
        match_row[k] = l;
        match_col[l] = k;
        return true;
      }
    }
    dist[k] = -1;
    return false;
  };

  int size = 0;
  while (bfs())
    for (int k = 0; k < K; ++k)
      if (match_row[k] < 0 && dfs(dfs, k)) ++size;
  return size;
}

BottleneckSearchResult bottleneck_via_search(const BottleneckProblem& problem,
                                             double time_budget_s) {
  const auto start = std::chrono::steady_clock::now();
  problem.validate();
  const int K = problem.num_devices();
  const int L = problem.num_blocks();
  if (auto bad = uncoverable_blocks(problem.depth_limit, L); !bad.empty())
    throw InfeasibleError("memory limits leave some blocks uncoverable", bad);

  std::vector<std::tuple<double, int, int>> entries;
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < problem.depth_limit[k]; ++l)
      entries.emplace_back(problem.latency(k, l), k, l);
  std::sort(entries.begin(), entries.end());

  RealMatrix weights(K, L, kInf);
  BottleneckSearchResult out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [value, k, l] = entries[i];
    weights(k, l) = value;
    if (i + 1 < entries.size() && std::get<0>(entries[i + 1]) == value) continue;
    if (time_budget_s > 0.0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
            time_budget_s) {
      out.latency = std::numeric_limits<double>::quiet_NaN();
      out.completed = false;
      return out;
    }
    ++out.feasibility_checks;
    if (auto m = try_min_weight_perfect_matching(weights)) {
      out.latency = value;
      out.assignment = std::move(m->assignment);
      return out;
    }
  }
  // Unreachable once the memory prefixes are coverable.
  throw InfeasibleError("threshold search exhausted all latencies");
}

}  // namespace deftsched
