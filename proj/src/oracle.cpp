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


#include "deftsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "deftsched/errors.hpp"

namespace deftsched::oracle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void guard(int K, int L, int max_k, int max_l, const char* who) {
  if (K > max_k || L > max_l)
    throw std::length_error(std::string(who) + ": instance too large for enumeration");
}

// Calls visit(map) for every injective map block -> device with
// allowed(k, l) true for each pair.
void enumerate(int K, int L, const std::function<bool(int, int)>& allowed,
               const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> map(L, -1);
  std::vector<char> taken(K, 0);
  std::function<void(int)> rec = [&](int l) {
    if (l == L) {
      visit(map);
      return;
    }
    for (int k = 0; k < K; ++k) {
      if (taken[k] || !allowed(k, l)) continue;
      taken[k] = 1;
      map[l] = k;
      rec(l + 1);
      taken[k] = 0;
    }
  };
  rec(0);
}

}  // namespace

BruteResult brute_bottleneck(const BottleneckProblem& problem) {
  const int K = static_cast<int>(problem.latency.rows());
  const int L = static_cast<int>(problem.latency.cols());
  guard(K, L, 10, 7, "brute_bottleneck");
  BruteResult best{kInf, {}};
  enumerate(
      K, L, [&](int k, int l) { return l < problem.depth_limit[k]; },
      [&](const std::vector<int>& map) {
        double worst = -kInf;
        for (int l = 0; l < L; ++l) worst = std::max(worst, problem.latency(map[l], l));
        if (worst < best.value) best = {worst, Assignment{map}};
      });
  if (best.assignment.device_of_block.empty())
    throw InfeasibleError("brute_bottleneck: no memory-feasible assignment");
  return best;
}

BruteResult brute_min_sum(const RealMatrix& weights) {
  const int K = static_cast<int>(weights.rows());
  const int L = static_cast<int>(weights.cols());
  guard(K, L, 8, 6, "brute_min_sum");
  BruteResult best{kInf, {}};
  enumerate(
      K, L, [&](int k, int l) { return std::isfinite(weights(k, l)); },
      [&](const std::vector<int>& map) {
        double sum = 0.0;
        for (int l = 0; l < L; ++l) sum += weights(map[l], l);
        if (sum < best.value) best = {sum, Assignment{map}};
      });
  if (best.assignment.device_of_block.empty())
    throw InfeasibleError("brute_min_sum: no finite perfect matching");
  return best;
}

JbbaSolution brute_jbba(const JbbaProblem& problem) {
  const int K = problem.num_devices();
  const int L = problem.num_blocks();
  guard(K, L, 7, 5, "brute_jbba");
  JbbaSolution best;
  best.latency = kInf;
  enumerate(
      K, L,
      [&](int k, int l) { return l < problem.depth_limit[k] && problem.spectral_eff[k] > 0.0; },
      [&](const std::vector<int>& map) {
        Assignment a{map};
        auto pol = polish_bandwidth(problem, a);
        if (pol.latency < best.latency) {
          best.latency = pol.latency;
          best.assignment = std::move(a);
          best.bandwidth = std::move(pol.bandwidth);
        }
      });
  if (best.assignment.device_of_block.empty())
    throw InfeasibleError("brute_jbba: no memory-feasible assignment");
  best.involvement.assign(K, 0);
  for (int k : best.assignment.device_of_block) best.involvement[k] = 1;
  best.converged = true;
  return best;
}

std::optional<std::string> check_assignment(const Assignment& assignment, int num_devices,
                                            std::span<const int> depth_limit) {
  std::vector<int> uses(num_devices, 0);
  const auto& map = assignment.device_of_block;
  for (std::size_t l = 0; l < map.size(); ++l) {
    const int k = map[l];
    if (k < 0 || k >= num_devices)
      return "block " + std::to_string(l + 1) + " has no valid device";
    if (++uses[k] > 1) return "device " + std::to_string(k + 1) + " holds two blocks";
    if (static_cast<int>(l) + 1 > depth_limit[k])
      return "block " + std::to_string(l + 1) + " exceeds memory of device " +
             std::to_string(k + 1);
  }
  return std::nullopt;
}

}  // namespace deftsched::oracle
