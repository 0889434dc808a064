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


#pragma once

#include <optional>
#include <vector>

#include "deftsched/assignment.hpp"
#include "deftsched/crunch.hpp"
#include "deftsched/matrix.hpp"

namespace deftsched {

// Min-sum assignment of all L columns (blocks) to distinct rows (devices).
// row_potential / col_potential form a dual certificate:
//   u_k + v_l <= w(k,l) on every finite entry, with equality on matched pairs.
struct MatchingResult {
  double total_weight = 0.0;
  Assignment assignment;
  std::vector<double> row_potential;  // K
  std::vector<double> col_potential;  // L
};

// Hungarian method on a K x L table (K >= L), +infinity marks a forbidden
// pair. Returns nullopt when no perfect matching on finite entries exists.
std::optional<MatchingResult> try_min_weight_perfect_matching(const RealMatrix& weights);

// As above; throws InfeasibleError instead of returning nullopt.
MatchingResult min_weight_perfect_matching(const RealMatrix& weights);

// Maximum matching size in a K x L bipartite graph (Hopcroft-Karp).
int max_cardinality_matching(const BoolMatrix& adjacency);

struct BottleneckSearchResult {
  double latency = 0.0;
  Assignment assignment;
  int feasibility_checks = 0;
  bool completed = true;  // false when the time budget ran out first
};

// Reference min-max solver: scan the admissible latencies in increasing
// order and test each threshold with a full Hungarian solve. The first
// threshold that admits a perfect matching is optimal. A positive
// `time_budget_s` stops the scan once exceeded (latency is then NaN).
BottleneckSearchResult bottleneck_via_search(const BottleneckProblem& problem,
                                             double time_budget_s = 0.0);

}  // namespace deftsched
