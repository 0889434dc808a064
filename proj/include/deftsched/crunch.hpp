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

#include <span>
#include <vector>

#include "deftsched/assignment.hpp"
#include "deftsched/matrix.hpp"
#include "deftsched/model.hpp"

namespace deftsched {

// Equal-bandwidth bottleneck instance: a K x L latency table whose rows are
// nondecreasing in depth, and per-device memory prefixes (device k may take
// depths 1..depth_limit[k]).
struct BottleneckProblem {
  RealMatrix latency;
  std::vector<int> depth_limit;

  int num_devices() const noexcept { return static_cast<int>(latency.rows()); }
  int num_blocks() const noexcept { return static_cast<int>(latency.cols()); }

  static BottleneckProblem from_cost(const CostMatrix& cost);

  // Throws std::invalid_argument on shape mismatch or a decreasing row, and
  // InfeasibleError when K < L.
  void validate() const;
};

// Threshold-masked latency table: q(k,l) = T(k,l) when depth l+1 fits the
// memory of device k and T(k,l) <= threshold, else 0.
struct QMatrix {
  RealMatrix values;
  std::vector<int> row_support;
  double threshold = 0.0;
};

// Row supports in ascending order. support[j] is the (j+1)-th smallest value
// and device[j] the device that holds it; ties keep device-index order.
struct SortedSupport {
  std::vector<int> support;
  std::vector<int> device;
};

struct Cut {
  int device = 0;  // 0-based
  int depth = 0;   // 1-based
  double value = 0.0;
};

struct CrunchResult {
  double latency = 0.0;
  Assignment assignment;
  std::vector<Cut> cuts;  // filled when requested; the last cut is the one restored
};

QMatrix build_q(const BottleneckProblem& problem, double threshold);

SortedSupport sort_support(std::span<const int> row_support);

// True iff support[K - L + l - 1] >= l for every depth l in 1..L.
bool feasible(const SortedSupport& sorted, int num_blocks);

// Block l goes to device[K - L + l - 1]. Throws std::logic_error if the
// supports are infeasible or a chosen entry of q is zero.
Assignment extract_assignment(const QMatrix& q, const SortedSupport& sorted);

// Exact min-max assignment by repeatedly cutting the largest admissible
// entry until the support condition breaks; the breaking value is optimal.
// Throws InfeasibleError if no assignment fits the memory limits.
CrunchResult crunch_solve(const BottleneckProblem& problem, bool record_cuts = false);

// Support profile left by cutting an arbitrary row-nondecreasing weight table
// down to its bottleneck threshold (the breaking entry restored). Row k keeps
// columns [0, support[k]). Used to sparsify weighted matching instances.
struct CrunchPrune {
  double threshold = 0.0;
  std::vector<int> support;
};
CrunchPrune crunch_prune(const RealMatrix& weights, std::span<const int> depth_limit);

// 1-based depths that no device assignment can cover given the memory
// prefixes (empty iff some full assignment exists).
std::vector<int> uncoverable_blocks(std::span<const int> depth_limit, int num_blocks);

}  // namespace deftsched
