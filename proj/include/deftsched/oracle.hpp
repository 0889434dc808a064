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
#include <span>
#include <string>

#include "deftsched/assignment.hpp"
#include "deftsched/crunch.hpp"
#include "deftsched/jbba.hpp"
#include "deftsched/matrix.hpp"

// Exhaustive reference solvers. They enumerate every injective block->device
// map and share no code with the solvers they check. Size guards throw
// std::length_error.
namespace deftsched::oracle {

struct BruteResult {
  double value = 0.0;
  Assignment assignment;
};

// K <= 10, L <= 7.
BruteResult brute_bottleneck(const BottleneckProblem& problem);

// K <= 8, L <= 6. +infinity marks a forbidden pair.
BruteResult brute_min_sum(const RealMatrix& weights);

// K <= 7, L <= 5. Exact bandwidth per assignment via polish_bandwidth.
JbbaSolution brute_jbba(const JbbaProblem& problem);

// Independent check of the assignment constraints: every block placed once,
// devices distinct and in range, depth within the device memory prefix.
// Returns a description of the first violation.
std::optional<std::string> check_assignment(const Assignment& assignment, int num_devices,
                                            std::span<const int> depth_limit);

}  // namespace deftsched::oracle
