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

#include <random>
#include <vector>

#include "deftsched/crunch.hpp"
#include "deftsched/jbba.hpp"
#include "deftsched/matrix.hpp"

// Seeded random instances for oracle checks, benchmarks and tests.
namespace deftsched::gen {

using Rng = std::mt19937_64;

// Memory prefixes in 1..L that admit at least one full assignment.
std::vector<int> feasible_limits(Rng& rng, int K, int L);

// Row-nondecreasing latency table with feasible memory prefixes. Integer
// valued tables carry many ties.
BottleneckProblem bottleneck(Rng& rng, int K, int L, bool integer_valued = true);

// Staircase adjacency: row k is a random prefix of length 0..L.
BoolMatrix staircase(Rng& rng, int K, int L);

// Uniform weights in [-10, 10]; each entry is +infinity with probability
// `forbid`.
RealMatrix min_sum_weights(Rng& rng, int K, int L, double forbid = 0.2);

// Compute/communication instance: J from the affine depth law over
// f ~ U(0.5, 1), r from Rayleigh fading at 10 dB mean SNR.
JbbaProblem jbba(Rng& rng, int K, int L, double total_bandwidth = 5e6);

}  // namespace deftsched::gen
