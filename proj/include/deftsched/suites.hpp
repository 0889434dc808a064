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

#include <cstdint>
#include <string>

// Seeded randomized cross-checks between solvers and the exhaustive oracles.
namespace deftsched::suites {

struct Tally {
  std::string name;
  int agree = 0;
  int total = 0;
  std::string first_failure;  // empty when every instance agrees

  bool ok() const { return agree == total; }
};

// crunch_solve against brute_bottleneck, exact equality (K <= 8, L <= 6).
Tally crunch_vs_brute(std::uint64_t seed, int instances);

// bottleneck_via_search against crunch_solve on the same instances.
Tally search_vs_crunch(std::uint64_t seed, int instances);

// Hungarian total weight against brute_min_sum, 1e-9 relative, plus the
// dual certificate on every solve.
Tally hungarian_vs_brute(std::uint64_t seed, int instances);

// feasible() against max_cardinality_matching == L on staircase graphs.
Tally support_vs_matching(std::uint64_t seed, int instances);

// jbba_solve within `rel_tol` of brute_jbba (K <= 6, L <= 4).
Tally jbba_vs_brute(std::uint64_t seed, int instances, double rel_tol = 0.02);

}  // namespace deftsched::suites
