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


#include "deftsched/suites.hpp"

#include <cmath>
#include <sstream>

#include "deftsched/crunch.hpp"
#include "deftsched/generate.hpp"
#include "deftsched/matching.hpp"
#include "deftsched/oracle.hpp"

namespace deftsched::suites {
namespace {

// Small shapes: L in 1..max_l, K in L..max_k.
std::pair<int, int> small_shape(gen::Rng& rng, int max_k, int max_l) {
  const int L = std::uniform_int_distribution<int>(1, max_l)(rng);
  const int K = std::uniform_int_distribution<int>(L, max_k)(rng);
  return {K, L};
}

void record(Tally& t, int i, bool ok, const std::string& detail) {
  ++t.total;
  if (ok) {
    ++t.agree;
  } else if (t.first_failure.empty()) {
    t.first_failure = "instance " + std::to_string(i) + ": " + detail;
  }
}

std::string pair_str(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << a << " vs " << b;
  return os.str();
}

}  // namespace

Tally crunch_vs_brute(std::uint64_t seed, int instances) {
  Tally t;
  t.name = "crunch";
  gen::Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    auto [K, L] = small_shape(rng, 8, 6);
    const auto p = gen::bottleneck(rng, K, L);
    const auto c = crunch_solve(p);
    const auto b = oracle::brute_bottleneck(p);
    const auto bad = oracle::check_assignment(c.assignment, K, p.depth_limit);
    record(t, i, c.latency == b.value && !bad,
           bad ? *bad : pair_str(c.latency, b.value));
  }
  return t;
}

Tally search_vs_crunch(std::uint64_t seed, int instances) {
  Tally t;
  t.name = "search";
  gen::Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    auto [K, L] = small_shape(rng, 8, 6);
    const auto p = gen::bottleneck(rng, K, L);
    const auto c = crunch_solve(p);
    const auto s = bottleneck_via_search(p);
    record(t, i, c.latency == s.latency, pair_str(s.latency, c.latency));
  }
  return t;
}

Tally hungarian_vs_brute(std::uint64_t seed, int instances) {
  Tally t;
  t.name = "hungarian";
  gen::Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    auto [K, L] = small_shape(rng, 8, 6);
    const auto w = gen::min_sum_weights(rng, K, L);
    const auto h = try_min_weight_perfect_matching(w);
    std::optional<oracle::BruteResult> b;
    try {
      b = oracle::brute_min_sum(w);
    } catch (const std::exception&) {
    }
    if (!h || !b) {
      record(t, i, !h && !b, "feasibility disagrees");
      continue;
    }
    bool ok = std::abs(h->total_weight - b->value) <= 1e-9 * std::max(1.0, std::abs(b->value));
    // Certificate: reduced costs nonnegative, zero on matched pairs.
    for (int k = 0; k < K && ok; ++k)
      for (int l = 0; l < L && ok; ++l)
        if (std::isfinite(w(k, l)) &&
            h->row_potential[k] + h->col_potential[l] > w(k, l) + 1e-9)
          ok = false;
    for (int l = 0; l < L && ok; ++l) {
      const int k = h->assignment.device_of_block[l];
      if (std::abs(h->row_potential[k] + h->col_potential[l] - w(k, l)) > 1e-9) ok = false;
    }
    record(t, i, ok, pair_str(h->total_weight, b->value));
  }
  return t;
}

Tally support_vs_matching(std::uint64_t seed, int instances) {
  Tally t;
  t.name = "support";
  gen::Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    auto [K, L] = small_shape(rng, 10, 8);
    const auto m = gen::staircase(rng, K, L);
    std::vector<int> support(K, 0);
    for (int k = 0; k < K; ++k)
      for (int l = 0; l < L; ++l) support[k] += m(k, l);
    const bool f = feasible(sort_support(support), L);
    const bool full = max_cardinality_matching(m) == L;
    record(t, i, f == full, f ? "feasible but no full matching" : "full matching but infeasible");
  }
  return t;
}

Tally jbba_vs_brute(std::uint64_t seed, int instances, double rel_tol) {
  Tally t;
  t.name = "jbba";
  gen::Rng rng(seed);
  for (int i = 0; i < instances; ++i) {
    auto [K, L] = small_shape(rng, 6, 4);
    const auto p = gen::jbba(rng, K, L);
    const auto s = jbba_solve(p);
    const auto b = oracle::brute_jbba(p);
    const auto bad = oracle::check_assignment(s.assignment, K, p.depth_limit);
    record(t, i, !bad && s.latency <= b.latency * (1.0 + rel_tol),
           bad ? *bad : pair_str(s.latency, b.latency));
  }
  return t;
}

}  // namespace deftsched::suites
