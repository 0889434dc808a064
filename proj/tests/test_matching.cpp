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


#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "deftsched/errors.hpp"
#include "deftsched/generate.hpp"
#include "deftsched/matching.hpp"
#include "deftsched/suites.hpp"
#include "fixtures.hpp"

namespace deftsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Hungarian, SquareClassic) {
  RealMatrix w{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto m = min_weight_perfect_matching(w);
  EXPECT_DOUBLE_EQ(m.total_weight, 5.0);
  EXPECT_EQ(m.assignment.device_of_block, (std::vector<int>{1, 0, 2}));
}

TEST(Hungarian, RectangularPicksBestRows) {
  RealMatrix w{{9, 9}, {1, 8}, {7, 2}, {5, 5}};
  const auto m = min_weight_perfect_matching(w);
  EXPECT_DOUBLE_EQ(m.total_weight, 3.0);
  EXPECT_EQ(m.assignment.device_of_block, (std::vector<int>{1, 2}));
  EXPECT_EQ(m.row_potential.size(), 4u);
  EXPECT_EQ(m.col_potential.size(), 2u);
}

TEST(Hungarian, NegativeWeights) {
  RealMatrix w{{-5, -1}, {-2, -4}};
  EXPECT_DOUBLE_EQ(min_weight_perfect_matching(w).total_weight, -9.0);
}

TEST(Hungarian, ForbiddenPairsAvoided) {
  RealMatrix w{{1, kInf}, {kInf, 100}};
  EXPECT_DOUBLE_EQ(min_weight_perfect_matching(w).total_weight, 101.0);
}

TEST(Hungarian, NoFiniteMatching) {
  RealMatrix w{{1, kInf}, {2, kInf}};
  EXPECT_FALSE(try_min_weight_perfect_matching(w).has_value());
  EXPECT_THROW(min_weight_perfect_matching(w), InfeasibleError);
  EXPECT_FALSE(try_min_weight_perfect_matching(RealMatrix{{1, 2}}).has_value());
}

TEST(Hungarian, MatchesExhaustiveSearchWithCertificate) {
  const auto t = suites::hungarian_vs_brute(31, 400);
  EXPECT_TRUE(t.ok()) << t.first_failure;
}

TEST(HopcroftKarp, CompleteAndEmptyGraphs) {
  EXPECT_EQ(max_cardinality_matching(BoolMatrix(5, 3, 1)), 3);
  EXPECT_EQ(max_cardinality_matching(BoolMatrix(5, 3, 0)), 0);
}

TEST(HopcroftKarp, NeedsAugmentingPath) {
  BoolMatrix a{{1, 1, 0}, {1, 0, 0}, {0, 1, 1}};
  EXPECT_EQ(max_cardinality_matching(a), 3);
  BoolMatrix b{{1, 0}, {1, 0}, {1, 0}};
  EXPECT_EQ(max_cardinality_matching(b), 1);
}

TEST(ThresholdSearch, Reference) {
  const auto r = bottleneck_via_search(testing::reference_problem());
  EXPECT_EQ(r.latency, 29.0);
  EXPECT_TRUE(r.completed);
  EXPECT_GT(r.feasibility_checks, 0);
}

TEST(ThresholdSearch, SingleCell) {
  EXPECT_EQ(bottleneck_via_search({RealMatrix{{3.0}}, {1}}).latency, 3.0);
}

TEST(ThresholdSearch, AgreesWithCutting) {
  const auto t = suites::search_vs_crunch(32, 300);
  EXPECT_TRUE(t.ok()) << t.first_failure;
}

TEST(ThresholdSearch, BudgetStopsTheScan) {
  gen::Rng rng(33);
  const auto p = gen::bottleneck(rng, 60, 30, false);
  const auto r = bottleneck_via_search(p, 1e-6);
  EXPECT_FALSE(r.completed);
  EXPECT_TRUE(std::isnan(r.latency));
}

TEST(ThresholdSearch, UncoverableMemory) {
  BottleneckProblem p{RealMatrix{{1, 2}, {1, 2}}, {1, 1}};
  EXPECT_THROW(bottleneck_via_search(p), InfeasibleError);
}

}  // namespace
}  // namespace deftsched
