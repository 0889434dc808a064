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


#include "deftsched/generate.hpp"

#include <cmath>

namespace deftsched::gen {
namespace {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

std::vector<int> feasible_limits(Rng& rng, int K, int L) {
  std::vector<int> lim(K);
  do {
    for (int& x : lim) x = uniform_int(rng, 1, L);
  } while (!uncoverable_blocks(lim, L).empty());
  return lim;
}

BottleneckProblem bottleneck(Rng& rng, int K, int L, bool integer_valued) {
  BottleneckProblem p;
  p.latency = RealMatrix(K, L);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < K; ++k) {
    double v = integer_valued ? uniform_int(rng, 1, 20) : 20.0 * u(rng);
    for (int l = 0; l < L; ++l) {
      p.latency(k, l) = v;
      v += integer_valued ? uniform_int(rng, 0, 5) : 5.0 * u(rng);
    }
  }
  p.depth_limit = feasible_limits(rng, K, L);
  return p;
}

BoolMatrix staircase(Rng& rng, int K, int L) {
  BoolMatrix m(K, L, 0);
  for (int k = 0; k < K; ++k) {
    const int len = uniform_int(rng, 0, L);
    for (int l = 0; l < len; ++l) m(k, l) = 1;
  }
  return m;
}

RealMatrix min_sum_weights(Rng& rng, int K, int L, double forbid) {
  RealMatrix w(K, L);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::bernoulli_distribution cut(forbid);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < L; ++l)
      w(k, l) = cut(rng) ? std::numeric_limits<double>::infinity() : u(rng);
  return w;
}

JbbaProblem jbba(Rng& rng, int K, int L, double total_bandwidth) {
  JbbaProblem p;
  p.comp_latency = RealMatrix(K, L);
  p.spectral_eff.resize(K);
  p.payload_bits = 24576.0 * 32.0;
  p.total_bandwidth = total_bandwidth;
  std::uniform_real_distribution<double> f(0.5, 1.0);
  std::exponential_distribution<double> fading(1.0);
  for (int k = 0; k < K; ++k) {
    const double fk = f(rng);
    for (int l = 0; l < L; ++l) p.comp_latency(k, l) = (0.5 + 0.05 * (l + 1)) / fk;
    p.spectral_eff[k] = std::log2(1.0 + 10.0 * fading(rng));
  }
  p.depth_limit = feasible_limits(rng, K, L);
  return p;
}

}  // namespace deftsched::gen
