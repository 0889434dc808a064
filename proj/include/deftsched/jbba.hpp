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

#include <iosfwd>
#include <span>
#include <vector>

#include "deftsched/assignment.hpp"
#include "deftsched/matrix.hpp"
#include "deftsched/model.hpp"

namespace deftsched {

// Joint bandwidth-and-block allocation instance.
struct JbbaProblem {
  RealMatrix comp_latency;           // J, K x L, rows increasing in depth
  std::vector<double> spectral_eff;  // r, K
  std::vector<int> depth_limit;      // memory prefix, 0 for devices that cannot upload
  double payload_bits = 0.0;         // S
  double total_bandwidth = 0.0;      // B

  int num_devices() const noexcept { return static_cast<int>(comp_latency.rows()); }
  int num_blocks() const noexcept { return static_cast<int>(comp_latency.cols()); }

  static JbbaProblem from_instance(const Instance& instance);
  static JbbaProblem from_cost(const CostMatrix& cost, double payload_bits,
                               double total_bandwidth);
};

// Lagrange multipliers: lambda for the per-device latency constraints, mu for
// the bandwidth budget, sigma for involvement/assignment consistency.
struct DualState {
  std::vector<double> lambda;
  double mu = 0.0;
  std::vector<double> sigma;
  int step_index = 0;
};

// One primal minimizer of the Lagrangian.
struct PrimalPoint {
  double latency = 0.0;        // T
  Assignment blocks;           // alpha
  std::vector<char> involved;  // beta
  std::vector<double> bandwidth;
};

struct JbbaOptions {
  int max_iters = 5000;
  double tol = 1e-4;
  double eps0 = 0.0;  // 0 selects 1 / max J
  // Stop once the best polished latency has not improved by a relative
  // `tol` for this many iterations (0 disables).
  int stall_window = 500;
  double mu_step_scale = 1.0;
  double sigma_step_scale = 1.0;
  // Finish with swap/replace moves on the best assignment.
  bool local_search = true;
  bool record_trace = false;
};

enum class StopReason { kIterationLimit, kResiduals, kStalled };

struct TraceRow {
  int iteration = 0;
  double sum_lambda = 0.0;
  double mu = 0.0;
  double residual_latency = 0.0;
  double residual_bandwidth = 0.0;
  double residual_involvement = 0.0;
  double polished_latency = 0.0;
  double dual_bound = 0.0;  // best Lagrangian value so far
};

struct JbbaSolution {
  Assignment assignment;
  std::vector<char> involvement;
  std::vector<double> bandwidth;
  double latency = 0.0;
  bool converged = false;
  StopReason stop = StopReason::kIterationLimit;
  int iterations = 0;
  double dual_bound = 0.0;
  int mu_clamps = 0;
  std::vector<TraceRow> trace;
};

struct BlockAllocation {
  Assignment assignment;
  double weight = 0.0;  // sum of lambda_k J_kl - sigma_k over chosen pairs
};

struct InvolvementBandwidth {
  std::vector<char> involved;
  std::vector<double> bandwidth;
  bool mu_clamped = false;
  bool degenerate = false;  // every selected lambda was zero
};

struct PolishedBandwidth {
  std::vector<double> bandwidth;  // K, zero for idle devices
  double latency = 0.0;
};

inline constexpr double kMuFloor = 1e-12;

// Minimizer of (1 - sum lambda) T over T in {0, t_max}.
double primal_T(const DualState& dual, double t_max);

// Min-sum assignment under weights lambda_k J_kl - sigma_k with memory
// prefixes. Throws InfeasibleError if memory leaves some block uncoverable.
BlockAllocation primal_blocks(const DualState& dual, const RealMatrix& comp_latency,
                              std::span<const int> depth_limit);

// Closed-form involvement and bandwidth: the L devices with the smallest
// 2 sqrt(lambda_k S mu / r_k) + sigma_k, and B_k = sqrt(lambda_k S / (r_k mu)).
// Devices with r_k = 0 are never selected. `mu` below kMuFloor is clamped.
InvolvementBandwidth primal_bandwidth_involvement(const DualState& dual,
                                                  std::span<const double> spectral_eff,
                                                  double payload_bits, int num_blocks,
                                                  double total_bandwidth);

// Per-multiplier step lengths of one projected subgradient step.
struct DualStep {
  double lambda = 0.0;  // 1/s
  double mu = 0.0;      // s/Hz^2
  double sigma = 0.0;   // s
};

// Projected subgradient step on (lambda, mu, sigma). An involved device with
// zero bandwidth is charged the upload time at `bandwidth_floor`.
DualState dual_update(const DualState& state, const PrimalPoint& primal,
                      const JbbaProblem& problem, const DualStep& step,
                      double bandwidth_floor);

// Optimal bandwidth split for a fixed assignment: equalizes the per-device
// latency J_k + S / (B_k r_k) across involved devices under sum B_k = B.
PolishedBandwidth polish_bandwidth(const JbbaProblem& problem, const Assignment& assignment);

// Round latency of an assignment under a given bandwidth vector.
double assignment_latency(const JbbaProblem& problem, const Assignment& assignment,
                          std::span<const double> bandwidth);

// First-improvement local search over block swaps and moves to idle
// devices, each candidate scored with polish_bandwidth. Updates `assignment`
// in place and returns its polished bandwidth.
PolishedBandwidth refine_assignment(const JbbaProblem& problem, Assignment& assignment);

// Dual-ascent solver. The returned solution is the best polished iterate
// (seeded with the equal-bandwidth bottleneck optimum).
JbbaSolution jbba_solve(const JbbaProblem& problem, const JbbaOptions& options = {});

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace deftsched
