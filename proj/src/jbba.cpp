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


#include "deftsched/jbba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "deftsched/crunch.hpp"
#include "deftsched/errors.hpp"
#include "deftsched/matching.hpp"

namespace deftsched {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_assignment_shape(const JbbaProblem& p, const Assignment& a) {
  if (a.num_blocks() != p.num_blocks())
    throw std::invalid_argument("assignment covers " + std::to_string(a.num_blocks()) +
                                " of " + std::to_string(p.num_blocks()) + " blocks");
}

// Equal-share bottleneck optimum; the starting point of the dual ascent.
Assignment equal_share_assignment(const JbbaProblem& p) {
  const int K = p.num_devices();
  const int L = p.num_blocks();
  BottleneckProblem bp{RealMatrix(K, L), p.depth_limit};
  const double share = p.total_bandwidth / L;
  for (int k = 0; k < K; ++k) {
    const double comm = comm_latency(p.payload_bits, share, p.spectral_eff[k]);
    for (int l = 0; l < L; ++l) bp.latency(k, l) = p.comp_latency(k, l) + comm;
  }
  return crunch_solve(bp).assignment;
}

struct Residuals {
  double latency = 0.0;
  double bandwidth = 0.0;
  double involvement = 0.0;
};

}  // namespace

JbbaProblem JbbaProblem::from_cost(const CostMatrix& cost, double payload_bits,
                                   double total_bandwidth) {
  return {cost.comp_latency, cost.spectral_eff, cost.admissible_depths(), payload_bits,
          total_bandwidth};
}

JbbaProblem JbbaProblem::from_instance(const Instance& instance) {
  return from_cost(build_cost_matrix(instance), instance.blocks.payload_bits,
                   instance.env.total_bandwidth);
}

double primal_T(const DualState& dual, double t_max) {
  const double coeff =
      1.0 - std::accumulate(dual.lambda.begin(), dual.lambda.end(), 0.0);
  return coeff < 0.0 ? t_max : 0.0;
}

BlockAllocation primal_blocks(const DualState& dual, const RealMatrix& comp_latency,
                              std::span<const int> depth_limit) {
  const int K = static_cast<int>(comp_latency.rows());
  const int L = static_cast<int>(comp_latency.cols());
  if (K < L) throw InfeasibleError("fewer devices than blocks");

  RealMatrix w(K, L, kInf);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < depth_limit[k]; ++l)
      w(k, l) = dual.lambda[k] * comp_latency(k, l) - dual.sigma[k];

  // Bottleneck cutting yields a feasible incumbent in O(KL log K). Any pair
  // whose weight plus the best possible cover of the other blocks exceeds
  // the incumbent's total cannot be in a min-sum matching; drop it.
  const CrunchPrune pruned = crunch_prune(w, depth_limit);
  const SortedSupport sorted = sort_support(pruned.support);
  double incumbent = 0.0;
  for (int l = 1; l <= L; ++l) incumbent += w(sorted.device[K - L + l - 1], l - 1);

  std::vector<double> col_min(L, kInf);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < depth_limit[k]; ++l) col_min[l] = std::min(col_min[l], w(k, l));
  const double cover = std::accumulate(col_min.begin(), col_min.end(), 0.0);
  const double slack = 1e-9 * (std::abs(incumbent) + std::abs(cover) + 1.0);
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < depth_limit[k]; ++l)
      if (w(k, l) - col_min[l] + cover > incumbent + slack) w(k, l) = kInf;

  MatchingResult m = min_weight_perfect_matching(w);
  return {std::move(m.assignment), m.total_weight};
}

InvolvementBandwidth primal_bandwidth_involvement(const DualState& dual,
                                                  std::span<const double> spectral_eff,
                                                  double payload_bits, int num_blocks,
                                                  double total_bandwidth) {
  const int K = static_cast<int>(spectral_eff.size());
  InvolvementBandwidth out;
  out.mu_clamped = dual.mu < kMuFloor;
  const double mu = std::max(dual.mu, kMuFloor);

  std::vector<double> coeff(K, kInf);
  for (int k = 0; k < K; ++k)
    if (spectral_eff[k] > 0.0)
      coeff[k] = 2.0 * std::sqrt(dual.lambda[k] * payload_bits * mu / spectral_eff[k]) +
                 dual.sigma[k];

  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (coeff[a] != coeff[b]) return coeff[a] < coeff[b];
    return spectral_eff[a] > spectral_eff[b];
  });
  if (num_blocks > K || !std::isfinite(coeff[order[num_blocks - 1]]))
    throw InfeasibleError("fewer than L devices can upload");

  out.involved.assign(K, 0);
  out.bandwidth.assign(K, 0.0);
  bool any_positive = false;
  for (int j = 0; j < num_blocks; ++j) {
    const int k = order[j];
    out.involved[k] = 1;
    out.bandwidth[k] = std::sqrt(dual.lambda[k] * payload_bits / (spectral_eff[k] * mu));
    any_positive = any_positive || dual.lambda[k] > 0.0;
  }
  if (!any_positive) {
    out.degenerate = true;
    for (int k = 0; k < K; ++k)
      if (out.involved[k]) out.bandwidth[k] = total_bandwidth / num_blocks;
  }
  return out;
}

DualState dual_update(const DualState& state, const PrimalPoint& primal,
                      const JbbaProblem& problem, const DualStep& step,
                      double bandwidth_floor) {
  const int K = problem.num_devices();
  const auto block_of = primal.blocks.block_of_device(K);
  DualState next = state;
  double used = 0.0;
  for (int k = 0; k < K; ++k) {
    const double comp = block_of[k] >= 0 ? problem.comp_latency(k, block_of[k]) : 0.0;
    double comm = 0.0;
    if (primal.involved[k]) {
      const double bw = primal.bandwidth[k] > 0.0 ? primal.bandwidth[k] : bandwidth_floor;
      comm = problem.payload_bits / (bw * problem.spectral_eff[k]);
    }
    next.lambda[k] = std::max(0.0, state.lambda[k] + step.lambda * (comp + comm - primal.latency));
    next.sigma[k] = state.sigma[k] + step.sigma * ((primal.involved[k] ? 1.0 : 0.0) -
                                                    (block_of[k] >= 0 ? 1.0 : 0.0));
    used += primal.bandwidth[k];
  }
  next.mu = std::max(0.0, state.mu + step.mu * (used - problem.total_bandwidth));
  next.step_index = state.step_index + 1;
  return next;
}

PolishedBandwidth polish_bandwidth(const JbbaProblem& problem, const Assignment& assignment) {
  require_assignment_shape(problem, assignment);
  const int K = problem.num_devices();
  const double S = problem.payload_bits;
  const double B = problem.total_bandwidth;

  std::vector<int> dev;
  std::vector<double> comp, rate;
  for (int l = 0; l < assignment.num_blocks(); ++l) {
    const int k = assignment.device_of_block[l];
    if (!(problem.spectral_eff[k] > 0.0))
      throw std::invalid_argument("device " + std::to_string(k) + " cannot upload");
    dev.push_back(k);
    comp.push_back(problem.comp_latency(k, l));
    rate.push_back(problem.spectral_eff[k]);
  }
  const int n = static_cast<int>(dev.size());

  PolishedBandwidth out;
  out.bandwidth.assign(K, 0.0);
  const double max_comp = *std::max_element(comp.begin(), comp.end());
  if (S == 0.0) {
    for (int k : dev) out.bandwidth[k] = B / n;
    out.latency = max_comp;
    return out;
  }

  // Demand sum_k S / (r_k (T - J_k)) is decreasing in T > max J; find where
  // it meets B. At `hi` every gap is at least sum_k S / (r_k B), so demand <= B.
  auto demand = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += S / (rate[i] * (t - comp[i]));
    return sum;
  };
  double span = 0.0;
  for (int i = 0; i < n; ++i) span += S / (rate[i] * B);
  double lo = max_comp;
  double hi = max_comp + span;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (demand(mid) > B) lo = mid;
    else hi = mid;
  }
  for (int i = 0; i < n; ++i) out.bandwidth[dev[i]] = S / (rate[i] * (hi - comp[i]));
  out.latency = assignment_latency(problem, assignment, out.bandwidth);
  return out;
}

double assignment_latency(const JbbaProblem& problem, const Assignment& assignment,
                          std::span<const double> bandwidth) {
  double worst = 0.0;
  for (int l = 0; l < assignment.num_blocks(); ++l) {
    const int k = assignment.device_of_block[l];
    worst = std::max(worst, problem.comp_latency(k, l) +
                                comm_latency(problem.payload_bits, bandwidth[k],
                                             problem.spectral_eff[k]));
  }
  return worst;
}

PolishedBandwidth refine_assignment(const JbbaProblem& problem, Assignment& assignment) {
  const int K = problem.num_devices();
  const int L = problem.num_blocks();
  auto fits = [&](int k, int l) { return l < problem.depth_limit[k] && problem.spectral_eff[k] > 0.0; };
  PolishedBandwidth cur = polish_bandwidth(problem, assignment);
  bool improved = true;
  while (improved) {
    improved = false;
    auto try_move = [&](Assignment cand) {
      auto pol = polish_bandwidth(problem, cand);
      if (pol.latency < cur.latency * (1.0 - 1e-12)) {
        assignment = std::move(cand);
        cur = std::move(pol);
        improved = true;
      }
    };
    for (int a = 0; a < L && !improved; ++a)
      for (int b = a + 1; b < L && !improved; ++b) {
        const int ka = assignment.device_of_block[a];
        const int kb = assignment.device_of_block[b];
        if (!fits(ka, b) || !fits(kb, a)) continue;
        Assignment cand = assignment;
        std::swap(cand.device_of_block[a], cand.device_of_block[b]);
        try_move(std::move(cand));
      }
    const auto block_of = assignment.block_of_device(K);
    for (int l = 0; l < L && !improved; ++l)
      for (int k = 0; k < K && !improved; ++k) {
        if (block_of[k] >= 0 || !fits(k, l)) continue;
        Assignment cand = assignment;
        cand.device_of_block[l] = k;
        try_move(std::move(cand));
      }
  }
  return cur;
}

JbbaSolution jbba_solve(const JbbaProblem& problem, const JbbaOptions& options) {
  const int K = problem.num_devices();
  const int L = problem.num_blocks();
  if (K < L) throw InfeasibleError("fewer devices than blocks");
  const double S = problem.payload_bits;
  const double B = problem.total_bandwidth;

  JbbaSolution best;
  best.assignment = equal_share_assignment(problem);
  {
    auto pol = polish_bandwidth(problem, best.assignment);
    best.bandwidth = std::move(pol.bandwidth);
    best.latency = pol.latency;
  }

  double max_comp = 0.0;
  double mean_rate = 0.0;
  int schedulable = 0;
  for (int k = 0; k < K; ++k) {
    for (int l = 0; l < problem.depth_limit[k]; ++l)
      max_comp = std::max(max_comp, problem.comp_latency(k, l));
    if (problem.spectral_eff[k] > 0.0) {
      mean_rate += problem.spectral_eff[k];
      ++schedulable;
    }
  }
  mean_rate /= std::max(schedulable, 1);

  DualState dual;
  dual.lambda.assign(K, 1.0 / K);
  dual.sigma.assign(K, 0.0);
  // Puts the initial closed-form bandwidths near B / L.
  const double mu0 = (1.0 / K) * S * L * L / (mean_rate * B * B);
  dual.mu = std::max(mu0, kMuFloor);

  const double eps0 = options.eps0 > 0.0 ? options.eps0 : 1.0 / max_comp;
  const double bandwidth_floor = 1e-3 * B / L;
  double t_max = best.latency;
  double dual_bound = -kInf;
  int last_improvement = 0;
  double stall_reference = best.latency;

  int it = 1;
  for (; it <= options.max_iters; ++it) {
    const double eta = 1.0 / std::sqrt(static_cast<double>(it));

    PrimalPoint primal;
    primal.latency = primal_T(dual, t_max);
    const BlockAllocation alloc = primal_blocks(dual, problem.comp_latency, problem.depth_limit);
    primal.blocks = alloc.assignment;
    auto ib = primal_bandwidth_involvement(dual, problem.spectral_eff, S, L, B);
    best.mu_clamps += ib.mu_clamped;
    primal.involved = std::move(ib.involved);
    primal.bandwidth = std::move(ib.bandwidth);

    const double sum_lambda = std::accumulate(dual.lambda.begin(), dual.lambda.end(), 0.0);
    const double mu = std::max(dual.mu, kMuFloor);

    // Constraint residuals of this primal point, and the Lagrangian value
    // at it (a lower bound on the optimum since the point minimizes it).
    Residuals res;
    double lagrangian = (1.0 - sum_lambda) * primal.latency + alloc.weight - mu * B;
    const auto block_of = primal.blocks.block_of_device(K);
    double used = 0.0;
    for (int k = 0; k < K; ++k) {
      const double comp = block_of[k] >= 0 ? problem.comp_latency(k, block_of[k]) : 0.0;
      double comm = 0.0;
      if (primal.involved[k]) {
        comm = primal.bandwidth[k] > 0.0 ? S / (primal.bandwidth[k] * problem.spectral_eff[k])
                                         : kInf;
        lagrangian += 2.0 * std::sqrt(dual.lambda[k] * S * mu / problem.spectral_eff[k]) +
                      dual.sigma[k];
      }
      double g = comp + comm - primal.latency;
      if (dual.lambda[k] <= 0.0 && g < 0.0) g = 0.0;
      res.latency = std::max(res.latency, std::abs(g) / t_max);
      res.involvement =
          std::max(res.involvement, std::abs(double(primal.involved[k]) - (block_of[k] >= 0)));
      used += primal.bandwidth[k];
    }
    res.bandwidth = std::abs(used - B) / B;
    dual_bound = std::max(dual_bound, lagrangian);

    const auto pol = polish_bandwidth(problem, primal.blocks);
    if (pol.latency < best.latency) {
      best.latency = pol.latency;
      best.assignment = primal.blocks;
      best.bandwidth = pol.bandwidth;
    }
    if (best.latency < stall_reference * (1.0 - options.tol)) {
      stall_reference = best.latency;
      last_improvement = it;
    }
    t_max = pol.latency;

    if (options.record_trace)
      best.trace.push_back({it, sum_lambda, dual.mu, res.latency, res.bandwidth,
                            res.involvement, pol.latency, dual_bound});

    if (res.latency <= options.tol && res.bandwidth <= options.tol &&
        res.involvement <= options.tol) {
      best.stop = StopReason::kResiduals;
      break;
    }
    if (options.stall_window > 0 && it - last_improvement >= options.stall_window) {
      best.stop = StopReason::kStalled;
      break;
    }

    const DualStep step{eps0 * eta, eta * options.mu_step_scale * mu0 / B,
                        eta * options.sigma_step_scale * max_comp / K};
    dual = dual_update(dual, primal, problem, step, bandwidth_floor);
  }
  best.iterations = std::min(it, options.max_iters);
  if (options.local_search) {
    auto pol = refine_assignment(problem, best.assignment);
    if (pol.latency < best.latency) {
      best.latency = pol.latency;
      best.bandwidth = std::move(pol.bandwidth);
    }
  }
  best.converged = best.stop != StopReason::kIterationLimit;
  best.dual_bound = dual_bound;
  best.involvement.assign(K, 0);
  for (int k : best.assignment.device_of_block) best.involvement[k] = 1;
  return best;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iteration,sum_lambda,mu,residual_latency,residual_bandwidth,residual_involvement,"
        "polished_latency_s,dual_bound_s\n";
  const auto old_precision = os.precision(12);
  for (const auto& r : trace)
    os << r.iteration << ',' << r.sum_lambda << ',' << r.mu << ',' << r.residual_latency
       << ',' << r.residual_bandwidth << ',' << r.residual_involvement << ','
       << r.polished_latency << ',' << r.dual_bound << '\n';
  os.precision(old_precision);
}

}  // namespace deftsched
