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


#include "deftsched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include <omp.h>

#include "deftsched/crunch.hpp"
#include "deftsched/errors.hpp"

namespace deftsched::sim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxMemoryRedraws = 1000;

struct SchemeEntry {
  Scheme scheme;
  std::string_view name;
};
constexpr SchemeEntry kSchemes[] = {{Scheme::kCommAware, "comm-aware"},
                                    {Scheme::kCompAware, "comp-aware"},
                                    {Scheme::kBaCrunch, "ba-crunch"},
                                    {Scheme::kJbba, "jbba"}};

std::vector<double> equal_share(const Assignment& a, int K, double B) {
  std::vector<double> bw(K, 0.0);
  const double share = B / a.num_blocks();
  for (int k : a.device_of_block) bw[k] = share;
  return bw;
}

double bottleneck_latency(const CostMatrix& cost, const Assignment& a) {
  double worst = 0.0;
  for (int l = 0; l < a.num_blocks(); ++l)
    worst = std::max(worst, cost.total(a.device_of_block[l], l));
  return worst;
}

// Greedy baseline: the L best devices by `key`, deepest block to the best.
// On a memory violation, blocks are reassigned deepest first to the best
// unused device whose memory holds them.
RoundResult greedy_baseline(const CostMatrix& cost, const std::vector<double>& key,
                            Scheme scheme, const CampaignConfig& config) {
  const int K = cost.num_devices();
  const int L = cost.num_blocks();
  RoundResult res;
  res.scheme = scheme;
  res.latency = kNaN;

  std::vector<int> ranked;
  for (int k = 0; k < K; ++k)
    if (cost.schedulable[k]) ranked.push_back(k);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](int a, int b) { return key[a] > key[b]; });
  if (static_cast<int>(ranked.size()) < L) return res;

  Assignment a;
  a.device_of_block.resize(L);
  for (int l = 0; l < L; ++l) {
    const int k = ranked[L - 1 - l];
    a.device_of_block[l] = k;
    if (l + 1 > cost.depth_limit[k]) res.memory_wall = true;
  }

  if (res.memory_wall) {
    if (!config.repair) return res;
    std::vector<char> used(K, 0);
    for (int l = L - 1; l >= 0; --l) {
      auto it = std::find_if(ranked.begin(), ranked.end(),
                             [&](int k) { return !used[k] && cost.depth_limit[k] >= l + 1; });
      if (it == ranked.end()) return res;
      used[*it] = 1;
      a.device_of_block[l] = *it;
    }
  }

  res.latency = bottleneck_latency(cost, a);
  res.bandwidth = equal_share(a, K, config.bandwidth_hz);
  res.assignment = std::move(a);
  res.feasible = true;
  return res;
}

std::vector<RoundRecord> simulate_impl(const CampaignConfig& config, int jobs, bool parallel) {
  config.validate();
  std::vector<RoundRecord> records(config.rounds);
  auto one = [&](int n) {
    const RoundInstance round = sample_round(config, n);
    RoundRecord rec;
    rec.round = n;
    std::optional<CostMatrix> cost;
    try {
      cost = build_cost_matrix(round.instance);
    } catch (const InfeasibleError&) {
    }
    for (Scheme s : config.schemes) {
      if (cost) {
        rec.results.push_back(run_scheme(round, *cost, s, config));
      } else {
        RoundResult r;
        r.scheme = s;
        r.latency = kNaN;
        rec.results.push_back(std::move(r));
      }
    }
    records[n] = std::move(rec);
  };

  if (parallel) {
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int n = 0; n < config.rounds; ++n) one(n);
  } else {
    for (int n = 0; n < config.rounds; ++n) one(n);
  }
  return records;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  for (const auto& e : kSchemes)
    if (e.scheme == scheme) return e.name;
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (const auto& e : kSchemes)
    if (e.name == name) return e.scheme;
  return std::nullopt;
}

void CampaignConfig::validate() const {
  if (num_blocks < 1) throw InputError("config: num_blocks must be >= 1");
  if (num_devices < num_blocks) throw InputError("config: num_devices must be >= num_blocks");
  if (rounds < 1) throw InputError("config: rounds must be >= 1");
  if (!std::isfinite(snr_db)) throw InputError("config: snr_db must be finite");
  if (!(path_loss > 0.0)) throw InputError("config: path_loss must be > 0");
  if (!(bandwidth_hz > 0.0)) throw InputError("config: bandwidth_hz must be > 0");
  if (!(noise_power > 0.0)) throw InputError("config: noise_power must be > 0");
  if (!(compute_low > 0.0 && compute_low < compute_high))
    throw InputError("config: compute_factor_range must satisfy 0 < low < high");
  if (!(memory_low > 0.0 && memory_low < memory_high))
    throw InputError("config: memory_range_bytes must satisfy 0 < low < high");
  if (block_model.num_blocks != num_blocks)
    throw InputError("config: block_model.L must equal num_blocks");
  block_model.validate();
  if (schemes.empty()) throw InputError("config: schemes must not be empty");
}

RoundInstance sample_round(const CampaignConfig& config, int round_index) {
  const auto s = config.seed;
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(round_index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> compute(config.compute_low, config.compute_high);
  std::uniform_real_distribution<double> memory(config.memory_low, config.memory_high);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  const int K = config.num_devices;
  const double snr = std::pow(10.0, config.snr_db / 10.0);

  RoundInstance out;
  out.round = round_index;
  out.instance.blocks = config.block_model;
  out.instance.env = {config.noise_power, config.bandwidth_hz};
  out.instance.devices.resize(K);
  for (int k = 0; k < K; ++k) {
    auto& d = out.instance.devices[k];
    d.id = k;
    d.compute_factor = compute(rng);
    d.memory_budget = memory(rng);
    const std::complex<double> h(gauss(rng), gauss(rng));
    d.channel_gain = config.path_loss * std::norm(h);
    d.tx_power = snr * config.noise_power / config.path_loss;
  }

  auto limits = [&] {
    std::vector<int> lim(K);
    for (int k = 0; k < K; ++k)
      lim[k] = memory_depth_limit(out.instance.devices[k], config.block_model);
    return lim;
  };
  while (!uncoverable_blocks(limits(), config.num_blocks).empty()) {
    if (out.memory_redraws == kMaxMemoryRedraws) {
      out.coverable = false;
      break;
    }
    ++out.memory_redraws;
    for (auto& d : out.instance.devices) d.memory_budget = memory(rng);
  }
  return out;
}

RoundResult run_scheme(const RoundInstance& round, const CostMatrix& cost, Scheme scheme,
                       const CampaignConfig& config) {
  const int K = cost.num_devices();
  RoundResult res;
  res.scheme = scheme;
  res.latency = kNaN;
  try {
    switch (scheme) {
      case Scheme::kCommAware:
        return greedy_baseline(cost, cost.spectral_eff, scheme, config);
      case Scheme::kCompAware: {
        std::vector<double> f(K);
        for (int k = 0; k < K; ++k) f[k] = round.instance.devices[k].compute_factor;
        return greedy_baseline(cost, f, scheme, config);
      }
      case Scheme::kBaCrunch: {
        auto sol = crunch_solve(BottleneckProblem::from_cost(cost));
        res.latency = sol.latency;
        res.bandwidth = equal_share(sol.assignment, K, config.bandwidth_hz);
        res.assignment = std::move(sol.assignment);
        res.feasible = true;
        return res;
      }
      case Scheme::kJbba: {
        auto problem = JbbaProblem::from_cost(cost, config.block_model.payload_bits,
                                              config.bandwidth_hz);
        auto sol = jbba_solve(problem, config.jbba);
        res.latency = sol.latency;
        res.bandwidth = std::move(sol.bandwidth);
        res.assignment = std::move(sol.assignment);
        res.converged = sol.converged;
        res.feasible = true;
        return res;
      }
    }
  } catch (const InfeasibleError&) {
  }
  return res;
}

std::vector<RoundRecord> simulate(const CampaignConfig& config, int jobs) {
  return simulate_impl(config, jobs, true);
}

std::vector<RoundRecord> simulate_serial(const CampaignConfig& config) {
  return simulate_impl(config, 1, false);
}

std::string_view sweep_name(SweepVar var) {
  switch (var) {
    case SweepVar::kSnr: return "snr_db";
    case SweepVar::kBandwidth: return "bandwidth_hz";
    case SweepVar::kDevices: return "num_devices";
    case SweepVar::kNone: break;
  }
  return "none";
}

std::optional<SweepVar> parse_sweep(std::string_view name) {
  if (name == "snr") return SweepVar::kSnr;
  if (name == "bandwidth") return SweepVar::kBandwidth;
  if (name == "devices") return SweepVar::kDevices;
  if (name == "none") return SweepVar::kNone;
  return std::nullopt;
}

std::vector<double> default_sweep_values(SweepVar var) {
  switch (var) {
    case SweepVar::kSnr: return {0, 5, 10, 15, 20};
    case SweepVar::kBandwidth: return {20e6, 50e6, 100e6, 150e6, 200e6};
    case SweepVar::kDevices: return {12, 20, 30, 40, 50};
    case SweepVar::kNone: break;
  }
  return {};
}

CampaignConfig at_sweep_point(const CampaignConfig& base, SweepVar var, double value) {
  CampaignConfig c = base;
  switch (var) {
    case SweepVar::kSnr: c.snr_db = value; break;
    case SweepVar::kBandwidth: c.bandwidth_hz = value; break;
    case SweepVar::kDevices: c.num_devices = static_cast<int>(std::lround(value)); break;
    case SweepVar::kNone: break;
  }
  return c;
}

const ReportRow* CampaignReport::find(Scheme scheme, double sweep_value) const {
  for (const auto& r : rows)
    if (r.scheme == scheme && r.sweep_value == sweep_value) return &r;
  return nullptr;
}

void summarize(const std::vector<RoundRecord>& records, const CampaignConfig& config,
               SweepVar var, double sweep_value, CampaignReport& report) {
  const std::size_t first = report.rows.size();
  for (std::size_t i = 0; i < config.schemes.size(); ++i) {
    ReportRow row;
    row.sweep_var = std::string(sweep_name(var));
    row.sweep_value = sweep_value;
    row.scheme = config.schemes[i];
    std::vector<double> lat;
    for (const auto& rec : records) {
      const auto& r = rec.results[i];
      if (!r.feasible || r.memory_wall) ++row.infeasible_rounds;
      if (r.feasible) lat.push_back(r.latency);
    }
    row.rounds = static_cast<int>(lat.size());
    if (lat.empty()) {
      row.mean_latency = row.p95_latency = kNaN;
    } else {
      row.mean_latency = std::accumulate(lat.begin(), lat.end(), 0.0) / lat.size();
      std::sort(lat.begin(), lat.end());
      const auto rank = static_cast<std::size_t>(std::ceil(0.95 * lat.size()));
      row.p95_latency = lat[std::max<std::size_t>(rank, 1) - 1];
    }
    report.rows.push_back(std::move(row));
  }
  const ReportRow* base = nullptr;
  for (std::size_t i = first; i < report.rows.size(); ++i)
    if (report.rows[i].scheme == Scheme::kCommAware) base = &report.rows[i];
  if (base == nullptr) return;
  const double ref = base->mean_latency;
  for (std::size_t i = first; i < report.rows.size(); ++i)
    report.rows[i].reduction_vs_baseline = 1.0 - report.rows[i].mean_latency / ref;
}

CampaignReport run_campaign(const CampaignConfig& config, SweepVar var,
                            std::vector<double> values, int jobs) {
  if (var == SweepVar::kNone) values = {0.0};
  else if (values.empty()) values = default_sweep_values(var);
  CampaignReport report;
  for (double v : values) {
    const CampaignConfig c = at_sweep_point(config, var, v);
    summarize(simulate(c, jobs), c, var, v, report);
  }
  return report;
}

void write_report_csv(std::ostream& os, const CampaignReport& report) {
  os << "sweep_var,sweep_value,scheme,rounds,mean_latency_s,p95_latency_s,infeasible_rounds,"
        "reduction_vs_baseline\r\n";
  for (const auto& r : report.rows) {
    os << r.sweep_var << ',' << format_number(r.sweep_value) << ',' << scheme_name(r.scheme)
       << ',' << r.rounds << ',' << format_number(r.mean_latency) << ','
       << format_number(r.p95_latency) << ',' << r.infeasible_rounds << ',';
    if (r.reduction_vs_baseline) os << format_number(*r.reduction_vs_baseline);
    os << "\r\n";
  }
}

}  // namespace deftsched::sim
