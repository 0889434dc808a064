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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deftsched/assignment.hpp"
#include "deftsched/jbba.hpp"
#include "deftsched/model.hpp"

namespace deftsched::sim {

enum class Scheme { kCommAware, kCompAware, kBaCrunch, kJbba };

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 1;

struct CampaignConfig {
  int num_devices = 20;
  int num_blocks = 12;
  int rounds = 1000;
  double snr_db = 10.0;       // mean received SNR, p * path_loss / N0
  double path_loss = 1e-3;
  double bandwidth_hz = 100e6;
  double noise_power = 1e-13;  // watts; only p / N0 matters
  double compute_low = 0.5;
  double compute_high = 1.0;
  double memory_low = 1.0 * kGigabyte;
  double memory_high = 6.0 * kGigabyte;
  BlockCostModel block_model = {12, 0.5, 0.05, 1.3 * kGigabyte - 2.7 / 11.0 * kGigabyte,
                                2.7 / 11.0 * kGigabyte, 24576.0 * 32.0, 1};
  std::uint64_t seed = kDefaultSeed;
  std::vector<Scheme> schemes = {Scheme::kCommAware, Scheme::kCompAware, Scheme::kBaCrunch,
                                 Scheme::kJbba};
  bool repair = true;
  JbbaOptions jbba;

  // Throws InputError.
  void validate() const;
};

struct RoundInstance {
  int round = 0;
  Instance instance;
  int memory_redraws = 0;
  bool coverable = true;  // some assignment fits the memory budgets
};

struct RoundResult {
  Scheme scheme = Scheme::kCommAware;
  double latency = 0.0;
  Assignment assignment;
  std::vector<double> bandwidth;
  bool feasible = false;     // a memory-feasible assignment was produced
  bool memory_wall = false;  // the scheme's own pairing violated memory
  bool converged = true;
};

// Deterministic in (config.seed, round_index). Memory budgets are redrawn
// from the round's stream while they leave some block uncoverable.
RoundInstance sample_round(const CampaignConfig& config, int round_index);

// Runs one scheme on a round; `cost` is build_cost_matrix(round.instance).
RoundResult run_scheme(const RoundInstance& round, const CostMatrix& cost, Scheme scheme,
                       const CampaignConfig& config);

struct RoundRecord {
  int round = 0;
  std::vector<RoundResult> results;  // in config.schemes order
};

// Rounds in parallel (OpenMP, `jobs` threads; 0 = all cores), merged in
// round order.
std::vector<RoundRecord> simulate(const CampaignConfig& config, int jobs = 0);

// Single-threaded reference for simulate().
std::vector<RoundRecord> simulate_serial(const CampaignConfig& config);

enum class SweepVar { kNone, kSnr, kBandwidth, kDevices };

std::string_view sweep_name(SweepVar var);
std::optional<SweepVar> parse_sweep(std::string_view name);
std::vector<double> default_sweep_values(SweepVar var);

// Applies one sweep point to a base config.
CampaignConfig at_sweep_point(const CampaignConfig& base, SweepVar var, double value);

struct ReportRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  Scheme scheme = Scheme::kCommAware;
  int rounds = 0;  // rounds with a feasible result
  double mean_latency = 0.0;
  double p95_latency = 0.0;
  int infeasible_rounds = 0;
  std::optional<double> reduction_vs_baseline;  // 1 - mean / mean(comm-aware)
};

struct CampaignReport {
  std::vector<ReportRow> rows;

  const ReportRow* find(Scheme scheme, double sweep_value) const;
};

void summarize(const std::vector<RoundRecord>& records, const CampaignConfig& config,
               SweepVar var, double sweep_value, CampaignReport& report);

CampaignReport run_campaign(const CampaignConfig& config, SweepVar var = SweepVar::kNone,
                            std::vector<double> values = {}, int jobs = 0);

// RFC 4180 CSV:
// sweep_var,sweep_value,scheme,rounds,mean_latency_s,p95_latency_s,
// infeasible_rounds,reduction_vs_baseline
void write_report_csv(std::ostream& os, const CampaignReport& report);

}  // namespace deftsched::sim
