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

#include <vector>

#include "deftsched/matrix.hpp"

namespace deftsched {

// Units: seconds, hertz, bits, watts, bytes.
inline constexpr double kGigabyte = 1e9;

struct DeviceProfile {
  int id = 0;
  double compute_factor = 1.0;  // relative to the reference device
  double memory_budget = 0.0;   // bytes
  double tx_power = 0.0;        // watts
  double channel_gain = 0.0;    // linear power gain

  void validate() const;
};

// Depth-indexed cost laws. Depth runs over 1..num_blocks; deeper blocks need
// a longer backward pass and more stored activations:
//   d(l) = forward_latency + backprop_slope * l
//   b(l) = memory_base + memory_slope * l
struct BlockCostModel {
  int num_blocks = 12;
  double forward_latency = 0.5;    // seconds
  double backprop_slope = 0.05;    // seconds per block
  double memory_base = 1.3 * kGigabyte - 2.7 / 11.0 * kGigabyte;
  double memory_slope = 2.7 / 11.0 * kGigabyte;
  double payload_bits = 24576.0 * 32.0;
  int local_iters = 1;

  double depth_latency(int depth) const;
  double memory_required(int depth) const;
  void validate() const;
};

struct ChannelEnv {
  double noise_power = 1.0;       // watts
  double total_bandwidth = 100e6;  // hertz

  void validate() const;
};

struct Instance {
  std::vector<DeviceProfile> devices;
  BlockCostModel blocks;
  ChannelEnv env;

  int num_devices() const noexcept { return static_cast<int>(devices.size()); }
  int num_blocks() const noexcept { return blocks.num_blocks; }
  void validate() const;
};

// J_{k,l} = M * d(l) / f_k. Throws std::domain_error for depth outside 1..L.
double comp_latency(const DeviceProfile& device, const BlockCostModel& cost, int depth);

// r_k = log2(1 + p_k H_k / N0).
double spectral_efficiency(const DeviceProfile& device, const ChannelEnv& env);

// S / (B_k r_k). Returns +infinity when the device cannot upload
// (bandwidth <= 0 or r <= 0); solvers treat such pairs as forbidden.
double comm_latency(double payload_bits, double bandwidth, double spectral_eff);

// Largest depth whose memory requirement fits the device budget (0 if none).
int memory_depth_limit(const DeviceProfile& device, const BlockCostModel& cost);

// Per-instance latency tables under equal bandwidth share B / L.
struct CostMatrix {
  RealMatrix comp_latency;           // J, K x L
  std::vector<double> spectral_eff;  // r, K
  RealMatrix total;                  // T = J + S L / (B r), K x L
  std::vector<int> depth_limit;      // memory prefix per device
  std::vector<bool> schedulable;     // r_k > 0

  int num_devices() const noexcept { return static_cast<int>(comp_latency.rows()); }
  int num_blocks() const noexcept { return static_cast<int>(comp_latency.cols()); }

  // Memory prefix, forced to zero for devices that cannot upload.
  std::vector<int> admissible_depths() const;
};

// Throws InfeasibleError when K < L.
CostMatrix build_cost_matrix(const Instance& instance);

}  // namespace deftsched
