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


#include "deftsched/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "deftsched/errors.hpp"

namespace deftsched {

void DeviceProfile::validate() const {
  if (!(compute_factor > 0.0))
    throw InputError("device " + std::to_string(id + 1) + ": f must be > 0");
  if (!(memory_budget > 0.0))
    throw InputError("device " + std::to_string(id + 1) + ": memory_bytes must be > 0");
  if (!(channel_gain >= 0.0))
    throw InputError("device " + std::to_string(id + 1) + ": channel_gain must be >= 0");
  if (!(tx_power >= 0.0))
    throw InputError("device " + std::to_string(id + 1) + ": tx_power must be >= 0");
}

double BlockCostModel::depth_latency(int depth) const {
  return forward_latency + backprop_slope * depth;
}

double BlockCostModel::memory_required(int depth) const {
  return memory_base + memory_slope * depth;
}

void BlockCostModel::validate() const {
  if (num_blocks < 1) throw InputError("blocks: L must be >= 1");
  if (!(forward_latency >= 0.0)) throw InputError("blocks: a must be >= 0");
  if (!(backprop_slope > 0.0)) throw InputError("blocks: c1 must be > 0");
  if (!(memory_base >= 0.0)) throw InputError("blocks: b0 must be >= 0");
  if (!(memory_slope > 0.0)) throw InputError("blocks: b1 must be > 0");
  if (!(payload_bits >= 0.0)) throw InputError("blocks: S_bits must be >= 0");
  if (local_iters < 1) throw InputError("blocks: M must be >= 1");
}

void ChannelEnv::validate() const {
  if (!(noise_power > 0.0)) throw InputError("env: N0 must be > 0");
  if (!(total_bandwidth > 0.0)) throw InputError("env: B_hz must be > 0");
}

void Instance::validate() const {
  blocks.validate();
  env.validate();
  for (const auto& d : devices) d.validate();
}

double comp_latency(const DeviceProfile& device, const BlockCostModel& cost, int depth) {
  if (depth < 1 || depth > cost.num_blocks)
    throw std::domain_error("depth " + std::to_string(depth) + " outside 1.." +
                            std::to_string(cost.num_blocks));
  return cost.local_iters * cost.depth_latency(depth) / device.compute_factor;
}

double spectral_efficiency(const DeviceProfile& device, const ChannelEnv& env) {
  return std::log2(1.0 + device.tx_power * device.channel_gain / env.noise_power);
}

double comm_latency(double payload_bits, double bandwidth, double spectral_eff) {
  if (!(bandwidth > 0.0) || !(spectral_eff > 0.0))
    return std::numeric_limits<double>::infinity();
  return payload_bits / (bandwidth * spectral_eff);
}

int memory_depth_limit(const DeviceProfile& device, const BlockCostModel& cost) {
  int limit = 0;
  for (int l = 1; l <= cost.num_blocks; ++l) {
    if (cost.memory_required(l) > device.memory_budget) break;
    limit = l;
  }
  return limit;
}

std::vector<int> CostMatrix::admissible_depths() const {
  std::vector<int> out(depth_limit);
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!schedulable[k]) out[k] = 0;
  return out;
}

CostMatrix build_cost_matrix(const Instance& instance) {
  const int K = instance.num_devices();
  const int L = instance.num_blocks();
  if (K < L)
    throw InfeasibleError("instance has " + std::to_string(K) + " devices for " +
                          std::to_string(L) + " blocks");

  CostMatrix cm;
  cm.comp_latency = RealMatrix(K, L);
  cm.total = RealMatrix(K, L);
  cm.spectral_eff.resize(K);
  cm.depth_limit.resize(K);
  cm.schedulable.resize(K);

  const double share = instance.env.total_bandwidth / L;
  for (int k = 0; k < K; ++k) {
    const auto& dev = instance.devices[k];
    const double r = spectral_efficiency(dev, instance.env);
    const double comm = comm_latency(instance.blocks.payload_bits, share, r);
    cm.spectral_eff[k] = r;
    cm.schedulable[k] = r > 0.0;
    cm.depth_limit[k] = memory_depth_limit(dev, instance.blocks);
    for (int l = 0; l < L; ++l) {
      const double j = comp_latency(dev, instance.blocks, l + 1);
      cm.comp_latency(k, l) = j;
      cm.total(k, l) = j + comm;
    }
  }
  return cm;
}

}  // namespace deftsched
