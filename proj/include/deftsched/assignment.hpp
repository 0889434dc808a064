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

#include <utility>
#include <vector>

namespace deftsched {

// Block-to-device map. device_of_block[l] is the (0-based) device that
// computes the block at depth l + 1. Devices are distinct.
struct Assignment {
  std::vector<int> device_of_block;

  int num_blocks() const noexcept { return static_cast<int>(device_of_block.size()); }

  // Inverse map over `num_devices` devices; -1 marks an idle device.
  std::vector<int> block_of_device(int num_devices) const {
    std::vector<int> inv(num_devices, -1);
    for (int l = 0; l < num_blocks(); ++l) inv[device_of_block[l]] = l;
    return inv;
  }

  // 1-based (device, block) pairs, ordered by block.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(device_of_block.size());
    for (int l = 0; l < num_blocks(); ++l) out.emplace_back(device_of_block[l] + 1, l + 1);
    return out;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace deftsched
