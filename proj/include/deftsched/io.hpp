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

#include <string>

#include <json.hpp>

#include "deftsched/model.hpp"
#include "deftsched/sim.hpp"

namespace deftsched::io {

// Instance documents:
//   {"blocks":  {"L", "a", "c1", "b0", "b1", "S_bits", "M"},
//    "env":     {"N0", "B_hz"},
//    "devices": [{"f", "memory_bytes", "tx_power", "channel_gain"}, ...]}
// Errors are InputError; messages name the offending field, and malformed
// text reports line and column.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
nlohmann::json instance_to_json(const Instance& instance);

// Campaign configs: every key optional, defaults match the reference campaign.
sim::CampaignConfig parse_config(const std::string& text);
sim::CampaignConfig load_config(const std::string& path);
nlohmann::json config_to_json(const sim::CampaignConfig& config);

std::string read_file(const std::string& path);

}  // namespace deftsched::io
