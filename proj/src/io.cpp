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


#include "deftsched/io.hpp"

#include <fstream>
#include <sstream>

#include "deftsched/errors.hpp"

namespace deftsched::io {
namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& member(const json& obj, const std::string& where, const char* key) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + "." + key + ": missing");
  return *it;
}

double number(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_number()) throw InputError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int integer(const json& obj, const std::string& where, const char* key) {
  const json& v = member(obj, where, key);
  if (!v.is_number_integer()) throw InputError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

template <class T>
void optional_field(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config.") + key + ": wrong type");
  }
}

void optional_range(const json& obj, const char* key, double& lo, double& hi) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
    throw InputError(std::string("config.") + key + ": expected [low, high]");
  lo = (*it)[0].get<double>();
  hi = (*it)[1].get<double>();
}

BlockCostModel parse_blocks(const json& b, const std::string& where) {
  BlockCostModel m;
  m.num_blocks = integer(b, where, "L");
  m.forward_latency = number(b, where, "a");
  m.backprop_slope = number(b, where, "c1");
  m.memory_base = number(b, where, "b0");
  m.memory_slope = number(b, where, "b1");
  m.payload_bits = number(b, where, "S_bits");
  m.local_iters = integer(b, where, "M");
  return m;
}

json blocks_to_json(const BlockCostModel& m) {
  return {{"L", m.num_blocks}, {"a", m.forward_latency}, {"c1", m.backprop_slope},
          {"b0", m.memory_base}, {"b1", m.memory_slope}, {"S_bits", m.payload_bits},
          {"M", m.local_iters}};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance parse_instance(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw InputError("instance: expected an object");
  Instance inst;
  inst.blocks = parse_blocks(member(doc, "instance", "blocks"), "blocks");
  const json& env = member(doc, "instance", "env");
  inst.env.noise_power = number(env, "env", "N0");
  inst.env.total_bandwidth = number(env, "env", "B_hz");
  const json& devs = member(doc, "instance", "devices");
  if (!devs.is_array()) throw InputError("devices: expected an array");
  for (std::size_t i = 0; i < devs.size(); ++i) {
    const std::string where = "devices[" + std::to_string(i) + "]";
    DeviceProfile d;
    d.id = static_cast<int>(i);
    d.compute_factor = number(devs[i], where, "f");
    d.memory_budget = number(devs[i], where, "memory_bytes");
    d.tx_power = number(devs[i], where, "tx_power");
    d.channel_gain = number(devs[i], where, "channel_gain");
    inst.devices.push_back(d);
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

json instance_to_json(const Instance& instance) {
  json devs = json::array();
  for (const auto& d : instance.devices)
    devs.push_back({{"f", d.compute_factor}, {"memory_bytes", d.memory_budget},
                    {"tx_power", d.tx_power}, {"channel_gain", d.channel_gain}});
  return {{"blocks", blocks_to_json(instance.blocks)},
          {"env", {{"N0", instance.env.noise_power}, {"B_hz", instance.env.total_bandwidth}}},
          {"devices", devs}};
}

sim::CampaignConfig parse_config(const std::string& text) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw InputError("config: expected an object");
  sim::CampaignConfig c;
  optional_field(doc, "num_devices", c.num_devices);
  optional_field(doc, "num_blocks", c.num_blocks);
  optional_field(doc, "rounds", c.rounds);
  optional_field(doc, "snr_db", c.snr_db);
  optional_field(doc, "path_loss", c.path_loss);
  optional_field(doc, "bandwidth_hz", c.bandwidth_hz);
  optional_field(doc, "noise_power", c.noise_power);
  optional_field(doc, "seed", c.seed);
  optional_field(doc, "repair", c.repair);
  optional_range(doc, "compute_factor_range", c.compute_low, c.compute_high);
  optional_range(doc, "memory_range_bytes", c.memory_low, c.memory_high);
  c.block_model.num_blocks = c.num_blocks;
  if (auto it = doc.find("block_model"); it != doc.end()) {
    c.block_model = parse_blocks(*it, "config.block_model");
  }
  if (auto it = doc.find("schemes"); it != doc.end()) {
    if (!it->is_array()) throw InputError("config.schemes: expected an array");
    c.schemes.clear();
    for (const auto& s : *it) {
      auto parsed = s.is_string() ? sim::parse_scheme(s.get<std::string>()) : std::nullopt;
      if (!parsed) throw InputError("config.schemes: unknown scheme " + s.dump());
      c.schemes.push_back(*parsed);
    }
  }
  if (auto it = doc.find("jbba"); it != doc.end()) {
    if (!it->is_object()) throw InputError("config.jbba: expected an object");
    optional_field(*it, "max_iters", c.jbba.max_iters);
    optional_field(*it, "tol", c.jbba.tol);
    optional_field(*it, "eps0", c.jbba.eps0);
    optional_field(*it, "stall_window", c.jbba.stall_window);
  }
  c.validate();
  return c;
}

sim::CampaignConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

json config_to_json(const sim::CampaignConfig& c) {
  json schemes = json::array();
  for (auto s : c.schemes) schemes.push_back(std::string(sim::scheme_name(s)));
  return {{"num_devices", c.num_devices},
          {"num_blocks", c.num_blocks},
          {"rounds", c.rounds},
          {"snr_db", c.snr_db},
          {"path_loss", c.path_loss},
          {"bandwidth_hz", c.bandwidth_hz},
          {"noise_power", c.noise_power},
          {"compute_factor_range", {c.compute_low, c.compute_high}},
          {"memory_range_bytes", {c.memory_low, c.memory_high}},
          {"seed", c.seed},
          {"repair", c.repair},
          {"schemes", schemes},
          {"block_model", blocks_to_json(c.block_model)},
          {"jbba",
           {{"max_iters", c.jbba.max_iters},
            {"tol", c.jbba.tol},
            {"eps0", c.jbba.eps0},
            {"stall_window", c.jbba.stall_window}}}};
}

}  // namespace deftsched::io
