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


#include <string>

#include <gtest/gtest.h>

#include "deftsched/crunch.hpp"
#include "deftsched/errors.hpp"
#include "deftsched/io.hpp"
#include "fixtures.hpp"

namespace deftsched {
namespace {

std::string error_of(const std::string& text) {
  try {
    io::parse_instance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(Io, ReferenceFileReproducesTheTable) {
  const Instance inst = io::load_instance(testing::data_path("reference_instance.json"));
  const CostMatrix cost = build_cost_matrix(inst);
  const auto want = testing::reference_problem();
  for (int k = 0; k < 6; ++k) {
    EXPECT_EQ(cost.depth_limit[k], want.depth_limit[k]);
    for (int l = 0; l < 4; ++l) EXPECT_NEAR(cost.total(k, l), want.latency(k, l), 1e-12);
  }
  EXPECT_NEAR(crunch_solve(BottleneckProblem::from_cost(cost)).latency, 29.0, 1e-12);
}

TEST(Io, InstanceRoundTrip) {
  const Instance a = io::load_instance(testing::data_path("reference_instance.json"));
  const Instance b = io::parse_instance(io::instance_to_json(a).dump());
  ASSERT_EQ(a.num_devices(), b.num_devices());
  for (int k = 0; k < a.num_devices(); ++k) {
    EXPECT_EQ(a.devices[k].compute_factor, b.devices[k].compute_factor);
    EXPECT_EQ(a.devices[k].channel_gain, b.devices[k].channel_gain);
  }
  EXPECT_EQ(a.blocks.payload_bits, b.blocks.payload_bits);
}

TEST(Io, MalformedTextReportsPosition) {
  const std::string msg = error_of("{\n  \"blocks\": ,\n}");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Io, MissingAndMistypedFieldsAreNamed) {
  EXPECT_NE(error_of("{}").find("blocks"), std::string::npos);
  const std::string doc =
      R"({"blocks":{"L":1,"a":0,"c1":1,"b0":0,"b1":1,"S_bits":1,"M":1},)"
      R"("env":{"N0":1,"B_hz":1},"devices":[{"f":1,"memory_bytes":2,"tx_power":"x","channel_gain":1}]})";
  EXPECT_NE(error_of(doc).find("devices[0].tx_power"), std::string::npos) << error_of(doc);
  const std::string frac =
      R"({"blocks":{"L":1.5,"a":0,"c1":1,"b0":0,"b1":1,"S_bits":1,"M":1},)"
      R"("env":{"N0":1,"B_hz":1},"devices":[]})";
  EXPECT_NE(error_of(frac).find("blocks.L"), std::string::npos);
}

TEST(Io, ConfigDefaultsAndOverrides) {
  const auto c = io::parse_config("{}");
  EXPECT_EQ(c.num_devices, 20);
  EXPECT_EQ(c.num_blocks, 12);
  EXPECT_EQ(c.bandwidth_hz, 100e6);
  const auto d = io::parse_config(
      R"({"num_devices": 30, "snr_db": 5, "schemes": ["jbba", "ba-crunch"],)"
      R"( "compute_factor_range": [0.6, 0.9], "jbba": {"max_iters": 50}})");
  EXPECT_EQ(d.num_devices, 30);
  EXPECT_EQ(d.snr_db, 5.0);
  EXPECT_EQ(d.schemes.size(), 2u);
  EXPECT_EQ(d.compute_low, 0.6);
  EXPECT_EQ(d.jbba.max_iters, 50);
  const auto e = io::parse_config(io::config_to_json(d).dump());
  EXPECT_EQ(e.num_devices, 30);
  EXPECT_EQ(e.schemes, d.schemes);
}

TEST(Io, ConfigErrors) {
  EXPECT_THROW(io::parse_config(R"({"schemes": ["fastest"]})"), InputError);
  EXPECT_THROW(io::parse_config(R"({"memory_range_bytes": [1]})"), InputError);
  EXPECT_THROW(io::parse_config(R"({"num_devices": 4})"), InputError);
  EXPECT_THROW(io::parse_config(R"({"rounds": "many"})"), InputError);
}

}  // namespace
}  // namespace deftsched
