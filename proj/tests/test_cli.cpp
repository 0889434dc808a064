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


#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
};

// Runs the CLI through the shell; stderr is merged into the captured text.
Outcome deft(const std::string& args) {
  const std::string cmd = std::string(DEFT_BIN) + " " + args + " 2>&1";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string reference_problem() { return deftsched::testing::data_path("reference_instance.json"); }

TEST(Cli, SolveBaReference) {
  const Outcome r = deft("solve-ba --input " + reference_problem());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["T_opt"].get<double>(), 29.0, 1e-9);
  EXPECT_EQ(j["assignment"].size(), 4u);
  EXPECT_EQ(j["assignment"][3]["device"], 2);
  EXPECT_EQ(j["breakdown"].size(), 4u);
}

TEST(Cli, VerifyPrintsOk) {
  const Outcome r = deft("solve-ba --verify -o /dev/null --input " + reference_problem());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "OK\n");
}

TEST(Cli, SolveJbba) {
  const Outcome r = deft("solve-jbba --verify -o /dev/null --input " + reference_problem());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "OK\n");
}

TEST(Cli, NonConvergenceExitCode) {
  const Outcome r = deft("solve-jbba --max-iters 1 -o /dev/null --input " + reference_problem());
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, MalformedInput) {
  const std::string path = ::testing::TempDir() + "/malformed.json";
  FILE* f = fopen(path.c_str(), "w");
  fputs("{\n \"blocks\": [1,\n", f);
  fclose(f);
  const Outcome r = deft("solve-ba --input " + path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 3"), std::string::npos) << r.out;
}

TEST(Cli, InfeasibleInstance) {
  const std::string path = ::testing::TempDir() + "/infeasible.json";
  FILE* f = fopen(path.c_str(), "w");
  fputs(R"({"blocks":{"L":2,"a":0,"c1":1,"b0":0,"b1":1,"S_bits":1,"M":1},)"
        R"("env":{"N0":1,"B_hz":1},"devices":[)"
        R"({"f":1,"memory_bytes":1.5,"tx_power":1,"channel_gain":1},)"
        R"({"f":1,"memory_bytes":1.5,"tx_power":1,"channel_gain":1}]})",
        f);
  fclose(f);
  const Outcome r = deft("solve-ba --input " + path);
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(deft("").code, 2);
  EXPECT_EQ(deft("optimize").code, 2);
  EXPECT_EQ(deft("solve-ba").code, 2);
  EXPECT_EQ(deft("compare --rounds 2 --schemes jbba,fastest").code, 2);
  EXPECT_EQ(deft("simulate --rounds 2 --sweep power").code, 2);
}

TEST(Cli, OracleCheck) {
  const Outcome r = deft("oracle-check --suite all --instances 40 --seed 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\n40/40 agree\n"), std::string::npos) << r.out;
}

TEST(Cli, CompareOrdering) {
  const Outcome r = deft("compare --rounds 30 --seed 4");
  ASSERT_EQ(r.code, 0) << r.out;
  double comm = 0, ba = 0, jbba = 0;
  std::size_t pos = r.out.find('\n');
  while (pos != std::string::npos && pos + 1 < r.out.size()) {
    const std::size_t end = r.out.find('\n', pos + 1);
    const std::string line = r.out.substr(pos + 1, end - pos - 1);
    std::array<std::string, 8> f;
    std::size_t a = 0;
    for (auto& field : f) {
      const std::size_t b = line.find(',', a);
      field = line.substr(a, b - a);
      a = b == std::string::npos ? b : b + 1;
    }
    const double mean = std::stod(f[4]);
    if (f[2] == "comm-aware") comm = mean;
    if (f[2] == "ba-crunch") ba = mean;
    if (f[2] == "jbba") jbba = mean;
    pos = end;
  }
  EXPECT_LT(jbba, ba);
  EXPECT_LT(ba, comm);
}

TEST(Cli, SeedFromEnvironment) {
  const Outcome flag = deft("compare --rounds 3 --schemes ba-crunch --seed 5");
  const Outcome env = deft("compare --rounds 3 --schemes ba-crunch");
  const std::string cmd = "DEFT_SEED=5 " + std::string(DEFT_BIN) +
                          " compare --rounds 3 --schemes ba-crunch";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  EXPECT_EQ(out, flag.out);
  EXPECT_NE(env.out, flag.out);
}

TEST(Cli, BenchRows) {
  const Outcome r = deft("bench --k 20 --l 10 --instances 3");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.substr(0, r.out.find('\r')),
            "instance,K,L,crunch_ms,search_ms,speedup,search_completed");
  EXPECT_NE(r.out.find("median,20,10"), std::string::npos);
}

}  // namespace
