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


// deft: command-line front end for the deftsched solvers and campaigns.
//
// Exit codes: 0 success, 1 infeasible instance, 2 input error,
// 3 JBBA did not converge, 4 failed verification, oracle disagreement or
// internal error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deftsched/crunch.hpp"
#include "deftsched/errors.hpp"
#include "deftsched/generate.hpp"
#include "deftsched/io.hpp"
#include "deftsched/jbba.hpp"
#include "deftsched/matching.hpp"
#include "deftsched/oracle.hpp"
#include "deftsched/sim.hpp"
#include "deftsched/suites.hpp"

namespace {

using namespace deftsched;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitCheckFailed = 4;

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = sim::kDefaultSeed;
  int jobs = 0;
  bool verify = false;
  std::optional<int> max_iters;
  std::optional<double> tol;
  std::string trace;
  std::string sweep = "none";
  std::vector<std::string> schemes;
  int rounds = 0;
  std::string suite = "all";
  int instances = 500;
  int bench_k = 200;
  int bench_l = 100;
  int bench_instances = 20;
  double search_budget_s = 5.0;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw InputError("cannot write " + opt.output);
  out << text;
}

json breakdown(const Instance& inst, const CostMatrix& cost, const Assignment& a,
               const std::vector<double>& bandwidth) {
  json rows = json::array();
  for (int l = 0; l < a.num_blocks(); ++l) {
    const int k = a.device_of_block[l];
    const double comp = cost.comp_latency(k, l);
    const double comm =
        comm_latency(inst.blocks.payload_bits, bandwidth[k], cost.spectral_eff[k]);
    rows.push_back({{"device", k + 1},
                    {"block", l + 1},
                    {"bandwidth_hz", bandwidth[k]},
                    {"comp_latency_s", comp},
                    {"comm_latency_s", comm},
                    {"total_latency_s", comp + comm}});
  }
  return rows;
}

json pairs_json(const Assignment& a) {
  json out = json::array();
  for (auto [device, block] : a.pairs()) out.push_back({{"device", device}, {"block", block}});
  return out;
}

// Independent re-check of a reported solution.
bool verify_solution(const Instance& inst, const CostMatrix& cost, const Assignment& a,
                     const std::vector<double>& bandwidth, double reported) {
  if (auto bad = oracle::check_assignment(a, inst.num_devices(), cost.admissible_depths())) {
    std::cerr << "verify: " << *bad << '\n';
    return false;
  }
  double used = 0.0;
  for (double b : bandwidth) used += b;
  if (used > inst.env.total_bandwidth * (1.0 + 1e-9)) {
    std::cerr << "verify: bandwidth budget exceeded\n";
    return false;
  }
  const auto problem = JbbaProblem::from_cost(cost, inst.blocks.payload_bits,
                                              inst.env.total_bandwidth);
  const double recomputed = assignment_latency(problem, a, bandwidth);
  if (std::abs(recomputed - reported) > 1e-9 * std::abs(reported)) {
    std::cerr << "verify: latency " << reported << " recomputes to " << recomputed << '\n';
    return false;
  }
  std::cerr << "OK\n";
  return true;
}

int solve_ba(const Options& opt) {
  const Instance inst = io::load_instance(opt.input);
  const CostMatrix cost = build_cost_matrix(inst);
  const CrunchResult res = crunch_solve(BottleneckProblem::from_cost(cost));
  std::vector<double> bw(inst.num_devices(), 0.0);
  for (int k : res.assignment.device_of_block)
    bw[k] = inst.env.total_bandwidth / inst.num_blocks();
  const json out = {{"T_opt", res.latency},
                    {"assignment", pairs_json(res.assignment)},
                    {"breakdown", breakdown(inst, cost, res.assignment, bw)}};
  emit(opt, out.dump(2) + "\n");
  if (opt.verify && !verify_solution(inst, cost, res.assignment, bw, res.latency))
    return kExitCheckFailed;
  return kExitOk;
}

std::string_view stop_name(StopReason r) {
  switch (r) {
    case StopReason::kResiduals: return "residuals";
    case StopReason::kStalled: return "stalled";
    case StopReason::kIterationLimit: break;
  }
  return "iteration_limit";
}

int solve_jbba(const Options& opt) {
  const Instance inst = io::load_instance(opt.input);
  const CostMatrix cost = build_cost_matrix(inst);
  const auto problem = JbbaProblem::from_cost(cost, inst.blocks.payload_bits,
                                              inst.env.total_bandwidth);
  JbbaOptions jo;
  if (opt.max_iters) jo.max_iters = *opt.max_iters;
  if (opt.tol) jo.tol = *opt.tol;
  jo.record_trace = !opt.trace.empty();
  const JbbaSolution sol = jbba_solve(problem, jo);
  const json out = {{"latency_s", sol.latency},
                    {"assignment", pairs_json(sol.assignment)},
                    {"bandwidth_hz", sol.bandwidth},
                    {"converged", sol.converged},
                    {"stop", stop_name(sol.stop)},
                    {"iterations", sol.iterations},
                    {"dual_bound_s", sol.dual_bound},
                    {"breakdown", breakdown(inst, cost, sol.assignment, sol.bandwidth)}};
  emit(opt, out.dump(2) + "\n");
  if (!opt.trace.empty()) {
    std::ofstream tr(opt.trace, std::ios::binary);
    if (!tr) throw InputError("cannot write " + opt.trace);
    write_trace_csv(tr, sol.trace);
  }
  if (opt.verify && !verify_solution(inst, cost, sol.assignment, sol.bandwidth, sol.latency))
    return kExitCheckFailed;
  return sol.converged ? kExitOk : kExitNotConverged;
}

sim::CampaignConfig campaign_config(const Options& opt, bool seed_given) {
  sim::CampaignConfig c = opt.input.empty() ? sim::CampaignConfig{} : io::load_config(opt.input);
  if (seed_given || opt.input.empty()) c.seed = opt.seed;
  if (opt.rounds > 0) c.rounds = opt.rounds;
  if (opt.max_iters) c.jbba.max_iters = *opt.max_iters;
  if (opt.tol) c.jbba.tol = *opt.tol;
  if (!opt.schemes.empty()) {
    c.schemes.clear();
    for (const auto& name : opt.schemes) {
      auto s = sim::parse_scheme(name);
      if (!s) throw InputError("--schemes: unknown scheme " + name);
      c.schemes.push_back(*s);
    }
  }
  c.validate();
  return c;
}

int run_sim(const Options& opt, bool seed_given, bool sweeping) {
  const auto c = campaign_config(opt, seed_given);
  auto var = sim::SweepVar::kNone;
  if (sweeping) {
    auto parsed = sim::parse_sweep(opt.sweep);
    if (!parsed) throw InputError("--sweep: expected snr, bandwidth, devices or none");
    var = *parsed;
  }
  const auto report = sim::run_campaign(c, var, {}, opt.jobs);
  std::ostringstream os;
  sim::write_report_csv(os, report);
  emit(opt, os.str());
  return kExitOk;
}

int oracle_check(const Options& opt) {
  const bool all = opt.suite == "all";
  const std::vector<std::string> known = {"crunch", "search", "hungarian", "support", "jbba"};
  if (!all && std::find(known.begin(), known.end(), opt.suite) == known.end())
    throw InputError("--suite: expected all, crunch, search, hungarian, support or jbba");
  if (opt.instances < 1) throw InputError("--instances must be >= 1");

  std::vector<suites::Tally> tallies;
  auto want = [&](const char* name) { return all || opt.suite == name; };
  if (want("crunch")) tallies.push_back(suites::crunch_vs_brute(opt.seed, opt.instances));
  if (want("search")) tallies.push_back(suites::search_vs_crunch(opt.seed, opt.instances));
  if (want("hungarian")) tallies.push_back(suites::hungarian_vs_brute(opt.seed, opt.instances));
  if (want("support")) tallies.push_back(suites::support_vs_matching(opt.seed, opt.instances));
  if (want("jbba")) tallies.push_back(suites::jbba_vs_brute(opt.seed, opt.instances));

  std::ostringstream os;
  for (const auto& t : tallies) {
    os << t.name << ": " << t.agree << '/' << t.total << " agree";
    if (!t.ok()) os << " (" << t.first_failure << ')';
    os << '\n';
  }
  bool ok = std::all_of(tallies.begin(), tallies.end(), [](const auto& t) { return t.ok(); });
  if (ok) os << opt.instances << '/' << opt.instances << " agree\n";
  else os << "disagreement found\n";
  emit(opt, os.str());
  return ok ? kExitOk : kExitCheckFailed;
}

int bench(const Options& opt) {
  if (opt.bench_l < 1 || opt.bench_k < opt.bench_l)
    throw InputError("--k and --l must satisfy k >= l >= 1");
  using Clock = std::chrono::steady_clock;
  gen::Rng rng(opt.seed);
  std::ostringstream os;
  os << "instance,K,L,crunch_ms,search_ms,speedup,search_completed\r\n";
  std::vector<double> speedups;
  for (int i = 0; i < opt.bench_instances; ++i) {
    const auto p = gen::bottleneck(rng, opt.bench_k, opt.bench_l, false);
    const auto t0 = Clock::now();
    const auto c = crunch_solve(p);
    const auto t1 = Clock::now();
    const auto s = bottleneck_via_search(p, opt.search_budget_s);
    const auto t2 = Clock::now();
    const double cm = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double sm = std::chrono::duration<double, std::milli>(t2 - t1).count();
    if (s.completed && s.latency != c.latency)
      throw std::logic_error("bench: search and crunch disagree");
    speedups.push_back(sm / cm);
    os << i << ',' << opt.bench_k << ',' << opt.bench_l << ',' << cm << ',' << sm << ','
       << sm / cm << ',' << (s.completed ? 1 : 0) << "\r\n";
  }
  std::sort(speedups.begin(), speedups.end());
  const std::size_t n = speedups.size();
  const double median = n % 2 ? speedups[n / 2] : 0.5 * (speedups[n / 2 - 1] + speedups[n / 2]);
  os << "median," << opt.bench_k << ',' << opt.bench_l << ",,," << median << ",\r\n";
  emit(opt, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deft: block and bandwidth scheduling for split fine-tuning"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* cmd, bool input_required) {
    auto* in = cmd->add_option("--input,-i", opt.input, "instance or config JSON")
                   ->envname("DEFT_INPUT");
    if (input_required) in->required()->check(CLI::ExistingFile);
    else in->check(CLI::ExistingFile);
    cmd->add_option("--output,-o", opt.output, "write here instead of stdout")
        ->envname("DEFT_OUTPUT");
  };
  auto add_seed = [&](CLI::App* cmd) {
    return cmd->add_option("--seed", opt.seed, "RNG seed")
        ->envname("DEFT_SEED")
        ->capture_default_str();
  };
  auto add_jbba = [&](CLI::App* cmd) {
    cmd->add_option("--max-iters", opt.max_iters, "JBBA iteration cap (default 5000)")
        ->envname("DEFT_MAX_ITERS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", opt.tol, "JBBA tolerance (default 1e-4)")
        ->envname("DEFT_TOL")
        ->check(CLI::PositiveNumber);
  };

  auto* ba = app.add_subcommand("solve-ba", "min-max block assignment at equal bandwidth");
  add_io(ba, true);
  ba->add_flag("--verify", opt.verify, "re-check the result independently")
      ->envname("DEFT_VERIFY");

  auto* jb = app.add_subcommand("solve-jbba", "joint bandwidth and block allocation");
  add_io(jb, true);
  add_jbba(jb);
  jb->add_flag("--verify", opt.verify, "re-check the result independently")
      ->envname("DEFT_VERIFY");
  jb->add_option("--trace", opt.trace, "write per-iteration residuals as CSV");

  std::vector<CLI::Option*> seed_opts;
  auto add_campaign = [&](CLI::App* cmd) {
    add_io(cmd, false);
    seed_opts.push_back(add_seed(cmd));
    add_jbba(cmd);
    cmd->add_option("--jobs,-j", opt.jobs, "worker threads (0 = all cores)")
        ->envname("DEFT_JOBS")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--rounds", opt.rounds, "override the configured round count")
        ->envname("DEFT_ROUNDS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--schemes", opt.schemes, "comm-aware,comp-aware,ba-crunch,jbba")
        ->envname("DEFT_SCHEMES")
        ->delimiter(',');
  };
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo campaign with an optional sweep");
  add_campaign(simulate);
  simulate->add_option("--sweep", opt.sweep, "snr, bandwidth, devices or none")
      ->envname("DEFT_SWEEP")
      ->capture_default_str();
  auto* compare = app.add_subcommand("compare", "scheme comparison at the base config");
  add_campaign(compare);

  auto* oc = app.add_subcommand("oracle-check", "randomized agreement with exhaustive oracles");
  add_seed(oc);
  oc->add_option("--suite", opt.suite, "all, crunch, search, hungarian, support or jbba")
      ->capture_default_str();
  oc->add_option("--instances", opt.instances, "instances per suite")->capture_default_str();
  oc->add_option("--output,-o", opt.output, "write here instead of stdout")
      ->envname("DEFT_OUTPUT");

  auto* bn = app.add_subcommand("bench", "bottleneck cutting vs threshold search timing");
  add_seed(bn);
  bn->add_option("--k", opt.bench_k, "devices")->capture_default_str();
  bn->add_option("--l", opt.bench_l, "blocks")->capture_default_str();
  bn->add_option("--instances", opt.bench_instances, "instances")->capture_default_str();
  bn->add_option("--search-budget", opt.search_budget_s,
                 "seconds per search before it is cut off (0 = none)")
      ->capture_default_str();
  bn->add_option("--output,-o", opt.output, "write here instead of stdout")
      ->envname("DEFT_OUTPUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*ba) return solve_ba(opt);
    if (*jb) return solve_jbba(opt);
    const bool seed_given =
        std::any_of(seed_opts.begin(), seed_opts.end(), [](auto* o) { return o->count() > 0; }) ||
        std::getenv("DEFT_SEED") != nullptr;
    if (*simulate) return run_sim(opt, seed_given, true);
    if (*compare) return run_sim(opt, seed_given, false);
    if (*oc) return oracle_check(opt);
    if (*bn) return bench(opt);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}
