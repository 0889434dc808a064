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


// Acceptance gate: runs each criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "deftsched/crunch.hpp"
#include "deftsched/generate.hpp"
#include "deftsched/jbba.hpp"
#include "deftsched/matching.hpp"
#include "deftsched/oracle.hpp"
#include "deftsched/sim.hpp"
#include "deftsched/suites.hpp"

namespace {

using namespace deftsched;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  std::array<char, 512> buf;
  std::snprintf(buf.data(), buf.size(), f, args...);
  return buf.data();
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Bottleneck cutting equals exhaustive search, zero tolerance, < 60 s.
Verdict crunch_exactness() {
  const auto t0 = Clock::now();
  const auto t = suites::crunch_vs_brute(1, 500);
  const double s = seconds_since(t0);
  return {t.ok() && s < 60.0,
          fmt("%d/%d exact in %.2f s%s%s", t.agree, t.total, s,
              t.ok() ? "" : "; first: ", t.first_failure.c_str())};
}

// 2. Support condition equals full matching on staircase graphs.
Verdict support_equivalence() {
  const auto t = suites::support_vs_matching(2, 200);
  return {t.ok(), fmt("%d/%d agree%s", t.agree, t.total, t.first_failure.c_str())};
}

// 3. Threshold search equals cutting on the instances of criterion 1.
Verdict search_agreement() {
  const auto t = suites::search_vs_crunch(1, 500);
  return {t.ok(), fmt("%d/%d agree%s", t.agree, t.total, t.first_failure.c_str())};
}

// 4. Median speedup of cutting over threshold search at K=200, L=100.
// A search that exceeds its budget is stopped; the budget then bounds its
// time from below and the speedup from below.
Verdict complexity() {
  constexpr double kBudget = 1.0;
  gen::Rng rng(4);
  std::vector<double> speedup;
  int censored = 0;
  double crunch_ms_total = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto p = gen::bottleneck(rng, 200, 100, false);
    auto t0 = Clock::now();
    const auto c = crunch_solve(p);
    const double cs = seconds_since(t0);
    t0 = Clock::now();
    const auto s = bottleneck_via_search(p, kBudget);
    const double ss = seconds_since(t0);
    if (s.completed && s.latency != c.latency) return {false, "search and cutting disagree"};
    censored += !s.completed;
    crunch_ms_total += 1e3 * cs;
    speedup.push_back(ss / cs);
  }
  std::sort(speedup.begin(), speedup.end());
  const double median = 0.5 * (speedup[9] + speedup[10]);
  return {median >= 10.0,
          fmt("median speedup %s%.0fx (crunch mean %.3f ms; %d/20 searches stopped at %.0f s)",
              censored > 0 ? ">= " : "", median, crunch_ms_total / 20, censored, kBudget)};
}

// 5. Closed-form involvement/bandwidth against a grid search.
Verdict closed_form() {
  gen::Rng rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  constexpr int kPoints = 10000;
  const double S = 24576.0 * 32.0;
  const double B = 100e6;
  double worst_value = 0.0;
  double worst_grad = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int K = 2 + static_cast<int>(rng() % 5);
    const int L = 1 + static_cast<int>(rng() % K);
    DualState d;
    std::vector<double> r(K);
    for (int k = 0; k < K; ++k) {
      d.lambda.push_back(u(rng));
      d.sigma.push_back(0.5 * (u(rng) - 0.5));
      r[k] = std::log2(1.0 + 10.0 * fading(rng));
    }
    d.mu = std::pow(10.0, -11.0 + 4.0 * u(rng));
    const auto ib = primal_bandwidth_involvement(d, r, S, L, B);

    // Oracle: each device's term minimized over 10^4 geometric grid points,
    // then the L smallest totals.
    std::vector<double> grid(K);
    double scale = 0.0;
    for (int k = 0; k < K; ++k) {
      const double ratio = std::pow(1e9, 1.0 / (kPoints - 1));
      double b = 1e-6 * B, best = INFINITY;
      for (int i = 0; i < kPoints; ++i, b *= ratio)
        best = std::min(best, d.lambda[k] * S / (b * r[k]) + d.mu * b);
      grid[k] = best + d.sigma[k];
      scale += std::abs(grid[k]);
    }
    double closed = 0.0;
    for (int k = 0; k < K; ++k) {
      if (!ib.involved[k]) continue;
      const double bk = ib.bandwidth[k];
      closed += d.lambda[k] * S / (bk * r[k]) + d.mu * bk + d.sigma[k];
      const double grad = -d.lambda[k] * S / (bk * bk * r[k]) + d.mu;
      worst_grad = std::max(worst_grad, std::abs(grad) / d.mu);
    }
    std::sort(grid.begin(), grid.end());
    const double oracle = std::accumulate(grid.begin(), grid.begin() + L, 0.0);
    worst_value = std::max(worst_value, std::abs(closed - oracle) / scale);
  }
  return {worst_value <= 1e-3 && worst_grad <= 1e-8,
          fmt("worst value gap %.2e (limit 1e-3), worst stationarity %.2e (limit 1e-8)",
              worst_value, worst_grad)};
}

// 6. JBBA within 2% of the exhaustive optimum on small instances.
Verdict jbba_near_optimal() {
  gen::Rng rng(6);
  int within = 0, unconverged = 0, unconverged_within5 = 0, n = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int L = 1 + static_cast<int>(rng() % 4);
    const int K = L + static_cast<int>(rng() % (7 - L));
    const auto p = gen::jbba(rng, K, L);
    const auto s = jbba_solve(p);
    const auto b = oracle::brute_jbba(p);
    if (oracle::check_assignment(s.assignment, K, p.depth_limit)) return {false, "bad assignment"};
    const double gap = s.latency / b.latency - 1.0;
    ++n;
    worst = std::max(worst, gap);
    if (s.converged) {
      within += gap <= 0.02;
    } else {
      ++unconverged;
      unconverged_within5 += gap <= 0.05;
    }
  }
  const bool ok = within == n - unconverged && unconverged <= n / 20 &&
                  unconverged_within5 == unconverged;
  return {ok, fmt("%d/%d converged runs within 2%%, %d unconverged, worst gap %.4f%%", within,
                  n - unconverged, unconverged, 100 * worst)};
}

// Shared by criteria 7 and 8: the default campaign.
struct DefaultRun {
  std::vector<sim::RoundRecord> records;
  sim::CampaignReport report;
};

const DefaultRun& default_run() {
  static const DefaultRun run = [] {
    sim::CampaignConfig c;
    DefaultRun r;
    r.records = sim::simulate(c);
    sim::summarize(r.records, c, sim::SweepVar::kNone, 0.0, r.report);
    return r;
  }();
  return run;
}

// 7. Per-round dominance chain at default settings.
Verdict dominance() {
  const auto& run = default_run();
  int checked = 0, broken = 0;
  for (const auto& rec : run.records) {
    const auto& comm = rec.results[0];
    const auto& ba = rec.results[2];
    const auto& jbba = rec.results[3];
    if (!comm.feasible || !ba.feasible || !jbba.feasible) continue;
    ++checked;
    if (jbba.latency > ba.latency * (1 + 1e-6) || ba.latency > comm.latency) ++broken;
  }
  return {broken == 0 && checked > 0,
          fmt("%d/%d feasible rounds ordered jbba <= ba-crunch <= comm-aware", checked - broken,
              checked)};
}

// 8. BA reduction against the communication-aware baseline at 10 dB.
Verdict default_trend() {
  const auto& rep = default_run().report;
  const double red = *rep.find(sim::Scheme::kBaCrunch, 0.0)->reduction_vs_baseline;
  const double jred = *rep.find(sim::Scheme::kJbba, 0.0)->reduction_vs_baseline;
  return {red >= 0.30 && red <= 0.50,
          fmt("ba-crunch reduction %.2f%% (target [30%%, 50%%]); jbba %.2f%%", 100 * red,
              100 * jred)};
}

// 9. Monotone sweeps and the widening JBBA gap.
Verdict sweeps() {
  sim::CampaignConfig c;
  c.rounds = 300;
  std::string detail;
  bool ok = true;
  for (auto var : {sim::SweepVar::kSnr, sim::SweepVar::kBandwidth}) {
    const auto values = sim::default_sweep_values(var);
    const auto rep = sim::run_campaign(c, var, values);
    for (auto s : c.schemes) {
      for (std::size_t i = 1; i < values.size(); ++i) {
        const double prev = rep.find(s, values[i - 1])->mean_latency;
        const double cur = rep.find(s, values[i])->mean_latency;
        if (cur > prev) {
          ok = false;
          detail += fmt("%s rises along %s at %g; ", std::string(sim::scheme_name(s)).c_str(),
                        std::string(sim::sweep_name(var)).c_str(), values[i]);
        }
      }
    }
  }
  if (ok) detail += "SNR and bandwidth sweeps nonincreasing for all schemes; ";

  const auto rep = sim::run_campaign(c, sim::SweepVar::kDevices, {12, 50});
  auto gap = [&](double k) {
    return 1.0 - rep.find(sim::Scheme::kJbba, k)->mean_latency /
                     rep.find(sim::Scheme::kBaCrunch, k)->mean_latency;
  };
  const double g12 = gap(12), g50 = gap(50);
  const bool widening = g50 > g12;
  ok = ok && widening;
  detail += fmt("jbba-vs-ba gap %.2f%% at K=12, %.2f%% at K=50", 100 * g12, 100 * g50);
  return {ok, detail};
}

// 10. `compare` twice with the same seed gives byte-identical CSV.
Verdict determinism() {
  auto run = [](const std::string& extra) {
    const std::string cmd = std::string(DEFT_BIN) + " compare --rounds 100 --seed 7" + extra;
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    pclose(p);
    return out;
  };
  const std::string a = run("");
  const std::string b = run("");
  const std::string c = run(" --jobs 1");
  const bool ok = !a.empty() && a == b && a == c;
  return {ok, fmt("%zu bytes, repeat %s, single-thread %s", a.size(),
                  a == b ? "identical" : "differs", a == c ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"crunch exactness", crunch_exactness},
      {"support condition vs matching", support_equivalence},
      {"threshold search agreement", search_agreement},
      {"cutting speedup at K=200 L=100", complexity},
      {"closed-form bandwidth vs grid", closed_form},
      {"jbba near-optimality", jbba_near_optimal},
      {"dominance chain", dominance},
      {"ba-crunch reduction at 10 dB", default_trend},
      {"monotone sweeps", sweeps},
      {"compare determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
