// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Tolerances are fixed here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "curvecast/harness.hpp"
#include "curvecast/simulate.hpp"
#include "oracles.hpp"

#ifndef CURVECAST_TEST_DATA
#define CURVECAST_TEST_DATA "tests/data"
#endif

using namespace curvecast;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%-3s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

std::string fmt2(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

double elapsed_ms(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - from)
      .count();
}

std::vector<std::int64_t> grid_to(std::int64_t hi, std::int64_t step = 5000) {
  std::vector<std::int64_t> grid;
  for (std::int64_t x = step; x <= hi; x += step) grid.push_back(x);
  return grid;
}

// A1: replaying the published monitoring values reproduces the mape column
// within +/-0.02 for every run, in under a second.
void a1() {
  const auto start = std::chrono::steady_clock::now();
  auto replay = read_report_csv(std::string(CURVECAST_TEST_DATA) +
                                "/published_monitoring.csv");
  std::map<std::string, double> published;
  for (const auto& row : replay.rows)
    if (row.mape) published[row.name] = *row.mape;

  recompute_metrics(replay);

  double worst = 0.0;
  int compared = 0;
  bool ok = published.size() == 8;
  for (const auto& row : replay.rows) {
    if (!published.count(row.name)) continue;
    if (!row.mape) {
      ok = false;
      continue;
    }
    const double deviation = std::abs(*row.mape - published.at(row.name));
    worst = std::max(worst, deviation);
    ++compared;
    if (deviation > 0.02) ok = false;
  }
  const double ms = elapsed_ms(start);
  ok = ok && compared == 8 && ms < 1000.0;
  report("A1", ok,
         "table replay: mape within 0.02 on " + std::to_string(compared) +
             "/8 runs (worst dev " + fmt2(worst) + "), " + fmt2(ms) + " ms");
}

// A2: with perfect agreement against exactly 5 (resp. 6) of 7 peers, dmr
// renders 71.43 (resp. 85.71), the published TnT / fnTBL values.
void a2() {
  const std::vector<std::int64_t> controls{300000, 400000, 500000, 600000, 700000};
  ControlSequence sequence{controls};
  CurvePair runner;
  for (const auto position : controls) {
    runner.actual[position] = 96.0;
    runner.estimated[position] = 95.5;
  }
  const auto make_peers = [&](int disagreeing) {
    std::vector<CurvePair> peers;
    for (int k = 0; k < 7; ++k) {
      CurvePair peer;
      for (const auto position : controls) {
        peer.actual[position] = 93.0;
        peer.estimated[position] = 92.5;
      }
      if (k < disagreeing) peer.estimated[500000] = 99.0;
      peers.push_back(std::move(peer));
    }
    return peers;
  };

  const double five_of_seven =
      decision_reliability(runner, make_peers(2), sequence);
  const double six_of_seven =
      decision_reliability(runner, make_peers(1), sequence);
  const bool ok = fmt2(five_of_seven) == "71.43" && fmt2(six_of_seven) == "85.71";
  report("A2", ok,
         "dmr denominator: 5/7 -> " + fmt2(five_of_seven) + ", 6/7 -> " +
             fmt2(six_of_seven));
}

// A3: noiseless 10-point fits recover 200 random parameter triples to 1e-6
// relative error; with sigma = 0.05 noise and 20 points the median asymptote
// error over 100 seeds stays within 0.5. Budget: 30 s.
void a3() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> amp(1.0, 300.0), dec(0.1, 1.0),
      asy(80.0, 100.0);
  double worst = 0.0;
  bool all_converged = true;
  for (int trial = 0; trial < 200; ++trial) {
    const PowerLawParams<double> truth{amp(rng), dec(rng), asy(rng)};
    std::vector<double> xs, ys;
    for (int i = 1; i <= 10; ++i) {
      xs.push_back(5000.0 * i);
      ys.push_back(evaluate(truth, xs.back()));
    }
    const auto trend = fit_points(xs, ys, 10);
    all_converged = all_converged && trend.converged;
    worst = std::max({worst,
                      std::abs(trend.params.amplitude - truth.amplitude) /
                          truth.amplitude,
                      std::abs(trend.params.decay - truth.decay) / truth.decay,
                      std::abs(trend.params.asymptote - truth.asymptote) /
                          truth.asymptote});
  }

  std::vector<double> errors;
  const auto grid = grid_to(100000);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const SyntheticLearner learner{"mc", {5.0, 0.4, 98.0}, 0.05, seed, grid};
    const auto trend = fit_trend(generate(learner), 20);
    errors.push_back(std::abs(trend.params.asymptote - 98.0));
  }
  std::nth_element(errors.begin(), errors.begin() + 50, errors.end());
  const double median = errors[50];

  const double ms = elapsed_ms(start);
  const bool ok =
      worst <= 1e-6 && all_converged && median <= 0.5 && ms < 30000.0;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "fitter recovery: worst rel err %.2e over 200 noiseless fits, "
                "median |c err| %.3f under noise, %.0f ms",
                worst, median, ms);
  report("A3", ok, detail);
}

// A4: the analytic jacobian matches central finite differences to 1e-6
// relative error on 1000 random samples.
void a4() {
  std::mt19937_64 rng(4096);
  std::uniform_real_distribution<double> amp(1.0, 300.0), dec(0.1, 1.0),
      asy(80.0, 100.0), logx(std::log(10.0), std::log(1e6));
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const PowerLawParams<double> p{amp(rng), dec(rng), asy(rng)};
    const double x = std::exp(logx(rng));
    const auto analytic = jacobian_row(p, x);
    const auto numeric = oracles::finite_difference_row(p, x);
    if (!oracles::derivative_close(analytic(0, 0), numeric.amplitude) ||
        !oracles::derivative_close(analytic(0, 1), numeric.decay) ||
        !oracles::derivative_close(analytic(0, 2), numeric.asymptote))
      ++mismatches;
  }
  report("A4", mismatches == 0,
         "gradient check: " + std::to_string(1000 - mismatches) +
             "/1000 samples within 1e-6");
}

// A5: wherever the three levels all exist they are ordered, and a run whose
// prediction level never arrives is excluded from metrics and rendered "--".
void a5() {
  bool ordered = true;
  int runs_checked = 0;

  const auto check_run = [&](const Run& run) {
    ++runs_checked;
    if (run.working_level && run.prediction_level && run.convergence_level)
      ordered = ordered && *run.working_level <= *run.prediction_level &&
                *run.prediction_level <= *run.convergence_level;
    if (run.prediction_level)
      ordered = ordered && run.trace.alpha(*run.prediction_level) <= 100.0;
  };

  const auto grid = grid_to(300000);
  LevelConfig config;
  config.window_hi = 300000;
  config.tau = 0.05;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (const double sigma : {0.02, 0.1, 0.3}) {
      const SyntheticLearner learner{
          "sweep", {180.0 + 5.0 * static_cast<double>(seed), 0.35, 95.0},
          sigma, seed, grid};
      check_run(analyze(build_trace(generate(learner)), config));
    }
  }

  // Replay rows: the run with no prediction level keeps Ac but no estimate.
  auto replay = read_report_csv(std::string(CURVECAST_TEST_DATA) +
                                "/published_monitoring.csv");
  recompute_metrics(replay);
  bool excluded_ok = false;
  for (const auto& row : replay.rows)
    if (row.name == "TreeTagger")
      excluded_ok = !row.prediction_pos && !row.mape && !row.dmr &&
                    row.cells[0].ac && !row.cells[0].eac;

  // And the synthetic equivalent: a backbone stuck above 100.
  ExperimentConfig experiment;
  experiment.levels.window_hi = 230000;
  experiment.levels.tau = 0.05;
  experiment.controls = {100000, 200000, 50000};
  const auto short_grid = grid_to(230000);
  for (const double c : {94.0, 96.0}) {
    const SyntheticLearner learner{"ok" + std::to_string(static_cast<int>(c)),
                                   {200.0, 0.3, c}, 0.0, 3, short_grid};
    experiment.runs.push_back(
        {learner.name, {}, generate(learner), std::nullopt});
  }
  const SyntheticLearner over{"over", {204.0, 0.3, 105.0}, 0.0, 4, short_grid};
  experiment.runs.push_back({"over", {}, generate(over), std::nullopt});
  const auto evaluated = evaluate_collection(experiment);
  bool synthetic_excluded = false;
  double peer_dmr = -1.0;
  for (const auto& row : evaluated.rows) {
    if (row.name == "over")
      synthetic_excluded = !row.prediction_pos && !row.mape && !row.dmr &&
                           !row.rr && !row.cells[0].eac;
    else if (row.dmr)
      peer_dmr = *row.dmr;
  }
  const auto table = emit_report(evaluated, ReportFormat::table);
  synthetic_excluded =
      synthetic_excluded && table.find("--") != std::string::npos;

  const bool ok = ordered && excluded_ok && synthetic_excluded && peer_dmr == 100.0;
  report("A5", ok,
         "level ordering held on " + std::to_string(runs_checked) +
             " runs; unpredictable runs excluded and rendered --");
}

// A6: the clean three-learner fleet agrees pairwise everywhere; a crossing
// pair drops at least one agreement rate below 100.
void a6() {
  const auto grid = grid_to(700000);

  ExperimentConfig fleet;
  fleet.folds = 10;
  fleet.levels.tau = 0.005;  // nu=4e-5, slowdown=1, lookahead=5 are defaults
  std::uint64_t seed = 40;
  for (const double c : {94.0, 95.0, 96.0}) {
    const SyntheticLearner learner{"c" + std::to_string(static_cast<int>(c)),
                                   {200.0, 0.3, c}, 0.02, seed++, grid};
    fleet.runs.push_back(
        {learner.name, {}, generate_folds(learner, 10), std::nullopt});
  }
  const auto evaluated = evaluate_collection(fleet);
  bool clean_ok = evaluated.rows.size() == 3;
  double worst_mape = 0.0;
  for (const auto& row : evaluated.rows) {
    clean_ok = clean_ok && row.mape && *row.mape < 0.1 && row.dmr &&
               *row.dmr == 100.0;
    if (row.mape) worst_mape = std::max(worst_mape, *row.mape);
  }

  // Pairwise agreement rates, all 100 for the separated fleet.
  ControlSequence sequence{evaluated.control_positions};
  std::vector<CurvePair> pairs;
  for (const auto& row : evaluated.rows) {
    CurvePair pair;
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      pair.actual[evaluated.control_positions[i]] = *row.cells[i].ac;
      pair.estimated[evaluated.control_positions[i]] = *row.cells[i].eac;
    }
    pairs.push_back(std::move(pair));
  }
  for (std::size_t e = 0; e < pairs.size(); ++e)
    for (std::size_t f = e + 1; f < pairs.size(); ++f)
      clean_ok =
          clean_ok && order_agreement_rate(pairs[e], pairs[f], sequence) == 100.0;

  // A crossing pair: same decay, asymptotes 0.3 apart, curves meeting at
  // x = 450000, inside the control range.
  ExperimentConfig crossing;
  crossing.folds = 10;
  crossing.levels.tau = 0.005;
  const double amplitude = 200.0, decay = 0.3;
  const double crossed_amplitude =
      amplitude + (95.3 - 95.0) * std::pow(450000.0, decay);
  const SyntheticLearner pace{"pace", {amplitude, decay, 95.0}, 0.02, 101, grid};
  const SyntheticLearner quill{"quill", {crossed_amplitude, decay, 95.3}, 0.02,
                               202, grid};
  const SyntheticLearner reef{"reef", {amplitude, decay, 98.0}, 0.02, 303, grid};
  for (const auto& learner : {pace, quill, reef})
    crossing.runs.push_back(
        {learner.name, {}, generate_folds(learner, 10), std::nullopt});
  const auto crossed = evaluate_collection(crossing);
  std::vector<CurvePair> crossed_pairs;
  for (const auto& row : crossed.rows) {
    CurvePair pair;
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      pair.actual[crossed.control_positions[i]] = *row.cells[i].ac;
      pair.estimated[crossed.control_positions[i]] = *row.cells[i].eac;
    }
    crossed_pairs.push_back(std::move(pair));
  }
  ControlSequence crossed_sequence{crossed.control_positions};
  double lowest = 100.0;
  for (std::size_t e = 0; e < crossed_pairs.size(); ++e)
    for (std::size_t f = e + 1; f < crossed_pairs.size(); ++f)
      lowest = std::min(lowest, order_agreement_rate(crossed_pairs[e],
                                                     crossed_pairs[f],
                                                     crossed_sequence));

  const bool ok = clean_ok && lowest < 100.0;
  report("A6", ok,
         "fleet selection: clean fleet worst mape " + fmt2(worst_mape) +
             ", all dmr 100; crossing fleet min rer " + fmt2(lowest));
}

// A7: the robustness rate equals a brute-force scan on 1000 random
// backbones, and strictly monotone backbones score 100.
void a7() {
  std::mt19937_64 rng(7777);
  std::uniform_real_distribution<double> value(90.0, 100.0);
  std::uniform_int_distribution<int> length(1, 30);
  std::uniform_int_distribution<int> tie(0, 4);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> backbone;
    const int n = length(rng);
    for (int i = 0; i < n; ++i) {
      if (i > 0 && tie(rng) == 0)
        backbone.push_back(backbone.back());
      else
        backbone.push_back(value(rng));
    }
    if (robustness_rate(backbone) != oracles::brute_force_robustness(backbone))
      ++mismatches;
  }

  std::vector<double> rising, falling;
  for (int i = 0; i < 40; ++i) {
    rising.push_back(90.0 + i);
    falling.push_back(100.0 - 0.1 * i);
  }
  const bool monotone_ok =
      robustness_rate(rising) == 100.0 && robustness_rate(falling) == 100.0;

  report("A7", mismatches == 0 && monotone_ok,
         "robustness oracle: " + std::to_string(1000 - mismatches) +
             "/1000 backbones matched; monotone backbones score 100");
}

// A8: the full nine-tagger corpus experiment is out of desk-scale reach
// (corpus licensing, tagger toolchains); published-value replay plus the
// synthetic properties above stand in for it. This criterion asserts the
// fixtures really are that stand-in.
void a8() {
  const auto replay = read_report_csv(std::string(CURVECAST_TEST_DATA) +
                                      "/published_monitoring.csv");
  const bool replay_shape =
      replay.rows.size() == 9 && replay.control_positions.size() == 5;
  report("A8", replay_shape,
         "scope: published-value replay (9 runs x 5 controls) and synthetic "
         "fleets stand in for the full corpus experiment");
}

}  // namespace

int main() {
  a1();
  a2();
  a3();
  a4();
  a5();
  a6();
  a7();
  a8();
  if (failures == 0)
    std::printf("acceptance: all 8 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
