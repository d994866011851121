// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Every subcommand is a thin wrapper over the
// library; no numeric logic lives here.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "curvecast/harness.hpp"
#include "curvecast/io.hpp"
#include "curvecast/simulate.hpp"

namespace {

using namespace curvecast;

struct ColonSpec {
  std::vector<double> parts;
};

std::vector<double> split_colons(const std::string& text, std::size_t expected,
                                 const std::string& what) {
  std::vector<double> parts;
  std::string part;
  std::istringstream stream(text);
  while (std::getline(stream, part, ':')) parts.push_back(std::stod(part));
  if (parts.size() != expected)
    throw CLI::ValidationError(what, "expected " + std::to_string(expected) +
                                         " colon-separated values");
  return parts;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

// Shared level-detection flags; values land in the config only when the
// user passed them, so config-file settings survive.
struct LevelFlags {
  std::optional<double> nu, tau, layer_scale;
  std::optional<int> slowdown, lookahead, window_grid;
  std::optional<std::string> window;

  void attach(CLI::App& cmd) {
    cmd.add_option("--nu", nu, "verticality threshold in (0,1)");
    cmd.add_option("--slowdown", slowdown, "slope-bound slowdown exponent");
    cmd.add_option("--lookahead", lookahead, "cycles the slope bound must hold");
    cmd.add_option("--tau", tau, "convergence threshold on the layer value");
    cmd.add_option("--window", window, "sampling window, lo:hi in words");
    cmd.add_option("--grid", window_grid, "points for the layer sup-distance");
    cmd.add_option("--layer-scale", layer_scale, "multiplier on layer values");
  }

  void apply(LevelConfig& config) const {
    if (nu) config.nu = *nu;
    if (slowdown) config.slowdown = *slowdown;
    if (lookahead) config.lookahead = *lookahead;
    if (tau) config.tau = *tau;
    if (layer_scale) config.layer_scale = *layer_scale;
    if (window_grid) config.window_grid = *window_grid;
    if (window) {
      const auto parts = split_colons(*window, 2, "--window");
      config.window_lo = static_cast<std::int64_t>(parts[0]);
      config.window_hi = static_cast<std::int64_t>(parts[1]);
    }
  }
};

struct FitFlags {
  std::optional<int> max_iterations;
  std::optional<double> residual_tolerance, step_tolerance, trust_radius, floor;

  void attach(CLI::App& cmd) {
    cmd.add_option("--max-iterations", max_iterations, "iteration budget");
    cmd.add_option("--residual-tolerance", residual_tolerance,
                   "relative rss improvement that stops the fit");
    cmd.add_option("--step-tolerance", step_tolerance,
                   "scaled step size that stops the fit");
    cmd.add_option("--trust-radius", trust_radius, "initial trust radius");
    cmd.add_option("--parameter-floor", floor, "lower bound on a and b");
  }

  void apply(FitConfig& config) const {
    if (max_iterations) config.max_iterations = *max_iterations;
    if (residual_tolerance) config.residual_tolerance = *residual_tolerance;
    if (step_tolerance) config.step_tolerance = *step_tolerance;
    if (trust_radius) config.initial_trust_radius = *trust_radius;
    if (floor) config.parameter_floor = *floor;
  }
};

std::string level_line(const char* label, const std::optional<int>& level,
                       const LearningTrace& trace) {
  char buffer[96];
  if (level)
    std::snprintf(buffer, sizeof buffer, "%s = %d (x_words = %lld)\n", label,
                  *level, static_cast<long long>(trace.position(*level)));
  else
    std::snprintf(buffer, sizeof buffer, "%s = --\n", label);
  return buffer;
}

int run_cli(int argc, char** argv) {
  CLI::App app{
      "curvecast: predicts a learner's accuracy curve from its first "
      "training cycles, decides when the prediction is trustworthy, and "
      "scores collections of predictions for model selection"};
  app.require_subcommand(1);

  // ----- fit ---------------------------------------------------------
  auto* fit_cmd = app.add_subcommand(
      "fit", "fit one power-law trend to an observation file");
  std::string fit_obs;
  int fit_level = 0;
  FitFlags fit_flags;
  fit_cmd->add_option("--observations", fit_obs, "observation csv")->required();
  fit_cmd->add_option("--level", fit_level,
                      "points to use (default: every observation)");
  fit_flags.attach(*fit_cmd);
  fit_cmd->callback([&] {
    const auto averaged = average_folds(read_observations(fit_obs));
    const int level =
        fit_level > 0 ? fit_level : static_cast<int>(averaged.size());
    FitConfig config;
    fit_flags.apply(config);
    const auto trend = fit_trend(averaged, level, config);
    std::printf("level = %d\n", trend.level);
    std::printf("a = %.6f\n", trend.params.amplitude);
    std::printf("b = %.6f\n", trend.params.decay);
    std::printf("c = %.6f\n", trend.params.asymptote);
    std::printf("rss = %.6e\n", trend.rss);
    std::printf("converged = %s\n", trend.converged ? "yes" : "no");
  });

  // ----- trace -------------------------------------------------------
  auto* trace_cmd = app.add_subcommand(
      "trace", "fit the whole learning trace and dump it as csv");
  std::string trace_obs, trace_out;
  int trace_max_level = 0;
  FitFlags trace_flags;
  trace_cmd->add_option("--observations", trace_obs, "observation csv")
      ->required();
  trace_cmd->add_option("--max-level", trace_max_level,
                        "last level to fit (default: all)");
  trace_cmd->add_option("--out", trace_out, "output path (default stdout)");
  trace_flags.attach(*trace_cmd);
  trace_cmd->callback([&] {
    FitConfig config;
    trace_flags.apply(config);
    const auto trace =
        build_trace(read_observations(trace_obs), config, trace_max_level);
    std::ostringstream out;
    out << "level,x_words,a,b,c,rss,converged\n";
    char line[192];
    for (int level = LearningTrace::first_level; level <= trace.max_level();
         ++level) {
      const auto& trend = trace.at(level);
      std::snprintf(line, sizeof line, "%d,%lld,%.6f,%.6f,%.6f,%.6e,%s\n",
                    level, static_cast<long long>(trace.position(level)),
                    trend.params.amplitude, trend.params.decay,
                    trend.params.asymptote, trend.rss,
                    trend.converged ? "yes" : "no");
      out << line;
    }
    write_output(trace_out, out.str());
  });

  // ----- levels ------------------------------------------------------
  auto* levels_cmd = app.add_subcommand(
      "levels", "detect working, prediction and convergence levels");
  std::string levels_obs;
  LevelFlags level_flags;
  FitFlags levels_fit_flags;
  levels_cmd->add_option("--observations", levels_obs, "observation csv")
      ->required();
  level_flags.attach(*levels_cmd);
  levels_fit_flags.attach(*levels_cmd);
  levels_cmd->callback([&] {
    LevelConfig config;
    level_flags.apply(config);
    FitConfig fit_config;
    levels_fit_flags.apply(fit_config);
    const auto run =
        analyze(build_trace(read_observations(levels_obs), fit_config), config);
    std::string out;
    out += level_line("wlevel", run.working_level, run.trace);
    out += level_line("plevel", run.prediction_level, run.trace);
    out += level_line("clevel", run.convergence_level, run.trace);
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, "tau = %.6f\n", config.tau);
    out += buffer;
    for (const auto& [level, layer] : run.layers) {
      std::snprintf(buffer, sizeof buffer, "layer[%d] = %.6f\n", level, layer);
      out += buffer;
    }
    if (const auto* predictor = run.predictor()) {
      std::snprintf(buffer, sizeof buffer,
                    "predictor: a = %.6f, b = %.6f, c = %.6f\n",
                    predictor->params.amplitude, predictor->params.decay,
                    predictor->params.asymptote);
      out += buffer;
    }
    std::fputs(out.c_str(), stdout);
  });

  // ----- evaluate ----------------------------------------------------
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "monitor a collection of runs and score the predictions");
  std::string evaluate_config_path, evaluate_out, evaluate_format = "table";
  std::optional<std::string> evaluate_controls, evaluate_corpus;
  std::optional<std::int64_t> evaluate_kernel, evaluate_step, evaluate_size;
  std::optional<int> evaluate_folds;
  LevelFlags evaluate_levels;
  FitFlags evaluate_fit;
  evaluate_cmd
      ->add_option("--config", evaluate_config_path, "experiment config file")
      ->envname("CURVECAST_CONFIG")
      ->required();
  evaluate_cmd->add_option("--format", evaluate_format,
                           "table, csv or plot-series");
  evaluate_cmd->add_option("--out", evaluate_out, "output path (default stdout)");
  evaluate_cmd->add_option("--kernel", evaluate_kernel, "kernel size in words");
  evaluate_cmd->add_option("--step", evaluate_step, "step size in words");
  evaluate_cmd->add_option("--size", evaluate_size, "corpus size in words");
  evaluate_cmd->add_option("--controls", evaluate_controls,
                           "control sequence, lo:hi:step in words");
  evaluate_cmd->add_option("--folds", evaluate_folds, "cross-validation folds");
  evaluate_cmd->add_option("--corpus", evaluate_corpus,
                           "tagged corpus for sentence alignment");
  evaluate_levels.attach(*evaluate_cmd);
  evaluate_fit.attach(*evaluate_cmd);
  evaluate_cmd->callback([&] {
    auto config = load_experiment_config(evaluate_config_path);
    evaluate_levels.apply(config.levels);
    evaluate_fit.apply(config.fit);
    if (evaluate_kernel) config.scheme.kernel = *evaluate_kernel;
    if (evaluate_step) config.scheme.step = *evaluate_step;
    if (evaluate_size) config.scheme.size = *evaluate_size;
    if (evaluate_folds) config.folds = *evaluate_folds;
    if (evaluate_corpus) config.corpus_path = *evaluate_corpus;
    if (evaluate_controls) {
      const auto parts = split_colons(*evaluate_controls, 3, "--controls");
      config.controls = {static_cast<std::int64_t>(parts[0]),
                         static_cast<std::int64_t>(parts[1]),
                         static_cast<std::int64_t>(parts[2])};
    }
    const auto report = evaluate_collection(config);
    write_output(evaluate_out,
                 emit_report(report, parse_report_format(evaluate_format)));

    bool any_error = false;
    for (const auto& row : report.rows) {
      if (!row.note.empty()) {
        std::fprintf(stderr, "%s: error: %s\n", row.name.c_str(),
                     row.note.c_str());
        any_error = true;
      } else {
        std::fprintf(stderr, "%s: plevel %s, clevel %s, mape %s\n",
                     row.name.c_str(),
                     row.prediction_pos
                         ? std::to_string(*row.prediction_pos).c_str()
                         : "--",
                     row.convergence_pos
                         ? std::to_string(*row.convergence_pos).c_str()
                         : "--",
                     row.mape ? std::to_string(*row.mape).c_str() : "--");
      }
    }
    if (any_error)
      throw std::runtime_error("one or more runs failed; see messages above");
  });

  // ----- simulate ----------------------------------------------------
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "generate a synthetic observation stream with known truth");
  std::string simulate_params, simulate_out, simulate_corpus;
  double simulate_sigma = 0.0;
  std::uint64_t simulate_seed = 0;
  std::int64_t simulate_kernel = 5000, simulate_step = 5000,
               simulate_size = 700000;
  int simulate_folds = 1;
  simulate_cmd
      ->add_option("--params", simulate_params, "truth parameters, a:b:c")
      ->required();
  simulate_cmd->add_option("--sigma", simulate_sigma, "noise level in percent");
  simulate_cmd->add_option("--seed", simulate_seed, "noise seed");
  simulate_cmd->add_option("--kernel", simulate_kernel, "kernel size in words");
  simulate_cmd->add_option("--step", simulate_step, "step size in words");
  simulate_cmd->add_option("--size", simulate_size, "schedule end in words");
  simulate_cmd->add_option("--folds", simulate_folds,
                           "emit this many fold-labelled replicas");
  simulate_cmd->add_option("--corpus", simulate_corpus,
                           "align the schedule to this corpus's sentences");
  simulate_cmd->add_option("--out", simulate_out, "output path (default stdout)");
  simulate_cmd->callback([&] {
    const auto parts = split_colons(simulate_params, 3, "--params");
    SyntheticLearner learner;
    learner.name = "synthetic";
    learner.truth = {parts[0], parts[1], parts[2]};
    learner.noise_sigma = simulate_sigma;
    learner.seed = simulate_seed;
    const auto scheme =
        constant_scheme(simulate_kernel, simulate_step, simulate_size);
    learner.x_grid = simulate_corpus.empty()
                         ? scheme_positions(scheme)
                         : build_individuals(read_corpus(simulate_corpus), scheme);
    const auto stream = simulate_folds > 1
                            ? generate_folds(learner, simulate_folds)
                            : generate(learner);
    std::ostringstream out;
    write_observations(out, stream);
    write_output(simulate_out, out.str());
  });

  // ----- report ------------------------------------------------------
  auto* report_cmd = app.add_subcommand(
      "report", "re-render a report csv; recomputes mape and dmr from the "
                "monitored values");
  std::string report_in, report_out, report_format = "table";
  bool report_verbatim = false;
  report_cmd->add_option("--in", report_in, "report csv")->required();
  report_cmd->add_option("--format", report_format, "table, csv or plot-series");
  report_cmd->add_option("--out", report_out, "output path (default stdout)");
  report_cmd->add_flag("--no-recompute", report_verbatim,
                       "render the metric columns as they were read");
  report_cmd->callback([&] {
    auto report = read_report_csv(report_in);
    if (!report_verbatim) recompute_metrics(report);
    write_output(report_out,
                 emit_report(report, parse_report_format(report_format)));
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "curvecast: %s\n", e.what());
    return 1;
  }
}
