// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/levels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvecast {

LevelConfig strict_verticality_config() {
  LevelConfig config;
  config.nu = 2e-5;
  return config;
}

void validate(const LevelConfig& config) {
  if (!(config.nu > 0.0) || !(config.nu < 1.0))
    throw std::invalid_argument("levels: nu must lie in (0,1)");
  if (config.slowdown < 1)
    throw std::invalid_argument("levels: slowdown must be at least 1");
  if (config.lookahead < 0)
    throw std::invalid_argument("levels: lookahead must be nonnegative");
  if (config.tau < 0.0)
    throw std::invalid_argument("levels: tau must be nonnegative");
  if (config.window_lo >= config.window_hi || config.window_lo < 1)
    throw std::invalid_argument("levels: sampling window must satisfy 0 < lo < hi");
  if (config.window_grid < 2)
    throw std::invalid_argument("levels: window grid needs at least two points");
  if (!(config.layer_scale > 0.0))
    throw std::invalid_argument("levels: layer scale must be positive");
}

double slope_bound(double nu, int slowdown) {
  if (!(nu > 0.0) || !(nu < 1.0))
    throw std::domain_error("slope bound: nu must lie in (0,1)");
  if (slowdown < 1)
    throw std::domain_error("slope bound: slowdown must be at least 1");
  return std::pow(nu, 1.0 / static_cast<double>(slowdown)) / (1.0 - nu);
}

std::optional<int> detect_working_level(const LearningTrace& trace,
                                        const LevelConfig& config) {
  validate(config);
  if (trace.empty()) return std::nullopt;

  const double bound = slope_bound(config.nu, config.slowdown);
  // Slope over [i, i+1] needs the trend at i+1, so the last checkable window
  // start is max_level - lookahead - 1.
  const int last_start = trace.max_level() - config.lookahead - 1;
  for (int start = LearningTrace::first_level; start <= last_start; ++start) {
    bool all_under = true;
    for (int i = start; i <= start + config.lookahead; ++i) {
      const double rise = std::abs(trace.alpha(i + 1) - trace.alpha(i));
      const double run =
          static_cast<double>(trace.position(i + 1) - trace.position(i));
      if (rise / run > bound) {
        all_under = false;
        break;
      }
    }
    if (all_under) return start;
  }
  return std::nullopt;
}

std::optional<int> detect_prediction_level(const LearningTrace& trace,
                                           int working_level) {
  if (!trace.has_level(working_level))
    throw std::invalid_argument("prediction level: working level " +
                                std::to_string(working_level) +
                                " is outside the trace");
  for (int level = working_level; level <= trace.max_level(); ++level)
    if (trace.alpha(level) <= 100.0) return level;
  return std::nullopt;
}

double convergence_layer(const LearningTrace& trace, int level,
                         const LevelConfig& config) {
  validate(config);
  if (level < LearningTrace::first_level + 1 || !trace.has_level(level))
    throw std::invalid_argument(
        "convergence layer: needs trends at level " + std::to_string(level) +
        " and " + std::to_string(level - 1));

  const auto& current = trace.at(level).params;
  const auto& previous = trace.at(level - 1).params;
  const double lo = static_cast<double>(config.window_lo);
  const double hi = static_cast<double>(config.window_hi);
  const double stride = (hi - lo) / static_cast<double>(config.window_grid - 1);

  double sup = 0.0;
  for (int i = 0; i < config.window_grid; ++i) {
    const double x = (i == config.window_grid - 1) ? hi : lo + stride * i;
    sup = std::max(sup, std::abs(evaluate(current, x) - evaluate(previous, x)));
  }
  return sup * config.layer_scale;
}

std::optional<int> detect_convergence_level(const LearningTrace& trace,
                                            int prediction_level,
                                            const LevelConfig& config) {
  validate(config);
  if (!trace.has_level(prediction_level))
    throw std::invalid_argument("convergence level: prediction level " +
                                std::to_string(prediction_level) +
                                " is outside the trace");
  const int start = std::max(prediction_level, LearningTrace::first_level + 1);
  for (int level = start; level <= trace.max_level(); ++level)
    if (convergence_layer(trace, level, config) <= config.tau) return level;
  return std::nullopt;
}

const PowerLawTrend* Run::predictor() const {
  if (!convergence_level) return nullptr;
  return &trace.at(*convergence_level);
}

Run analyze(LearningTrace trace, const LevelConfig& config) {
  validate(config);
  Run run;
  run.config = config;
  run.trace = std::move(trace);

  run.working_level = detect_working_level(run.trace, config);
  if (run.working_level)
    run.prediction_level =
        detect_prediction_level(run.trace, *run.working_level);

  if (run.prediction_level) {
    const int start =
        std::max(*run.prediction_level, LearningTrace::first_level + 1);
    for (int level = start; level <= run.trace.max_level(); ++level) {
      const double layer = convergence_layer(run.trace, level, config);
      run.layers.emplace_back(level, layer);
      if (layer <= config.tau) {
        run.convergence_level = level;  // freeze here; later trends are unused
        break;
      }
    }
  }
  return run;
}

}  // namespace curvecast
