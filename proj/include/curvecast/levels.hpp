// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "curvecast/trace.hpp"

namespace curvecast {

/// Settings of the level detectors and the convergence check.
struct LevelConfig {
  double nu = 4e-5;       // verticality threshold, in (0,1)
  int slowdown = 1;       // root applied to nu in the slope bound, >= 1
  int lookahead = 5;      // consecutive cycles the bound must hold
  double tau = 2.2;       // convergence threshold on the layer value
  std::int64_t window_lo = 5000;   // sampling window, word positions
  std::int64_t window_hi = 700000;
  int window_grid = 512;  // evaluation points for the sup distance
  double layer_scale = 1.0;  // multiplier to match external layer scales
};

/// Variant with the tighter verticality threshold (nu = 2e-5).
LevelConfig strict_verticality_config();

void validate(const LevelConfig& config);

/// nu^(1/slowdown) / (1 - nu): the ceiling that backbone slopes must stay
/// under for the working level.
double slope_bound(double nu, int slowdown);

/// Smallest level w such that |alpha_{i+1} - alpha_i| / (x_{i+1} - x_i)
/// stays under slope_bound for every i in [w, w + lookahead]. Absent when
/// no window fits inside the trace.
std::optional<int> detect_working_level(const LearningTrace& trace,
                                        const LevelConfig& config);

/// Smallest level >= working_level whose asymptote does not exceed 100.
/// Absent when the backbone stays above 100 to the end of the trace.
std::optional<int> detect_prediction_level(const LearningTrace& trace,
                                           int working_level);

/// Largest pointwise distance between the trends at `level` and `level - 1`
/// over the sampling window, times layer_scale. Requires level >= 4 and both
/// trends present.
double convergence_layer(const LearningTrace& trace, int level,
                         const LevelConfig& config);

/// Smallest level >= max(prediction_level, 4) whose convergence layer is at
/// or under tau. The trend at that level becomes the run's frozen predictor.
std::optional<int> detect_convergence_level(const LearningTrace& trace,
                                            int prediction_level,
                                            const LevelConfig& config);

/// A trace together with its detected levels. Absent levels are values, not
/// errors: a run that never predicts is still reportable.
struct Run {
  LearningTrace trace;
  LevelConfig config;
  std::optional<int> working_level;
  std::optional<int> prediction_level;
  std::optional<int> convergence_level;
  std::vector<std::pair<int, double>> layers;  // layers checked up to clevel

  /// Frozen predictor: the trend at the convergence level, or null.
  [[nodiscard]] const PowerLawTrend* predictor() const;
};

/// Runs the full detection cascade. Layers are recorded from
/// max(prediction_level, 4) up to the convergence level (or the end of the
/// trace when convergence is never reached); the halting rule stops checking
/// once tau is met.
Run analyze(LearningTrace trace, const LevelConfig& config);

}  // namespace curvecast
