// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "curvecast/observation.hpp"
#include "curvecast/power_law.hpp"
#include "curvecast/trust_region.hpp"

namespace curvecast {

/// A power-law trend fitted to the first `level` observations of a stream.
struct PowerLawTrend {
  PowerLawParams<double> params;
  int level = 0;  // number of observations used, >= 3
  double rss = 0.0;
  bool converged = false;
};

/// Deterministic starting point: the asymptote one point above the best
/// accuracy seen, decay 1/2, and the amplitude chosen so the curve passes
/// through the first observation. Always satisfies the pattern invariants.
PowerLawParams<double> initial_guess(std::span<const Observation> observations,
                                     double parameter_floor = 1e-9);
PowerLawParams<double> initial_guess(std::span<const double> xs,
                                     std::span<const double> ys,
                                     double parameter_floor = 1e-9);

/// Least-squares power-law fit over the first `level` observations.
/// Fold-labelled streams are averaged into one canonical stream first.
/// Non-convergence within max_iterations is reported via `converged`,
/// never as an error.
PowerLawTrend fit_trend(std::span<const Observation> observations, int level,
                        const FitConfig& config = {});

/// Same fit on pre-extracted coordinate arrays (no fold handling).
PowerLawTrend fit_points(std::span<const double> xs, std::span<const double> ys,
                         int level, const FitConfig& config = {});

}  // namespace curvecast
