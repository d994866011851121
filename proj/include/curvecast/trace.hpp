// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvecast/fit.hpp"
#include "curvecast/observation.hpp"

namespace curvecast {

/// The sequence of trends fitted to growing prefixes of one learner's
/// observation stream, with the asymptote of each trend (the backbone).
/// trends[k] is fitted on exactly the first (k + 3) observations.
struct LearningTrace {
  static constexpr int first_level = 3;  // three points to pin down a curve

  std::vector<PowerLawTrend> trends;
  std::vector<double> backbone;           // asymptote per trend, same order
  std::vector<std::int64_t> positions;    // word position of each trend level

  [[nodiscard]] bool empty() const { return trends.empty(); }
  [[nodiscard]] int max_level() const {
    return first_level + static_cast<int>(trends.size()) - 1;
  }
  [[nodiscard]] bool has_level(int level) const {
    return level >= first_level && level <= max_level();
  }
  [[nodiscard]] const PowerLawTrend& at(int level) const;
  [[nodiscard]] double alpha(int level) const;
  [[nodiscard]] std::int64_t position(int level) const;
};

/// Fits one trend per level from 3 up to max_level (0 = every available
/// observation). Fold labels are averaged away once, up front. Each level's
/// fit sees only the first `level` observations and the shared config, so
/// prefixes of a longer trace are bitwise identical to shorter traces.
/// A level that fails to converge is recorded, not fatal.
LearningTrace build_trace(std::span<const Observation> observations,
                          const FitConfig& config = {}, int max_level = 0);

}  // namespace curvecast
