// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/trace.hpp"

#include <stdexcept>
#include <string>

namespace curvecast {

namespace {

void check_level(const LearningTrace& trace, int level) {
  if (!trace.has_level(level))
    throw std::out_of_range("trace has no trend at level " +
                            std::to_string(level));
}

}  // namespace

const PowerLawTrend& LearningTrace::at(int level) const {
  check_level(*this, level);
  return trends[static_cast<std::size_t>(level - first_level)];
}

double LearningTrace::alpha(int level) const {
  check_level(*this, level);
  return backbone[static_cast<std::size_t>(level - first_level)];
}

std::int64_t LearningTrace::position(int level) const {
  check_level(*this, level);
  return positions[static_cast<std::size_t>(level - first_level)];
}

LearningTrace build_trace(std::span<const Observation> observations,
                          const FitConfig& config, int max_level) {
  const auto averaged = average_folds(observations);
  if (static_cast<int>(averaged.size()) < LearningTrace::first_level)
    throw std::invalid_argument(
        "trace: need at least three observations to start a trace");

  std::vector<double> xs, ys;
  xs.reserve(averaged.size());
  ys.reserve(averaged.size());
  for (const auto& obs : averaged) {
    xs.push_back(static_cast<double>(obs.words));
    ys.push_back(obs.accuracy);
  }

  int top = static_cast<int>(averaged.size());
  if (max_level > 0) top = std::min(top, max_level);
  if (top < LearningTrace::first_level)
    throw std::invalid_argument("trace: max_level must be at least 3");

  LearningTrace trace;
  trace.trends.reserve(static_cast<std::size_t>(top - LearningTrace::first_level + 1));
  for (int level = LearningTrace::first_level; level <= top; ++level) {
    auto trend = fit_points(xs, ys, level, config);
    trace.backbone.push_back(asymptote(trend.params));
    trace.positions.push_back(averaged[static_cast<std::size_t>(level - 1)].words);
    trace.trends.push_back(std::move(trend));
  }
  return trace;
}

}  // namespace curvecast
