// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvecast {

namespace {

double lookup(const std::map<std::int64_t, double>& curve,
              std::int64_t position, const char* what) {
  const auto it = curve.find(position);
  if (it == curve.end())
    throw std::out_of_range(std::string(what) + " curve has no value at word " +
                            std::to_string(position));
  return it->second;
}

}  // namespace

ControlSequence make_control_sequence(std::int64_t lo, std::int64_t hi,
                                      std::int64_t step) {
  if (lo < 1 || hi < lo || step < 1)
    throw std::invalid_argument("control sequence: need 1 <= lo <= hi and step >= 1");
  ControlSequence sequence;
  for (std::int64_t level = lo; level <= hi; level += step)
    sequence.levels.push_back(level);
  return sequence;
}

void validate(const ControlSequence& sequence) {
  if (sequence.levels.empty())
    throw std::invalid_argument("control sequence: empty");
  for (std::size_t i = 1; i < sequence.levels.size(); ++i)
    if (sequence.levels[i] <= sequence.levels[i - 1])
      throw std::invalid_argument("control sequence: levels must be strictly increasing");
}

double percentage_error(const CurvePair& pair, std::int64_t position) {
  const double actual = lookup(pair.actual, position, "actual");
  const double estimated = lookup(pair.estimated, position, "estimated");
  if (!(actual > 0.0))
    throw std::domain_error("percentage error: actual accuracy must be positive");
  return 100.0 * (estimated - actual) / actual;
}

double mape(const CurvePair& pair, const ControlSequence& sequence) {
  validate(sequence);
  double sum = 0.0;
  for (const auto position : sequence.levels)
    sum += std::abs(percentage_error(pair, position));
  return sum / static_cast<double>(sequence.levels.size());
}

int order_preserved(const CurvePair& e, const CurvePair& f,
                    std::int64_t position) {
  const double actual_gap = lookup(e.actual, position, "actual") -
                            lookup(f.actual, position, "actual");
  const double estimated_gap = lookup(e.estimated, position, "estimated") -
                               lookup(f.estimated, position, "estimated");
  return actual_gap * estimated_gap >= 0.0 ? 1 : 0;
}

double order_agreement_rate(const CurvePair& e, const CurvePair& f,
                            const ControlSequence& sequence) {
  validate(sequence);
  int agreed = 0;
  for (const auto position : sequence.levels)
    agreed += order_preserved(e, f, position);
  return 100.0 * agreed / static_cast<double>(sequence.levels.size());
}

double decision_reliability(const CurvePair& e,
                            std::span<const CurvePair> peers,
                            const ControlSequence& sequence) {
  validate(sequence);
  if (peers.empty())
    throw std::invalid_argument("decision reliability: no peer runs");
  int perfect = 0;
  for (const auto& peer : peers) {
    int agreed = 0;
    for (const auto position : sequence.levels)
      agreed += order_preserved(e, peer, position);
    if (agreed == static_cast<int>(sequence.levels.size())) ++perfect;
  }
  return 100.0 * perfect / static_cast<double>(peers.size());
}

double robustness_rate(std::span<const double> backbone) {
  if (backbone.empty())
    throw std::invalid_argument("robustness rate: empty backbone interval");
  std::size_t best = 1, rising = 1, falling = 1;
  for (std::size_t i = 1; i < backbone.size(); ++i) {
    if (backbone[i] > backbone[i - 1]) {
      ++rising;
      falling = 1;
    } else if (backbone[i] < backbone[i - 1]) {
      ++falling;
      rising = 1;
    } else {  // a tie extends runs in both directions
      ++rising;
      ++falling;
    }
    best = std::max({best, rising, falling});
  }
  return 100.0 * static_cast<double>(best) /
         static_cast<double>(backbone.size());
}

}  // namespace curvecast
