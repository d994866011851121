// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace curvecast {

/// The common word positions at which every run of a collection is
/// monitored. Strictly increasing, nonempty.
struct ControlSequence {
  std::vector<std::int64_t> levels;
};

ControlSequence make_control_sequence(std::int64_t lo, std::int64_t hi,
                                      std::int64_t step);
void validate(const ControlSequence& sequence);

/// The two curves monitored for one run: the accuracy actually observed and
/// the accuracy estimated by the frozen predictor, keyed by word position.
struct CurvePair {
  std::map<std::int64_t, double> actual;
  std::map<std::int64_t, double> estimated;
};

/// Signed percent deviation of the estimate at one position:
/// 100 * (estimated - actual) / actual.
double percentage_error(const CurvePair& pair, std::int64_t position);

/// Mean of |percentage_error| over a control sequence.
double mape(const CurvePair& pair, const ControlSequence& sequence);

/// 1 when the estimates of two runs preserve the order of their actual
/// curves at `position` (ties count as preserved), else 0.
int order_preserved(const CurvePair& e, const CurvePair& f,
                    std::int64_t position);

/// Percent of control positions at which order_preserved holds (rer).
double order_agreement_rate(const CurvePair& e, const CurvePair& f,
                            const ControlSequence& sequence);

/// Percent of peer runs against which `e` keeps a perfect agreement rate of
/// 100 over the whole sequence (dmr). Requires at least one peer.
double decision_reliability(const CurvePair& e,
                            std::span<const CurvePair> peers,
                            const ControlSequence& sequence);

/// Percent of the backbone covered by its longest contiguous monotone
/// stretch (rr). Ties extend both non-increasing and non-decreasing runs.
/// The span is the backbone between working and convergence levels.
double robustness_rate(std::span<const double> backbone);

}  // namespace curvecast
