// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace curvecast {

/// One point of a learning curve: the accuracy a learner reached after
/// consuming `words` words of training data in cycle `level`.
struct Observation {
  int level = 0;           // cycle index, 1-based
  std::int64_t words = 0;  // word position x_i = |D_i|, strictly increasing
  double accuracy = 0.0;   // percent, in [0, 100]
  int fold = 0;            // cross-validation fold, 0 = unlabelled
};

/// Collapses a fold-labelled stream into one canonical stream by averaging
/// accuracies across folds at each word position. Every fold must cover the
/// same positions, otherwise an alignment error is thrown. A stream without
/// fold labels passes through unchanged (levels renumbered 1..n).
std::vector<Observation> average_folds(std::span<const Observation> observations);

/// Same operation on per-fold streams (k = folds.size()). k = 1 is identity.
std::vector<Observation> kfold_average(std::span<const std::vector<Observation>> folds);

}  // namespace curvecast
