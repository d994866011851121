// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curvecast/observation.hpp"
#include "curvecast/power_law.hpp"

namespace curvecast {

/// A synthetic learner: a ground-truth curve sampled on a word grid with
/// seeded Gaussian noise. Exists so pipeline results can be checked against
/// a known answer.
struct SyntheticLearner {
  std::string name;
  PowerLawParams<double> truth;
  double noise_sigma = 0.0;  // percent
  std::uint64_t seed = 0;
  std::vector<std::int64_t> x_grid;  // strictly increasing word positions
};

/// accuracy(x) = clamp(truth(x) + N(0, sigma), 0, 100), one observation per
/// grid point. The noise stream is a fixed function of the seed (the engine
/// and the transform are both pinned), so equal seeds give equal streams on
/// any platform.
std::vector<Observation> generate(const SyntheticLearner& learner);

/// k independent fold-labelled replicas of the same learner (fold = 1..k);
/// each fold derives its own noise stream from (seed, fold).
std::vector<Observation> generate_folds(const SyntheticLearner& learner, int k);

/// A named collection of streams over one shared grid, ready to feed the
/// evaluation harness.
struct Fleet {
  std::vector<std::string> names;
  std::vector<std::vector<Observation>> streams;
};

Fleet make_fleet(std::span<const SyntheticLearner> specs);

}  // namespace curvecast
