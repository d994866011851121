// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace curvecast {

namespace {

// Box-Muller on top of mt19937_64. Both pieces are fully specified, so the
// stream is reproducible across platforms, which std::normal_distribution
// does not promise.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    const double u1 = uniform_open();
    const double u2 = uniform_half_open();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  double uniform_open() {  // in (0, 1]
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }
  double uniform_half_open() {  // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 engine_;
};

void check_learner(const SyntheticLearner& learner) {
  if (!learner.truth.valid())
    throw std::invalid_argument("simulate: truth parameters are not a valid pattern");
  if (learner.noise_sigma < 0.0)
    throw std::invalid_argument("simulate: noise sigma must be nonnegative");
  if (learner.x_grid.empty())
    throw std::invalid_argument("simulate: empty word grid");
  for (std::size_t i = 0; i < learner.x_grid.size(); ++i) {
    if (learner.x_grid[i] < 1)
      throw std::invalid_argument("simulate: grid positions must be positive");
    if (i > 0 && learner.x_grid[i] <= learner.x_grid[i - 1])
      throw std::invalid_argument("simulate: grid must be strictly increasing");
  }
}

std::vector<Observation> sample(const SyntheticLearner& learner,
                                std::uint64_t seed, int fold) {
  GaussianStream noise(seed);
  std::vector<Observation> stream;
  stream.reserve(learner.x_grid.size());
  int level = 1;
  for (const auto x : learner.x_grid) {
    double accuracy = evaluate(learner.truth, static_cast<double>(x));
    if (learner.noise_sigma > 0.0) accuracy += learner.noise_sigma * noise.next();
    accuracy = std::clamp(accuracy, 0.0, 100.0);
    stream.push_back({level++, x, accuracy, fold});
  }
  return stream;
}

}  // namespace

std::vector<Observation> generate(const SyntheticLearner& learner) {
  check_learner(learner);
  return sample(learner, learner.seed, 0);
}

std::vector<Observation> generate_folds(const SyntheticLearner& learner,
                                        int k) {
  check_learner(learner);
  if (k < 1) throw std::invalid_argument("simulate: fold count must be >= 1");
  std::vector<Observation> merged;
  merged.reserve(learner.x_grid.size() * static_cast<std::size_t>(k));
  for (int fold = 1; fold <= k; ++fold) {
    // Decorrelate folds while keeping the whole bundle a function of the seed.
    const std::uint64_t fold_seed =
        learner.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(fold);
    auto stream = sample(learner, fold_seed, fold);
    merged.insert(merged.end(), stream.begin(), stream.end());
  }
  return merged;
}

Fleet make_fleet(std::span<const SyntheticLearner> specs) {
  std::set<std::string> seen;
  Fleet fleet;
  for (const auto& spec : specs) {
    if (!seen.insert(spec.name).second)
      throw std::invalid_argument("fleet: duplicate learner name '" +
                                  spec.name + "'");
    if (!fleet.streams.empty() && spec.x_grid != specs.front().x_grid)
      throw std::invalid_argument(
          "fleet: learner '" + spec.name +
          "' uses a different word grid than the rest");
    fleet.names.push_back(spec.name);
    fleet.streams.push_back(generate(spec));
  }
  return fleet;
}

}  // namespace curvecast
