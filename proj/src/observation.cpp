// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/observation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace curvecast {

namespace {

std::vector<Observation> renumber(std::vector<Observation> stream) {
  std::sort(stream.begin(), stream.end(),
            [](const Observation& a, const Observation& b) {
              return a.words < b.words;
            });
  int level = 1;
  for (auto& obs : stream) {
    obs.level = level++;
    obs.fold = 0;
  }
  return stream;
}

}  // namespace

std::vector<Observation> average_folds(
    std::span<const Observation> observations) {
  bool labelled = false;
  for (const auto& obs : observations)
    if (obs.fold != 0) labelled = true;
  if (!labelled)
    return renumber({observations.begin(), observations.end()});

  // Group per fold, then require one shared grid.
  std::map<int, std::vector<Observation>> folds;
  for (const auto& obs : observations) {
    if (obs.fold <= 0)
      throw std::invalid_argument(
          "fold averaging: stream mixes labelled and unlabelled observations");
    folds[obs.fold].push_back(obs);
  }

  const auto& first = folds.begin()->second;
  for (const auto& [fold, stream] : folds) {
    if (stream.size() != first.size())
      throw std::invalid_argument("fold averaging: fold " +
                                  std::to_string(fold) +
                                  " has a different number of observations");
    for (std::size_t i = 0; i < stream.size(); ++i)
      if (stream[i].words != first[i].words)
        throw std::invalid_argument(
            "fold averaging: fold grids differ at word position " +
            std::to_string(stream[i].words));
  }

  std::vector<Observation> averaged;
  averaged.reserve(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    double sum = 0.0;
    for (const auto& [fold, stream] : folds) sum += stream[i].accuracy;
    averaged.push_back({0, first[i].words,
                        sum / static_cast<double>(folds.size()), 0});
  }
  return renumber(std::move(averaged));
}

std::vector<Observation> kfold_average(
    std::span<const std::vector<Observation>> folds) {
  if (folds.empty())
    throw std::invalid_argument("fold averaging: no folds given");
  std::vector<Observation> merged;
  int fold = 1;
  for (const auto& stream : folds) {
    for (auto obs : stream) {
      obs.fold = fold;
      merged.push_back(obs);
    }
    ++fold;
  }
  return average_folds(merged);
}

}  // namespace curvecast
