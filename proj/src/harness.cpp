// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/harness.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "curvecast/io.hpp"

namespace curvecast {

namespace {

bool name_less(const std::string& a, const std::string& b) {
  const auto fold = [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  };
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const char ca = fold(a[i]), cb = fold(b[i]);
    if (ca != cb) return ca < cb;
  }
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;  // case-sensitive tiebreak keeps the order total
}

void check_config(const ExperimentConfig& config) {
  validate(config.fit);
  validate(config.levels);
  if (config.folds < 1)
    throw std::invalid_argument("experiment: folds must be >= 1");
  if (config.controls.lo < 1 || config.controls.hi < config.controls.lo ||
      config.controls.step < 1)
    throw std::invalid_argument("experiment: bad control sequence spec");
  if (config.controls.hi > config.levels.window_hi)
    throw std::invalid_argument(
        "experiment: control levels must stay within the sampling window");
  std::set<std::string> names;
  for (const auto& run : config.runs) {
    if (run.name.empty())
      throw std::invalid_argument("experiment: run with empty name");
    if (!names.insert(run.name).second)
      throw std::invalid_argument("experiment: duplicate run name '" +
                                  run.name + "'");
  }
}

std::vector<Observation> load_stream(const RunSpec& run) {
  if (!run.observations.empty()) return run.observations;
  if (run.observations_path.empty())
    throw std::invalid_argument("run '" + run.name +
                                "' has no observation source");
  return read_observations(run.observations_path);
}

// Ac at a control position: the fold-averaged observation at that exact
// position, or a linear interpolation between its neighbours (flagged).
struct AcValue {
  std::optional<double> value;
  bool interpolated = false;
};

AcValue actual_at(const std::vector<Observation>& averaged,
                  std::int64_t position) {
  const auto at_or_after = std::lower_bound(
      averaged.begin(), averaged.end(), position,
      [](const Observation& obs, std::int64_t pos) { return obs.words < pos; });
  if (at_or_after == averaged.end()) return {};
  if (at_or_after->words == position) return {at_or_after->accuracy, false};
  if (at_or_after == averaged.begin()) return {};
  const auto& hi = *at_or_after;
  const auto& lo = *(at_or_after - 1);
  const double t = static_cast<double>(position - lo.words) /
                   static_cast<double>(hi.words - lo.words);
  return {lo.accuracy + t * (hi.accuracy - lo.accuracy), true};
}

}  // namespace

EvaluationReport evaluate_collection(const ExperimentConfig& config) {
  check_config(config);

  std::optional<Corpus> corpus;
  if (!config.corpus_path.empty()) corpus = read_corpus(config.corpus_path);

  // A finite corpus bounds the study: window and control positions round up
  // to sentence endings, capped at the corpus end.
  LevelConfig base_levels = config.levels;
  const auto snap = [&](std::int64_t position) {
    return sentence_ceiling(*corpus,
                            std::min(position, corpus->word_count()));
  };
  if (corpus) {
    base_levels.window_lo = snap(config.levels.window_lo);
    base_levels.window_hi = snap(config.levels.window_hi);
  }

  // Streams first: control positions snap to the corpus when given, else to
  // the first readable run's grid, so every run is monitored at the same
  // word positions.
  struct Prepared {
    const RunSpec* spec;
    std::vector<Observation> averaged;
    std::string error;
  };
  std::vector<Prepared> prepared;
  for (const auto& run : config.runs) {
    Prepared item{&run, {}, {}};
    try {
      const auto raw = load_stream(run);
      if (config.folds > 1) {
        std::set<int> folds_seen;
        for (const auto& obs : raw) folds_seen.insert(obs.fold);
        if (static_cast<int>(folds_seen.size()) != config.folds)
          throw std::invalid_argument(
              "run '" + run.name + "': expected " +
              std::to_string(config.folds) + " folds, found " +
              std::to_string(folds_seen.size()));
      }
      item.averaged = average_folds(raw);
    } catch (const std::exception& e) {
      item.error = e.what();
    }
    prepared.push_back(std::move(item));
  }
  std::stable_sort(prepared.begin(), prepared.end(),
                   [](const Prepared& a, const Prepared& b) {
                     return name_less(a.spec->name, b.spec->name);
                   });

  EvaluationReport report;
  for (std::int64_t nominal = config.controls.lo; nominal <= config.controls.hi;
       nominal += config.controls.step) {
    std::int64_t position = nominal;
    if (corpus) {
      position = snap(nominal);
    } else {
      for (const auto& item : prepared) {
        if (!item.error.empty()) continue;
        const auto snapped = std::lower_bound(
            item.averaged.begin(), item.averaged.end(), nominal,
            [](const Observation& obs, std::int64_t pos) {
              return obs.words < pos;
            });
        if (snapped != item.averaged.end()) position = snapped->words;
        break;
      }
    }
    if (!report.control_positions.empty() &&
        position <= report.control_positions.back())
      continue;  // two nominals in one sentence collapse to one control level
    report.control_positions.push_back(position);
  }

  struct Monitored {
    ReportRow row;
    std::optional<CurvePair> pair;  // present when fully monitored
  };
  std::vector<Monitored> monitored;

  for (const auto& item : prepared) {
    Monitored entry;
    ReportRow& row = entry.row;
    row.name = item.spec->name;
    LevelConfig levels = base_levels;
    if (item.spec->tau) levels.tau = *item.spec->tau;
    row.tau = levels.tau;
    row.cells.resize(report.control_positions.size());

    if (!item.error.empty()) {
      row.note = item.error;
      monitored.push_back(std::move(entry));
      continue;
    }

    try {
      const Run run = analyze(build_trace(item.averaged, config.fit), levels);
      if (run.prediction_level)
        row.prediction_pos = run.trace.position(*run.prediction_level);
      if (run.convergence_level)
        row.convergence_pos = run.trace.position(*run.convergence_level);

      const PowerLawTrend* predictor = run.predictor();
      CurvePair pair;
      bool complete = true;
      for (std::size_t i = 0; i < report.control_positions.size(); ++i) {
        const auto position = report.control_positions[i];
        const auto ac = actual_at(item.averaged, position);
        row.cells[i].ac = ac.value;
        row.cells[i].interpolated = ac.interpolated;
        if (predictor)
          row.cells[i].eac =
              evaluate(predictor->params, static_cast<double>(position));
        if (ac.value && row.cells[i].eac) {
          pair.actual[position] = *ac.value;
          pair.estimated[position] = *row.cells[i].eac;
        } else {
          complete = false;
        }
      }
      if (predictor && complete) entry.pair = std::move(pair);

      if (run.working_level && run.convergence_level) {
        const auto first =
            static_cast<std::size_t>(*run.working_level - LearningTrace::first_level);
        const auto count = static_cast<std::size_t>(*run.convergence_level -
                                                    *run.working_level + 1);
        row.rr = robustness_rate(
            std::span<const double>(run.trace.backbone).subspan(first, count));
      }
    } catch (const std::exception& e) {
      row.note = e.what();
      row.prediction_pos.reset();
      row.convergence_pos.reset();
      for (auto& cell : row.cells) cell = {};
      row.rr.reset();
    }
    monitored.push_back(std::move(entry));
  }

  // Reliability metrics over the pool of fully monitored runs. A run without
  // a viable prediction contributes nothing and is not a peer for anyone.
  ControlSequence sequence{report.control_positions};
  for (auto& entry : monitored) {
    if (!entry.pair) continue;
    entry.row.mape = mape(*entry.pair, sequence);
    std::vector<CurvePair> peers;
    for (const auto& other : monitored)
      if (&other != &entry && other.pair) peers.push_back(*other.pair);
    if (!peers.empty())
      entry.row.dmr = decision_reliability(*entry.pair, peers, sequence);
  }

  report.rows.reserve(monitored.size());
  for (auto& entry : monitored) report.rows.push_back(std::move(entry.row));
  return report;
}

}  // namespace curvecast
