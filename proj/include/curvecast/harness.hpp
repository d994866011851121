// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvecast/levels.hpp"
#include "curvecast/metrics.hpp"
#include "curvecast/observation.hpp"
#include "curvecast/trust_region.hpp"

namespace curvecast {

struct SchemeSpec {
  std::int64_t kernel = 5000;
  std::int64_t step = 5000;
  std::int64_t size = 700000;
};

struct ControlSpec {
  std::int64_t lo = 300000;
  std::int64_t hi = 700000;
  std::int64_t step = 100000;
};

/// One learner under evaluation: a named observation source plus an optional
/// per-run convergence threshold overriding the collection default.
struct RunSpec {
  std::string name;
  std::filesystem::path observations_path;   // read lazily when data is empty
  std::vector<Observation> observations;     // inline stream (tests, fleets)
  std::optional<double> tau;
};

struct ExperimentConfig {
  SchemeSpec scheme;
  FitConfig fit;
  LevelConfig levels;
  ControlSpec controls;
  int folds = 1;
  std::filesystem::path corpus_path;  // optional; snaps positions to sentences
  std::vector<RunSpec> runs;
};

ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::string& source,
                                         const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// One monitored cell of the report: observed and estimated accuracy at a
/// control position. `interpolated` marks an Ac taken between observations.
struct ReportCell {
  std::optional<double> ac;
  std::optional<double> eac;
  bool interpolated = false;
};

struct ReportRow {
  std::string name;
  std::optional<std::int64_t> prediction_pos;   // word position of the plevel
  std::optional<std::int64_t> convergence_pos;  // word position of the clevel
  double tau = 0.0;
  std::vector<ReportCell> cells;  // one per control position
  std::optional<double> mape;
  std::optional<double> dmr;
  std::optional<double> rr;
  std::string note;  // per-run failure, empty when the row is healthy
};

/// Table-shaped result of monitoring a collection of runs along a common
/// control sequence. Rows are ordered by name (case-insensitively).
struct EvaluationReport {
  std::vector<std::int64_t> control_positions;
  std::vector<ReportRow> rows;
};

/// Full pipeline over a collection: fold averaging, trace building, level
/// detection, monitoring and metrics. A run whose prediction never becomes
/// viable (no plevel/clevel) is reported with "--" entries and excluded from
/// every peer's reliability pool. Per-run analysis failures land in the
/// row's note; I/O and config errors throw.
EvaluationReport evaluate_collection(const ExperimentConfig& config);

enum class ReportFormat { table, csv, plot_series };
ReportFormat parse_report_format(std::string_view name);

/// Renders a report. `table` mirrors the monitoring table layout (plevel,
/// tau, clevel, Ac/EAc per control, mape, dmr, rr); `csv` is one row per run
/// with the same numbers; `plot_series` is long-form (run, series, x, value)
/// for external plotting.
std::string emit_report(const EvaluationReport& report, ReportFormat format);

// Report CSV round-trip, used by the `report` subcommand and replay
// fixtures holding published monitoring values.
EvaluationReport parse_report_csv(std::istream& in, const std::string& source);
EvaluationReport read_report_csv(const std::filesystem::path& path);

/// Recomputes mape and dmr from the Ac/EAc cells (rows with estimates only;
/// the reliability pool is every fully estimated row). rr is left alone: it
/// needs the backbone, which monitoring values do not carry.
void recompute_metrics(EvaluationReport& report);

}  // namespace curvecast
