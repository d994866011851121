// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "curvecast/harness.hpp"

namespace curvecast {

namespace {

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& message) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + message);
}

std::string trimmed(std::string text) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!text.empty() && is_space(text.back())) text.pop_back();
  std::size_t head = 0;
  while (head < text.size() && is_space(text[head])) ++head;
  return text.substr(head);
}

double to_double(const std::string& value, const std::string& source, int line) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    fail(source, line, "cannot parse number '" + value + "'");
  }
}

std::int64_t to_int(const std::string& value, const std::string& source,
                    int line) {
  std::int64_t parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    fail(source, line, "cannot parse integer '" + value + "'");
  return parsed;
}

std::vector<std::int64_t> to_colon_ints(const std::string& value,
                                        std::size_t expected,
                                        const std::string& source, int line) {
  std::vector<std::int64_t> parts;
  std::string part;
  std::istringstream stream(value);
  while (std::getline(stream, part, ':'))
    parts.push_back(to_int(trimmed(part), source, line));
  if (parts.size() != expected)
    fail(source, line,
         "expected " + std::to_string(expected) + " colon-separated values in '" +
             value + "'");
  return parts;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in,
                                         const std::string& source,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  RunSpec* current_run = nullptr;

  const auto resolve = [&](const std::string& path) {
    std::filesystem::path p(path);
    return p.is_absolute() ? p : base_dir / p;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::string row = trimmed(line);
    if (row.empty()) continue;

    if (row.front() == '[') {
      if (row.back() != ']') fail(source, line_no, "unterminated section header");
      const std::string section = trimmed(row.substr(1, row.size() - 2));
      if (section.rfind("run ", 0) != 0)
        fail(source, line_no, "unknown section '" + section + "'");
      const std::string name = trimmed(section.substr(4));
      if (name.empty()) fail(source, line_no, "run section without a name");
      config.runs.push_back(RunSpec{name, {}, {}, std::nullopt});
      current_run = &config.runs.back();
      continue;
    }

    const auto eq = row.find('=');
    if (eq == std::string::npos) fail(source, line_no, "expected 'key = value'");
    const std::string key = trimmed(row.substr(0, eq));
    const std::string value = trimmed(row.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(source, line_no, "expected 'key = value'");

    if (current_run) {
      if (key == "observations") {
        current_run->observations_path = resolve(value);
      } else if (key == "tau") {
        current_run->tau = to_double(value, source, line_no);
      } else {
        fail(source, line_no, "unknown run key '" + key + "'");
      }
      continue;
    }

    if (key == "kernel") {
      config.scheme.kernel = to_int(value, source, line_no);
    } else if (key == "step") {
      config.scheme.step = to_int(value, source, line_no);
    } else if (key == "size") {
      config.scheme.size = to_int(value, source, line_no);
    } else if (key == "corpus") {
      config.corpus_path = resolve(value);
    } else if (key == "nu") {
      config.levels.nu = to_double(value, source, line_no);
    } else if (key == "slowdown") {
      config.levels.slowdown = static_cast<int>(to_int(value, source, line_no));
    } else if (key == "lookahead") {
      config.levels.lookahead = static_cast<int>(to_int(value, source, line_no));
    } else if (key == "tau") {
      config.levels.tau = to_double(value, source, line_no);
    } else if (key == "layer_scale") {
      config.levels.layer_scale = to_double(value, source, line_no);
    } else if (key == "window") {
      const auto parts = to_colon_ints(value, 2, source, line_no);
      config.levels.window_lo = parts[0];
      config.levels.window_hi = parts[1];
    } else if (key == "window_grid") {
      config.levels.window_grid = static_cast<int>(to_int(value, source, line_no));
    } else if (key == "controls") {
      const auto parts = to_colon_ints(value, 3, source, line_no);
      config.controls = {parts[0], parts[1], parts[2]};
    } else if (key == "folds") {
      config.folds = static_cast<int>(to_int(value, source, line_no));
    } else if (key == "fit_max_iterations") {
      config.fit.max_iterations = static_cast<int>(to_int(value, source, line_no));
    } else if (key == "fit_residual_tolerance") {
      config.fit.residual_tolerance = to_double(value, source, line_no);
    } else if (key == "fit_step_tolerance") {
      config.fit.step_tolerance = to_double(value, source, line_no);
    } else if (key == "fit_trust_radius") {
      config.fit.initial_trust_radius = to_double(value, source, line_no);
    } else if (key == "fit_parameter_floor") {
      config.fit.parameter_floor = to_double(value, source, line_no);
    } else {
      fail(source, line_no, "unknown key '" + key + "'");
    }
  }

  for (const auto& run : config.runs)
    if (run.observations_path.empty() && run.observations.empty())
      throw std::runtime_error(source + ": run '" + run.name +
                               "' has no observations key");
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_experiment_config(in, path.string(),
                                 path.has_parent_path() ? path.parent_path()
                                                        : std::filesystem::path("."));
}

}  // namespace curvecast
