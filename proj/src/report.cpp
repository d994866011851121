// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "curvecast/harness.hpp"

namespace curvecast {

namespace {

std::string fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::string cell_text(const std::optional<double>& value, int decimals = 2) {
  return value ? fixed(*value, decimals) : std::string("--");
}

std::string position_text(const std::optional<std::int64_t>& value) {
  return value ? std::to_string(*value) : std::string("--");
}

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& message) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string emit_table(const EvaluationReport& report) {
  std::vector<std::vector<std::string>> grid;

  std::vector<std::string> header{"run", "plevel", "tau", "clevel"};
  for (const auto position : report.control_positions) {
    header.push_back("Ac@" + std::to_string(position));
    header.push_back("EAc@" + std::to_string(position));
  }
  header.insert(header.end(), {"mape", "dmr", "rr"});
  grid.push_back(header);

  bool any_interpolated = false;
  for (const auto& row : report.rows) {
    std::vector<std::string> cells{row.name, position_text(row.prediction_pos),
                                   fixed(row.tau, 2),
                                   position_text(row.convergence_pos)};
    for (const auto& cell : row.cells) {
      std::string ac = cell_text(cell.ac);
      if (cell.interpolated) {
        ac += '*';
        any_interpolated = true;
      }
      cells.push_back(std::move(ac));
      cells.push_back(cell_text(cell.eac));
    }
    cells.push_back(cell_text(row.mape));
    cells.push_back(cell_text(row.dmr));
    cells.push_back(cell_text(row.rr));
    grid.push_back(std::move(cells));
  }

  std::vector<std::size_t> widths(grid.front().size(), 0);
  for (const auto& cells : grid)
    for (std::size_t i = 0; i < cells.size(); ++i)
      widths[i] = std::max(widths[i], cells[i].size());

  std::ostringstream out;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      if (i) out << "  ";
      out << grid[r][i];
      if (i + 1 < grid[r].size())
        out << std::string(widths[i] - grid[r][i].size(), ' ');
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (const auto w : widths) total += w + 2;
      out << std::string(total - 2, '-') << '\n';
    }
  }

  out << "\nmape: mean |100*(EAc-Ac)/Ac| over the control sequence.\n"
         "dmr:  percent of peer runs whose pairwise order agreement (rer) is a "
         "perfect 100; runs without a frozen predictor are left out of the "
         "pool.\n"
         "rr:   percent of the working-to-convergence backbone covered by its "
         "longest contiguous monotone stretch.\n";
  for (const auto& row : report.rows)
    if (!row.note.empty()) out << "note (" << row.name << "): " << row.note << '\n';
  if (any_interpolated)
    out << "*: Ac interpolated between neighbouring observations.\n";
  return out.str();
}

std::string emit_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "run,plevel,tau,clevel";
  for (const auto position : report.control_positions)
    out << ",ac_" << position << ",eac_" << position;
  out << ",mape,dmr,rr,interpolated\n";

  const auto emit_optional = [&](const std::optional<double>& value) {
    out << ',';
    if (value) out << fixed(*value, 2);
  };
  for (const auto& row : report.rows) {
    out << row.name << ',';
    if (row.prediction_pos) out << *row.prediction_pos;
    out << ',' << fixed(row.tau, 2) << ',';
    if (row.convergence_pos) out << *row.convergence_pos;
    for (const auto& cell : row.cells) {
      emit_optional(cell.ac);
      emit_optional(cell.eac);
    }
    emit_optional(row.mape);
    emit_optional(row.dmr);
    emit_optional(row.rr);
    out << ',';
    bool first = true;
    for (std::size_t i = 0; i < row.cells.size(); ++i)
      if (row.cells[i].interpolated) {
        if (!first) out << ';';
        out << report.control_positions[i];
        first = false;
      }
    out << '\n';
  }
  return out.str();
}

std::string emit_plot_series(const EvaluationReport& report) {
  std::ostringstream out;
  out << "run,series,x_words,value\n";
  for (const auto& row : report.rows)
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      if (row.cells[i].ac)
        out << row.name << ",ac," << report.control_positions[i] << ','
            << fixed(*row.cells[i].ac, 6) << '\n';
      if (row.cells[i].eac)
        out << row.name << ",eac," << report.control_positions[i] << ','
            << fixed(*row.cells[i].eac, 6) << '\n';
    }
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::table;
  if (name == "csv") return ReportFormat::csv;
  if (name == "plot-series") return ReportFormat::plot_series;
  throw std::invalid_argument("unknown report format '" + std::string(name) +
                              "' (expected table, csv or plot-series)");
}

std::string emit_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::table:
      return emit_table(report);
    case ReportFormat::csv:
      return emit_csv(report);
    case ReportFormat::plot_series:
      return emit_plot_series(report);
  }
  throw std::invalid_argument("unknown report format");
}

EvaluationReport parse_report_csv(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) fail(source, 1, "empty report");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_csv(line);
  if (header.size() < 8 || header[0] != "run" || header[1] != "plevel" ||
      header[2] != "tau" || header[3] != "clevel")
    fail(source, line_no, "expected a report header starting 'run,plevel,tau,clevel'");

  bool with_interpolated = header.back() == "interpolated";
  const std::size_t fixed_tail = with_interpolated ? 4u : 3u;  // mape,dmr,rr[,interpolated]
  if (header.size() < 4 + fixed_tail ||
      header[header.size() - fixed_tail] != "mape" ||
      header[header.size() - fixed_tail + 1] != "dmr" ||
      header[header.size() - fixed_tail + 2] != "rr")
    fail(source, line_no, "expected trailing columns mape,dmr,rr[,interpolated]");

  EvaluationReport report;
  const std::size_t pair_cells = header.size() - 4 - fixed_tail;
  if (pair_cells % 2 != 0)
    fail(source, line_no, "ac/eac columns must come in pairs");
  for (std::size_t i = 0; i < pair_cells; i += 2) {
    const auto& ac_name = header[4 + i];
    if (ac_name.rfind("ac_", 0) != 0)
      fail(source, line_no, "expected ac_<position> column, got '" + ac_name + "'");
    std::int64_t position = 0;
    const auto* begin = ac_name.data() + 3;
    const auto* end = ac_name.data() + ac_name.size();
    const auto [ptr, ec] = std::from_chars(begin, end, position);
    if (ec != std::errc{} || ptr != end)
      fail(source, line_no, "bad control position in '" + ac_name + "'");
    report.control_positions.push_back(position);
  }

  const auto parse_optional = [&](const std::string& cell,
                                  int line_number) -> std::optional<double> {
    if (cell.empty() || cell == "--") return std::nullopt;
    try {
      std::size_t used = 0;
      const double value = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      return value;
    } catch (const std::exception&) {
      fail(source, line_number, "cannot parse number '" + cell + "'");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      fail(source, line_no,
           "expected " + std::to_string(header.size()) + " fields, got " +
               std::to_string(cells.size()));

    ReportRow row;
    row.name = cells[0];
    if (const auto v = parse_optional(cells[1], line_no))
      row.prediction_pos = static_cast<std::int64_t>(*v);
    const auto tau = parse_optional(cells[2], line_no);
    if (!tau) fail(source, line_no, "missing tau");
    row.tau = *tau;
    if (const auto v = parse_optional(cells[3], line_no))
      row.convergence_pos = static_cast<std::int64_t>(*v);

    for (std::size_t i = 0; i < report.control_positions.size(); ++i) {
      ReportCell cell;
      cell.ac = parse_optional(cells[4 + 2 * i], line_no);
      cell.eac = parse_optional(cells[5 + 2 * i], line_no);
      row.cells.push_back(cell);
    }
    const std::size_t tail = header.size() - fixed_tail;
    row.mape = parse_optional(cells[tail], line_no);
    row.dmr = parse_optional(cells[tail + 1], line_no);
    row.rr = parse_optional(cells[tail + 2], line_no);
    if (with_interpolated && !cells.back().empty()) {
      std::istringstream marks(cells.back());
      std::string mark;
      while (std::getline(marks, mark, ';')) {
        const std::int64_t position = std::stoll(mark);
        for (std::size_t i = 0; i < report.control_positions.size(); ++i)
          if (report.control_positions[i] == position)
            row.cells[i].interpolated = true;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

EvaluationReport read_report_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_report_csv(in, path.string());
}

void recompute_metrics(EvaluationReport& report) {
  ControlSequence sequence{report.control_positions};
  validate(sequence);

  std::vector<std::optional<CurvePair>> pairs(report.rows.size());
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    CurvePair pair;
    bool complete = !report.rows[r].cells.empty();
    for (std::size_t i = 0; i < report.rows[r].cells.size(); ++i) {
      const auto& cell = report.rows[r].cells[i];
      if (cell.ac && cell.eac) {
        pair.actual[report.control_positions[i]] = *cell.ac;
        pair.estimated[report.control_positions[i]] = *cell.eac;
      } else {
        complete = false;
      }
    }
    if (complete) pairs[r] = std::move(pair);
  }

  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    auto& row = report.rows[r];
    row.mape.reset();
    row.dmr.reset();
    if (!pairs[r]) continue;
    row.mape = mape(*pairs[r], sequence);
    std::vector<CurvePair> peers;
    for (std::size_t other = 0; other < pairs.size(); ++other)
      if (other != r && pairs[other]) peers.push_back(*pairs[other]);
    if (!peers.empty())
      row.dmr = decision_reliability(*pairs[r], peers, sequence);
  }
}

}  // namespace curvecast
