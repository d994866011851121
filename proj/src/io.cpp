// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace curvecast {

namespace {

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

std::string trimmed(std::string text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!text.empty() && is_space(text.back())) text.pop_back();
  std::size_t head = 0;
  while (head < text.size() && is_space(text[head])) ++head;
  return text.substr(head);
}

double parse_double(const std::string& cell, const std::string& source,
                    int line, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return value;
  } catch (const std::exception&) {
    fail(source, line, std::string("cannot parse ") + what + " '" + cell + "'");
  }
}

std::int64_t parse_int(const std::string& cell, const std::string& source,
                       int line, const char* what) {
  std::int64_t value = 0;
  const auto* begin = cell.data();
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    fail(source, line, std::string("cannot parse ") + what + " '" + cell + "'");
  return value;
}

}  // namespace

std::vector<Observation> parse_observations(std::istream& in,
                                            const std::string& source) {
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) fail(source, 1, "empty observation file");
  ++line_no;
  const std::string header = trimmed(line);
  bool with_fold = false;
  if (header == "level,x_words,accuracy,fold")
    with_fold = true;
  else if (header != "level,x_words,accuracy")
    fail(source, line_no,
         "expected header 'level,x_words,accuracy[,fold]', got '" + header + "'");

  std::vector<Observation> observations;
  std::map<int, std::int64_t> last_words;  // per fold, for the ordering check
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trimmed(line);
    if (row.empty()) continue;
    const auto cells = split_csv(row);
    if (cells.size() != (with_fold ? 4u : 3u))
      fail(source, line_no,
           "expected " + std::to_string(with_fold ? 4 : 3) + " fields, got " +
               std::to_string(cells.size()));

    Observation obs;
    obs.level = static_cast<int>(parse_int(cells[0], source, line_no, "level"));
    obs.words = parse_int(cells[1], source, line_no, "x_words");
    obs.accuracy = parse_double(cells[2], source, line_no, "accuracy");
    obs.fold = with_fold
                   ? static_cast<int>(parse_int(cells[3], source, line_no, "fold"))
                   : 0;

    if (obs.level < 1) fail(source, line_no, "level must be positive");
    if (obs.words < 1) fail(source, line_no, "x_words must be positive");
    if (obs.accuracy < 0.0 || obs.accuracy > 100.0)
      fail(source, line_no, "accuracy must lie in [0, 100]");
    if (with_fold && obs.fold < 1) fail(source, line_no, "fold must be positive");

    const auto [it, inserted] = last_words.try_emplace(obs.fold, obs.words);
    if (!inserted) {
      if (obs.words <= it->second)
        fail(source, line_no, "x_words must be strictly increasing within a fold");
      it->second = obs.words;
    }
    observations.push_back(obs);
  }
  if (observations.empty()) fail(source, line_no, "no observations");
  return observations;
}

std::vector<Observation> read_observations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_observations(in, path.string());
}

void write_observations(std::ostream& out,
                        std::span<const Observation> observations) {
  bool with_fold = false;
  for (const auto& obs : observations)
    if (obs.fold != 0) with_fold = true;

  out << (with_fold ? "level,x_words,accuracy,fold\n" : "level,x_words,accuracy\n");
  char buffer[64];
  for (const auto& obs : observations) {
    std::snprintf(buffer, sizeof buffer, "%.6f", obs.accuracy);
    out << obs.level << ',' << obs.words << ',' << buffer;
    if (with_fold) out << ',' << obs.fold;
    out << '\n';
  }
}

void write_observations(const std::filesystem::path& path,
                        std::span<const Observation> observations) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_observations(out, observations);
}

Corpus parse_corpus(std::istream& in, const std::string& source) {
  Corpus corpus;
  std::string line;
  int line_no = 0;
  bool open_sentence = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (open_sentence) {
        corpus.sentence_ends.push_back(corpus.word_count());
        open_sentence = false;
      }
      continue;  // repeated separators carry no extra sentences
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      fail(source, line_no, "expected 'word<TAB>tag'");
    corpus.tokens.push_back({line.substr(0, tab), line.substr(tab + 1)});
    open_sentence = true;
  }
  if (open_sentence) corpus.sentence_ends.push_back(corpus.word_count());
  if (corpus.tokens.empty())
    throw std::runtime_error(source + ": corpus contains no tokens");
  return corpus;
}

Corpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_corpus(in, path.string());
}

}  // namespace curvecast
