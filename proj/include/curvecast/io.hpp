// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "curvecast/corpus.hpp"
#include "curvecast/observation.hpp"

namespace curvecast {

// Observation CSV. Header `level,x_words,accuracy` with an optional trailing
// `fold` column. Parse errors carry "<source>:<line>:".
std::vector<Observation> parse_observations(std::istream& in,
                                            const std::string& source);
std::vector<Observation> read_observations(const std::filesystem::path& path);
void write_observations(std::ostream& out,
                        std::span<const Observation> observations);
void write_observations(const std::filesystem::path& path,
                        std::span<const Observation> observations);

// Tagged corpus: one "word<TAB>tag" token per line, a blank line ends a
// sentence. A missing final blank line still closes the last sentence.
Corpus parse_corpus(std::istream& in, const std::string& source);
Corpus read_corpus(const std::filesystem::path& path);

}  // namespace curvecast
