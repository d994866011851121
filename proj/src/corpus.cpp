// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/corpus.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace curvecast {

std::int64_t sentence_ceiling(const Corpus& corpus, std::int64_t ell) {
  if (corpus.sentence_ends.empty())
    throw std::invalid_argument("corpus has no sentences");
  if (ell < 1 || ell > corpus.word_count())
    throw std::out_of_range("sentence ceiling: word " + std::to_string(ell) +
                            " is outside the corpus (1.." +
                            std::to_string(corpus.word_count()) + ")");
  const auto it = std::lower_bound(corpus.sentence_ends.begin(),
                                   corpus.sentence_ends.end(), ell);
  return *it;  // the last sentence end equals the corpus size, so it exists
}

LearningScheme constant_scheme(std::int64_t kernel, std::int64_t step,
                               std::int64_t corpus_words) {
  LearningScheme scheme;
  scheme.kernel_words = kernel;
  scheme.step = [step](int) { return step; };
  scheme.corpus_words = corpus_words;
  validate(scheme);
  return scheme;
}

void validate(const LearningScheme& scheme) {
  if (scheme.kernel_words < 1)
    throw std::invalid_argument("scheme: kernel must be at least one word");
  if (scheme.kernel_words >= scheme.corpus_words)
    throw std::invalid_argument("scheme: kernel must be smaller than the corpus");
  if (!scheme.step)
    throw std::invalid_argument("scheme: no step function");
}

std::vector<std::int64_t> build_individuals(const Corpus& corpus,
                                            const LearningScheme& scheme) {
  validate(scheme);
  if (corpus.word_count() < scheme.kernel_words)
    throw std::invalid_argument("scheme kernel exceeds the corpus");

  std::vector<std::int64_t> positions;
  std::int64_t raw = scheme.kernel_words;  // |C_i| grows by step(i), unaligned
  for (int cycle = 1; raw <= corpus.word_count(); ++cycle) {
    const std::int64_t aligned = sentence_ceiling(corpus, raw);
    if (positions.empty() || aligned > positions.back())
      positions.push_back(aligned);
    const std::int64_t increment = scheme.step(cycle + 1);
    if (increment < 1)
      throw std::invalid_argument("scheme: step must be positive");
    raw += increment;
  }
  return positions;
}

std::vector<std::int64_t> scheme_positions(const LearningScheme& scheme) {
  validate(scheme);
  std::vector<std::int64_t> positions;
  std::int64_t raw = scheme.kernel_words;
  for (int cycle = 1; raw <= scheme.corpus_words; ++cycle) {
    positions.push_back(raw);
    const std::int64_t increment = scheme.step(cycle + 1);
    if (increment < 1)
      throw std::invalid_argument("scheme: step must be positive");
    raw += increment;
  }
  return positions;
}

}  // namespace curvecast
