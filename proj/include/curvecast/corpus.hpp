// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace curvecast {

struct Token {
  std::string word;
  std::string tag;
};

/// A tagged training corpus. Only the sentence geometry matters to the math;
/// tokens are kept so ingestion round-trips are possible.
struct Corpus {
  std::vector<Token> tokens;
  std::vector<std::int64_t> sentence_ends;  // 1-based word positions, strictly
                                            // increasing, last == tokens.size()

  [[nodiscard]] std::int64_t word_count() const {
    return static_cast<std::int64_t>(tokens.size());
  }
};

/// Position of the first sentence ending at or beyond the ell-th word.
std::int64_t sentence_ceiling(const Corpus& corpus, std::int64_t ell);

/// Sampling schedule: an initial kernel plus a step function giving how many
/// words each later cycle adds.
struct LearningScheme {
  std::int64_t kernel_words = 5000;
  std::function<std::int64_t(int)> step;  // words added by cycle i >= 2
  std::int64_t corpus_words = 700000;
};

LearningScheme constant_scheme(std::int64_t kernel, std::int64_t step,
                               std::int64_t corpus_words);

void validate(const LearningScheme& scheme);

/// Word positions of the sentence-aligned individuals: each raw cumulative
/// size is rounded up to the next sentence ending. Positions are strictly
/// increasing (cycles that round to the same sentence are merged) and the
/// raw sizes never exceed the corpus.
std::vector<std::int64_t> build_individuals(const Corpus& corpus,
                                            const LearningScheme& scheme);

/// The same schedule without sentence alignment (no corpus at hand):
/// kernel, kernel + step(2), ... up to corpus_words.
std::vector<std::int64_t> scheme_positions(const LearningScheme& scheme);

}  // namespace curvecast
