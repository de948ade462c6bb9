#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsm/morpheme_model.hpp"
#include "tsm/segmentation.hpp"

namespace tsm {

enum class DecodeStrategy {
  kLearnedOnly,  // best of the analyses recorded during training
  kAllSplits,    // best over every segmentation of the word
};

std::string ToString(DecodeStrategy s);
// Accepts "learned" and "all".
DecodeStrategy ParseDecodeStrategy(std::string_view name);

struct DecodeConfig {
  DecodeStrategy strategy = DecodeStrategy::kAllSplits;
  std::size_t min_morpheme_freq = 5;
  std::optional<std::size_t> max_morphemes;
};

// Word -> analyses recorded at the end of training.
using LearnedAnalyses = std::map<std::string, std::vector<Segmentation>>;

// Drops morphemes seen fewer than min_morpheme_freq times.
Lexicon FilterLexicon(const Lexicon& lex, const DecodeConfig& cfg);

// Exact maximizer of the unigram CRP likelihood over all segmentations, by
// dynamic programming over split positions. Ties go to fewer morphemes, then
// to the longest first morpheme, then longest second, and so on.
Segmentation SegmentAllSplits(std::string_view word, const Lexicon& lex,
                              const ModelParams& params,
                              const DecodeConfig& cfg);

// Highest-likelihood recorded analysis; unseen words fall back to
// SegmentAllSplits.
Segmentation SegmentLearnedOnly(std::string_view word,
                                const LearnedAnalyses& learned,
                                const Lexicon& lex, const ModelParams& params,
                                const DecodeConfig& cfg);

// Applies cfg.strategy to each word in order. `lex` should already be
// filtered.
std::vector<Segmentation> SegmentBatch(const std::vector<std::string>& words,
                                       const LearnedAnalyses& learned,
                                       const Lexicon& lex,
                                       const ModelParams& params,
                                       const DecodeConfig& cfg);

// True if a is preferred to b under the decoding tie-break order (both must
// carry scores).
bool BetterSegmentation(const Segmentation& a, const Segmentation& b);

}  // namespace tsm
