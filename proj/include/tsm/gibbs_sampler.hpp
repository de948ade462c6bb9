#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tsm/embedding_store.hpp"
#include "tsm/morpheme_model.hpp"
#include "tsm/random.hpp"
#include "tsm/segmentation.hpp"
#include "tsm/trie_builder.hpp"
#include "tsm/word_list.hpp"

namespace tsm {

struct SamplerConfig {
  std::size_t iterations = 50;
  // Left part of every binary split keeps at least this many characters.
  std::size_t min_stem_length = 4;
  std::uint64_t rng_seed = 1;
  std::optional<std::size_t> max_suffix_length;
  // Draw words uniformly with replacement instead of permuted sweeps.
  bool uniform_draws = false;
  // Remember the highest log-posterior state seen across sweeps.
  bool keep_best = false;

  void Validate() const;
};

// Log boundary prior of a candidate split.
using BoundaryScorer = std::function<double(const BoundaryContext&)>;

// Branch * semantic * presence from the store and word list. Both must
// outlive the returned scorer.
BoundaryScorer MakeBoundaryScorer(const EmbeddingStore& store,
                                  const WordList& words,
                                  const ModelParams& params);

// Branches leaving the node reached by the first `split_chars` characters of
// `word` in `trie`. Throws InvariantError if that prefix is not in the trie.
std::size_t BranchCountForSplit(std::string_view word, std::size_t split_chars,
                                const Trie& trie);

// Current analysis of every training word type, plus the lexicon they imply.
class CorpusState {
 public:
  // Every distinct word of every trie starts unsegmented. A word's home trie
  // is the first trie (in set order) that contains it.
  explicit CorpusState(std::shared_ptr<const TrieSet> tries);

  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  const std::string& word(std::size_t i) const { return words_[i]; }
  std::optional<std::size_t> IndexOf(std::string_view word) const;

  const Segmentation& segmentation(std::size_t i) const {
    return segmentations_[i];
  }
  const Lexicon& lexicon() const { return lexicon_; }
  const TrieSet& tries() const { return *tries_; }
  const Trie& home_trie(std::size_t i) const;
  // Indices of every trie containing word i, ascending.
  const std::vector<std::size_t>& residences(std::size_t i) const {
    return residences_[i];
  }

  // Replaces word i's analysis and keeps the lexicon in step.
  void Assign(std::size_t i, std::vector<std::string> morphemes);
  void RemoveFromLexicon(std::size_t i);
  void AddToLexicon(std::size_t i);

  // Lexicon recounted from the current segmentations.
  Lexicon RebuildLexicon() const;

 private:
  friend class GibbsSampler;

  std::shared_ptr<const TrieSet> tries_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Segmentation> segmentations_;
  std::vector<std::vector<std::size_t>> residences_;
  Lexicon lexicon_;
};

// One option at a sampling step. split == 0 means "leave unsplit";
// otherwise the left part keeps `split` characters.
struct SplitCandidate {
  std::size_t split = 0;
  double log_score = 0.0;
  double probability = 0.0;
};

struct SweepStats {
  std::size_t sweep = 0;  // 1-based
  double log_posterior = 0.0;
  std::size_t lexicon_size = 0;
};

class GibbsSampler {
 public:
  GibbsSampler(CorpusState& state, ModelParams params, SamplerConfig config,
               BoundaryScorer scorer);

  // Normalized candidates for splitting `part`, the first characters of
  // `word`, with branch counts from `trie`. Scored against the live lexicon.
  std::vector<SplitCandidate> Candidates(std::string_view word,
                                         std::size_t part_chars,
                                         const Trie& trie) const;

  // Draws a segmentation of `word` by recursive binary splitting of the left
  // part, scoring against the live lexicon (which must already exclude the
  // word's own morphemes).
  std::vector<std::string> SampleSegmentation(std::string_view word,
                                              const Trie& trie, Rng& rng) const;

  // Remove, resample, re-add word i.
  void ResampleWord(std::size_t i, Rng& rng);

  SweepStats Sweep(Rng& rng);

  using SweepCallback = std::function<void(const SweepStats&)>;
  // Runs config.iterations sweeps from a fresh Rng(config.rng_seed).
  void Run(const SweepCallback& on_sweep = {});

  // Lexicon joint CRP probability plus the boundary prior at every boundary.
  double LogPosterior() const;

  // For each word, its distinct analyses across trie residences: the trained
  // one first, then one draw per additional trie against the final lexicon.
  // Does not modify the state.
  std::vector<std::vector<Segmentation>> LearnedSegmentations(Rng& rng) const;

  // Populated only with config.keep_best.
  const std::optional<std::vector<Segmentation>>& best_segmentations() const {
    return best_;
  }
  double best_log_posterior() const { return best_log_posterior_; }

  const ModelParams& params() const { return params_; }
  const SamplerConfig& config() const { return config_; }

 private:
  double LogBoundary(std::string_view word, std::size_t left_chars,
                     std::size_t part_chars,
                     const std::vector<std::size_t>& offsets,
                     const Trie& trie) const;

  CorpusState& state_;
  ModelParams params_;
  SamplerConfig config_;
  BoundaryScorer scorer_;
  std::size_t sweeps_done_ = 0;
  std::optional<std::vector<Segmentation>> best_;
  double best_log_posterior_ = 0.0;
};

// `word<TAB>m1 m2 ...`, words sorted, one line per distinct analysis.
void WriteSegmentations(const CorpusState& state,
                        const std::vector<std::vector<Segmentation>>& learned,
                        std::ostream& out);

// Reads `word<TAB>m1 m2` lines; repeated words collect alternatives in
// file order. Throws InputError if an analysis does not spell its word.
std::map<std::string, std::vector<Segmentation>> ReadSegmentations(
    const std::string& path);

}  // namespace tsm
