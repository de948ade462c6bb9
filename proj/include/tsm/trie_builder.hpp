#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tsm/embedding_store.hpp"
#include "tsm/trie.hpp"
#include "tsm/word_list.hpp"

namespace tsm {

enum class StemAlgorithm {
  kPrefixWalk,  // chained walk from the longest proper prefix leftwards
  kShortest,    // shortest prefix whose cosine with the word clears the bar
};

enum class NeighborSource {
  kEachInsertedWord,  // query the stem, then every word added to the trie
  kStemOnly,          // only the stem's (or seed's) neighbor list
};

enum class TrieMethod { kSameStem, kSemantic };

struct BuilderParams {
  double cosine_threshold = 0.25;
  std::size_t neighbor_k = 50;
  std::size_t max_expansion_words = 100000;
  std::size_t min_stem_length = 2;
  StemAlgorithm stem_algorithm = StemAlgorithm::kPrefixWalk;
  NeighborSource neighbor_source = NeighborSource::kEachInsertedWord;

  // Throws ConfigError.
  void Validate() const;
};

struct SeededTrie {
  std::string seed;
  Trie trie;
};

struct TrieSet {
  TrieMethod method = TrieMethod::kSemantic;
  BuilderParams params;
  std::vector<SeededTrie> tries;

  // Sum of trie sizes.
  std::size_t TotalWords() const;
  // Distinct words across all tries.
  std::size_t DistinctWords() const;
};

std::string ToString(TrieMethod method);
TrieMethod ParseTrieMethod(std::string_view name);
std::string ToString(StemAlgorithm algo);
StemAlgorithm ParseStemAlgorithm(std::string_view name);

// Stem of `word` by cosine-thresholded prefix search. Words outside the
// store, or with no prefix clearing the threshold, are their own stem.
std::string DetectStem(std::string_view word, const EmbeddingStore& store,
                       const BuilderParams& params);

Trie BuildSameStemTrie(const std::string& seed, const EmbeddingStore& store,
                       const BuilderParams& params);

Trie BuildSemanticTrie(const std::string& seed, const EmbeddingStore& store,
                       const BuilderParams& params);

// One trie per seed in input order. Per-seed failures are logged to `log`
// (if given) and the seed is skipped.
TrieSet BuildCorpus(const std::vector<std::string>& seeds,
                    const EmbeddingStore& store, const BuilderParams& params,
                    TrieMethod method, std::ostream* log = nullptr);

// `seed<TAB>w1,w2,...` lines with sorted members.
void WriteTrieRecords(const TrieSet& set, std::ostream& out);
// Reads records written by WriteTrieRecords; method/params are not touched.
std::vector<SeededTrie> ReadTrieRecords(std::istream& in,
                                        const std::string& source = {});

// Directory layout: tries.tsv plus manifest.json (method and parameters).
void SaveTrieSet(const TrieSet& set, const std::string& dir);
TrieSet LoadTrieSet(const std::string& dir);

}  // namespace tsm
