#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsm/embedding_store.hpp"
#include "tsm/word_list.hpp"

namespace tsm {

struct ModelParams {
  double alpha = 1.0;            // DP concentration
  std::optional<double> gamma;   // geometric base parameter; unset -> 1/L
  double lambda = 4.0;           // Poisson rate of trie branching
  std::size_t alphabet_size = 0; // L
  double semantic_floor = 1e-4;
  double presence_floor = 1e-6;

  double Gamma() const;
  // Throws ConfigError.
  void Validate() const;
};

// Number of distinct code points across `words`.
std::size_t CountAlphabet(const std::vector<std::string>& words);

// CRP seating state: token count per morpheme type plus the total N.
class Lexicon {
 public:
  void Add(const std::string& morpheme, std::int64_t times = 1);
  // Throws InvariantError if the morpheme is not present.
  void Remove(const std::string& morpheme);

  std::int64_t Count(std::string_view morpheme) const;
  std::int64_t total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const std::unordered_map<std::string, std::int64_t>& counts() const {
    return counts_;
  }
  // Entries ordered by morpheme.
  std::vector<std::pair<std::string, std::int64_t>> Sorted() const;

  bool operator==(const Lexicon& other) const {
    return total_ == other.total_ && counts_ == other.counts_;
  }

 private:
  std::unordered_map<std::string, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

// The boundary between m1+..+mj and m1+..+mj+1, and the trie branching there.
struct BoundaryContext {
  std::string prefix_form;
  std::string extended_form;
  std::size_t branch_count = 0;
};

// H(m) = gamma^(|m|+1), |m| in characters. Improper over all strings; only
// ever compared within finite candidate sets.
double LogBaseProb(std::string_view morpheme, const ModelParams& p);
double BaseProb(std::string_view morpheme, const ModelParams& p);

// (n_m + alpha H(m)) / (N + alpha).
double LogCrpProb(std::string_view morpheme, const Lexicon& lex,
                  const ModelParams& p);
double CrpProb(std::string_view morpheme, const Lexicon& lex,
               const ModelParams& p);

double LogPoissonBranchProb(std::size_t k, const ModelParams& p);
double PoissonBranchProb(std::size_t k, const ModelParams& p);

// Cosine of the two forms' vectors clamped to [semantic_floor, 1]; the floor
// when either form is out of vocabulary.
double SemanticPrior(const BoundaryContext& ctx, const EmbeddingStore& store,
                     const ModelParams& p);

// Relative frequency of the prefix form, presence_floor when absent.
// Throws InputError for an empty word list.
double PresencePrior(std::string_view prefix_form, const WordList& words,
                     const ModelParams& p);

// Branch * semantic * presence.
double LogBoundaryPrior(const BoundaryContext& ctx, const EmbeddingStore& store,
                        const WordList& words, const ModelParams& p);
double BoundaryPrior(const BoundaryContext& ctx, const EmbeddingStore& store,
                     const WordList& words, const ModelParams& p);

// Unigram product of CRP probabilities, all against the same lexicon.
double LogWordLikelihood(const std::vector<std::string>& morphemes,
                         const Lexicon& lex, const ModelParams& p);
double WordLikelihood(const std::vector<std::string>& morphemes,
                      const Lexicon& lex, const ModelParams& p);

// Exchangeable CRP probability of the lexicon's whole token multiset:
//   K log a + sum_k [log H(k) + lgamma(n_k)] + lgamma(a) - lgamma(N + a)
double LogCrpJoint(const Lexicon& lex, const ModelParams& p);

// log(exp(a) + exp(b)) without overflow.
double LogAdd(double a, double b);

// Trained model file: `#key=value` header lines then `count<TAB>morpheme`
// rows sorted by morpheme.
struct LexiconFile {
  Lexicon lexicon;
  ModelParams params;
  std::map<std::string, std::string> metadata;
};

void SaveLexicon(const LexiconFile& file, const std::string& path);
LexiconFile LoadLexicon(const std::string& path);

}  // namespace tsm
