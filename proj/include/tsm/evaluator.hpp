#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tsm/segmentation.hpp"

namespace tsm {

// Word -> alternative analyses, each a morpheme sequence. Used for both the
// gold standard and predictions.
struct Analyses {
  std::map<std::string, std::vector<std::vector<std::string>>> words;

  // Adds an alternative unless the word already has an identical one.
  void Add(const std::string& word, std::vector<std::string> analysis);
  std::size_t size() const { return words.size(); }
};

using GoldStandard = Analyses;

// `word<TAB>analysis1, analysis2, ...` with space-separated morphemes.
// Repeated words merge their alternatives. Throws InputError on malformed
// lines or an empty file.
Analyses LoadAnalyses(const std::string& path);
Analyses ParseAnalyses(std::istream& in, const std::string& source = {});

// Predictions from decoder output: one alternative per word.
Analyses FromSegmentations(const std::vector<std::string>& words,
                           const std::vector<Segmentation>& segs);

struct WordDiagnostic {
  std::string word;
  std::size_t precision_pairs = 0;
  std::size_t precision_hits = 0;
  std::size_t recall_pairs = 0;
  std::size_t recall_hits = 0;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  // False when no word had a sharing pair on that side; the value is then 0.
  bool precision_defined = false;
  bool recall_defined = false;
  std::size_t evaluated_words = 0;
  std::vector<WordDiagnostic> words;
};

// Pair-based scores over the words present in both inputs. Precision: for
// each word, the other words sharing a predicted morpheme form its pairs;
// a pair is correct if the two words share a morpheme under some gold
// alternative. Each word's hit rate is averaged over its pairs, and the
// precision is the mean over words having pairs. Recall swaps the roles.
// Throws InputError if the inputs share no words.
EvalReport Evaluate(const Analyses& predicted, const Analyses& gold);

// Aligned table plus `metric=value` lines, percentages to two decimals.
std::string RenderReport(const EvalReport& report, const std::string& label);

}  // namespace tsm
