#pragma once

#include <string>
#include <vector>

namespace tsm {

// An ordered split of a word into nonempty morphemes, with its log score.
struct Segmentation {
  std::vector<std::string> morphemes;
  double score = 0.0;

  // Concatenation of the morphemes.
  std::string Word() const;
  // Morphemes joined by single spaces.
  std::string Joined() const;

  // Compares morphemes only; score is derived data.
  bool SameSplit(const Segmentation& other) const {
    return morphemes == other.morphemes;
  }
};

// Splits on single spaces; the inverse of Joined().
Segmentation ParseJoined(const std::string& joined);

}  // namespace tsm
