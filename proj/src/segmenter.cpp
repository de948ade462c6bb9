#include "tsm/segmenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsm/errors.hpp"
#include "tsm/utf8.hpp"

namespace tsm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Best analysis of a prefix: score, then the morpheme lengths (characters)
// for the tie-break.
struct Cell {
  bool reachable = false;
  double score = kNegInf;
  std::vector<std::size_t> lengths;
  std::size_t back = 0;  // start of the last morpheme
};

// a before b: higher score, fewer morphemes, then lexicographically longer
// morpheme lengths from the left.
// Scores within a relative 1e-12 count as tied, so summation order cannot
// decide between mathematically equal analyses.
bool Prefer(double sa, const std::vector<std::size_t>& la, double sb,
            const std::vector<std::size_t>& lb) {
  if (std::isinf(sa) || std::isinf(sb)) {
    if (sa != sb) return sa > sb;
  }
  const double scale = std::max({1.0, std::abs(sa), std::abs(sb)});
  if (std::abs(sa - sb) > 1e-12 * scale) return sa > sb;
  if (la.size() != lb.size()) return la.size() < lb.size();
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i] != lb[i]) return la[i] > lb[i];
  }
  return false;
}

std::vector<std::size_t> Lengths(const Segmentation& s) {
  std::vector<std::size_t> out;
  for (const auto& m : s.morphemes) out.push_back(utf8::Length(m));
  return out;
}

}  // namespace

std::string ToString(DecodeStrategy s) {
  return s == DecodeStrategy::kLearnedOnly ? "learned" : "all";
}

DecodeStrategy ParseDecodeStrategy(std::string_view name) {
  if (name == "learned") return DecodeStrategy::kLearnedOnly;
  if (name == "all") return DecodeStrategy::kAllSplits;
  throw ConfigError("unknown strategy '" + std::string(name) + "'");
}

bool BetterSegmentation(const Segmentation& a, const Segmentation& b) {
  return Prefer(a.score, Lengths(a), b.score, Lengths(b));
}

Lexicon FilterLexicon(const Lexicon& lex, const DecodeConfig& cfg) {
  Lexicon out;
  for (const auto& [m, n] : lex.Sorted()) {
    if (n >= static_cast<std::int64_t>(cfg.min_morpheme_freq)) out.Add(m, n);
  }
  return out;
}

Segmentation SegmentAllSplits(std::string_view word, const Lexicon& lex,
                              const ModelParams& params,
                              const DecodeConfig& cfg) {
  if (word.empty()) throw InputError("cannot segment an empty word");
  const auto offsets = utf8::Offsets(word);
  const std::size_t n = offsets.size() - 1;
  const std::size_t max_parts =
      cfg.max_morphemes ? std::max<std::size_t>(*cfg.max_morphemes, 1) : n;

  // table[c][j]: best analysis of the first j characters using c+1
  // morphemes. Without a cap only the best over all counts is needed, so a
  // single layer holds it.
  const bool layered = cfg.max_morphemes.has_value();
  const std::size_t layers = layered ? std::min(max_parts, n) : 1;
  std::vector<std::vector<Cell>> table(layers, std::vector<Cell>(n + 1));

  auto piece = [&](std::size_t i, std::size_t j) {
    return LogCrpProb(word.substr(offsets[i], offsets[j] - offsets[i]), lex,
                      params);
  };

  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t c = 0; c < layers; ++c) {
      Cell& cell = table[c][j];
      for (std::size_t i = 0; i < j; ++i) {
        const Cell* prev = nullptr;
        if (i > 0) {
          prev = layered ? (c > 0 ? &table[c - 1][i] : nullptr) : &table[0][i];
          if (!prev || !prev->reachable) continue;
        } else if (layered && c > 0) {
          continue;
        }
        const double s = (prev ? prev->score : 0.0) + piece(i, j);
        std::vector<std::size_t> lengths = prev ? prev->lengths
                                                : std::vector<std::size_t>{};
        lengths.push_back(j - i);
        if (!cell.reachable || Prefer(s, lengths, cell.score, cell.lengths)) {
          cell.reachable = true;
          cell.score = s;
          cell.lengths = std::move(lengths);
          cell.back = i;
        }
      }
    }
  }

  const Cell* best = nullptr;
  for (std::size_t c = 0; c < layers; ++c) {
    const Cell& cell = table[c][n];
    if (cell.reachable &&
        (!best || Prefer(cell.score, cell.lengths, best->score, best->lengths))) {
      best = &cell;
    }
  }

  Segmentation seg;
  seg.score = best->score;
  std::size_t pos = 0;
  for (std::size_t len : best->lengths) {
    seg.morphemes.emplace_back(
        word.substr(offsets[pos], offsets[pos + len] - offsets[pos]));
    pos += len;
  }
  return seg;
}

Segmentation SegmentLearnedOnly(std::string_view word,
                                const LearnedAnalyses& learned,
                                const Lexicon& lex, const ModelParams& params,
                                const DecodeConfig& cfg) {
  auto it = learned.find(std::string(word));
  if (it == learned.end() || it->second.empty()) {
    return SegmentAllSplits(word, lex, params, cfg);
  }
  std::optional<Segmentation> best;
  for (const auto& cand : it->second) {
    if (cfg.max_morphemes && cand.morphemes.size() > *cfg.max_morphemes) {
      continue;
    }
    Segmentation s;
    s.morphemes = cand.morphemes;
    s.score = LogWordLikelihood(s.morphemes, lex, params);
    if (!best || BetterSegmentation(s, *best)) best = std::move(s);
  }
  if (!best) return SegmentAllSplits(word, lex, params, cfg);
  return *best;
}

std::vector<Segmentation> SegmentBatch(const std::vector<std::string>& words,
                                       const LearnedAnalyses& learned,
                                       const Lexicon& lex,
                                       const ModelParams& params,
                                       const DecodeConfig& cfg) {
  std::vector<Segmentation> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    out.push_back(cfg.strategy == DecodeStrategy::kLearnedOnly
                      ? SegmentLearnedOnly(w, learned, lex, params, cfg)
                      : SegmentAllSplits(w, lex, params, cfg));
  }
  return out;
}

}  // namespace tsm
