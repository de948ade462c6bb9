#include "tsm/gibbs_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "tsm/errors.hpp"
#include "tsm/utf8.hpp"

namespace tsm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

void SamplerConfig::Validate() const {
  if (iterations < 1) throw ConfigError("iterations must be at least 1");
  if (min_stem_length < 1) throw ConfigError("min stem length must be >= 1");
  if (max_suffix_length && *max_suffix_length < 1) {
    throw ConfigError("max suffix length must be >= 1");
  }
}

BoundaryScorer MakeBoundaryScorer(const EmbeddingStore& store,
                                  const WordList& words,
                                  const ModelParams& params) {
  if (words.total() == 0) {
    throw InputError("presence prior needs a nonempty word list");
  }
  return [&store, &words, params](const BoundaryContext& ctx) {
    return LogBoundaryPrior(ctx, store, words, params);
  };
}

std::size_t BranchCountForSplit(std::string_view word, std::size_t split_chars,
                                const Trie& trie) {
  const auto offsets = utf8::Offsets(word);
  if (split_chars >= offsets.size()) {
    throw InvariantError("split position past the end of '" +
                         std::string(word) + "'");
  }
  auto n = trie.BranchCount(word.substr(0, offsets[split_chars]));
  if (!n) {
    throw InvariantError("prefix of '" + std::string(word) +
                         "' is not on its trie");
  }
  return *n;
}

CorpusState::CorpusState(std::shared_ptr<const TrieSet> tries)
    : tries_(std::move(tries)) {
  if (!tries_) throw InvariantError("corpus state needs a trie set");
  for (std::size_t t = 0; t < tries_->tries.size(); ++t) {
    for (auto& w : tries_->tries[t].trie.Words()) {
      auto [it, inserted] = index_.emplace(w, words_.size());
      if (inserted) {
        words_.push_back(w);
        residences_.push_back({});
        Segmentation seg;
        seg.morphemes.push_back(w);
        segmentations_.push_back(std::move(seg));
        lexicon_.Add(w);
      }
      residences_[it->second].push_back(t);
    }
  }
}

std::optional<std::size_t> CorpusState::IndexOf(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Trie& CorpusState::home_trie(std::size_t i) const {
  return tries_->tries[residences_[i].front()].trie;
}

void CorpusState::RemoveFromLexicon(std::size_t i) {
  for (const auto& m : segmentations_[i].morphemes) lexicon_.Remove(m);
}

void CorpusState::AddToLexicon(std::size_t i) {
  for (const auto& m : segmentations_[i].morphemes) lexicon_.Add(m);
}

void CorpusState::Assign(std::size_t i, std::vector<std::string> morphemes) {
  std::string joined;
  for (const auto& m : morphemes) {
    if (m.empty()) throw InvariantError("empty morpheme in segmentation");
    joined += m;
  }
  if (joined != words_[i]) {
    throw InvariantError("segmentation does not spell '" + words_[i] + "'");
  }
  RemoveFromLexicon(i);
  segmentations_[i].morphemes = std::move(morphemes);
  AddToLexicon(i);
}

Lexicon CorpusState::RebuildLexicon() const {
  Lexicon lex;
  for (const auto& seg : segmentations_) {
    for (const auto& m : seg.morphemes) lex.Add(m);
  }
  return lex;
}

GibbsSampler::GibbsSampler(CorpusState& state, ModelParams params,
                           SamplerConfig config, BoundaryScorer scorer)
    : state_(state),
      params_(std::move(params)),
      config_(config),
      scorer_(std::move(scorer)) {
  params_.Validate();
  config_.Validate();
  if (!scorer_) throw ConfigError("sampler needs a boundary scorer");
}

double GibbsSampler::LogBoundary(std::string_view word, std::size_t left_chars,
                                 std::size_t part_chars,
                                 const std::vector<std::size_t>& offsets,
                                 const Trie& trie) const {
  BoundaryContext ctx;
  ctx.prefix_form = std::string(word.substr(0, offsets[left_chars]));
  ctx.extended_form = std::string(word.substr(0, offsets[part_chars]));
  auto n = trie.BranchCount(ctx.prefix_form);
  if (!n) {
    throw InvariantError("prefix '" + ctx.prefix_form + "' is not on the trie");
  }
  ctx.branch_count = *n;
  return scorer_(ctx);
}

std::vector<SplitCandidate> GibbsSampler::Candidates(std::string_view word,
                                                     std::size_t part_chars,
                                                     const Trie& trie) const {
  const auto offsets = utf8::Offsets(word);
  const std::string_view part = word.substr(0, offsets[part_chars]);
  const Lexicon& lex = state_.lexicon();

  std::vector<SplitCandidate> out;
  out.push_back({0, LogCrpProb(part, lex, params_), 0.0});
  for (std::size_t left = config_.min_stem_length; left < part_chars; ++left) {
    const std::size_t right_len = part_chars - left;
    if (config_.max_suffix_length && right_len > *config_.max_suffix_length) {
      continue;
    }
    const std::string_view l = part.substr(0, offsets[left]);
    const std::string_view r = part.substr(offsets[left]);
    const double s = LogCrpProb(l, lex, params_) + LogCrpProb(r, lex, params_) +
                     LogBoundary(word, left, part_chars, offsets, trie);
    out.push_back({left, s, 0.0});
  }

  double top = kNegInf;
  for (const auto& c : out) top = std::max(top, c.log_score);
  if (top == kNegInf) {
    // Nothing is scoreable (alpha = 0 with unseen parts): keep it whole.
    out.front().probability = 1.0;
    return out;
  }
  double z = 0.0;
  for (auto& c : out) {
    c.probability = std::exp(c.log_score - top);
    z += c.probability;
  }
  for (auto& c : out) c.probability /= z;
  return out;
}

std::vector<std::string> GibbsSampler::SampleSegmentation(
    std::string_view word, const Trie& trie, Rng& rng) const {
  const auto offsets = utf8::Offsets(word);
  std::size_t part_chars = offsets.size() - 1;
  std::vector<std::string> suffixes;  // right parts, innermost last
  std::vector<double> weights;
  while (part_chars > config_.min_stem_length) {
    auto cands = Candidates(word, part_chars, trie);
    weights.clear();
    for (const auto& c : cands) weights.push_back(c.probability);
    const auto& pick = cands[rng.Categorical(weights)];
    if (pick.split == 0) break;
    suffixes.emplace_back(
        word.substr(offsets[pick.split], offsets[part_chars] - offsets[pick.split]));
    part_chars = pick.split;
  }
  std::vector<std::string> morphemes;
  morphemes.reserve(suffixes.size() + 1);
  morphemes.emplace_back(word.substr(0, offsets[part_chars]));
  morphemes.insert(morphemes.end(), suffixes.rbegin(), suffixes.rend());
  return morphemes;
}

void GibbsSampler::ResampleWord(std::size_t i, Rng& rng) {
  state_.RemoveFromLexicon(i);
  auto morphemes = SampleSegmentation(state_.word(i), state_.home_trie(i), rng);
  state_.segmentations_[i].morphemes = std::move(morphemes);
  state_.AddToLexicon(i);
}

SweepStats GibbsSampler::Sweep(Rng& rng) {
  const std::size_t n = state_.size();
  if (config_.uniform_draws) {
    for (std::size_t k = 0; k < n; ++k) ResampleWord(rng.Below(n), rng);
  } else {
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = k;
    rng.Shuffle(order);
    for (std::size_t i : order) ResampleWord(i, rng);
  }
  SweepStats stats;
  stats.sweep = ++sweeps_done_;
  stats.log_posterior = LogPosterior();
  stats.lexicon_size = state_.lexicon().size();
  if (config_.keep_best &&
      (!best_ || stats.log_posterior > best_log_posterior_)) {
    best_ = state_.segmentations_;
    best_log_posterior_ = stats.log_posterior;
  }
  return stats;
}

void GibbsSampler::Run(const SweepCallback& on_sweep) {
  Rng rng(config_.rng_seed);
  for (std::size_t it = 0; it < config_.iterations; ++it) {
    const auto stats = Sweep(rng);
    if (on_sweep) on_sweep(stats);
  }
}

double GibbsSampler::LogPosterior() const {
  double lp = LogCrpJoint(state_.lexicon(), params_);
  for (std::size_t i = 0; i < state_.size(); ++i) {
    const auto& word = state_.word(i);
    const auto& ms = state_.segmentation(i).morphemes;
    if (ms.size() < 2) continue;
    const auto offsets = utf8::Offsets(word);
    std::size_t chars = utf8::Length(ms[0]);
    for (std::size_t j = 1; j < ms.size(); ++j) {
      const std::size_t next = chars + utf8::Length(ms[j]);
      lp += LogBoundary(word, chars, next, offsets, state_.home_trie(i));
      chars = next;
    }
  }
  return lp;
}

std::vector<std::vector<Segmentation>> GibbsSampler::LearnedSegmentations(
    Rng& rng) const {
  std::vector<std::vector<Segmentation>> out(state_.size());
  for (std::size_t i = 0; i < state_.size(); ++i) {
    out[i].push_back(state_.segmentation(i));
    const auto& homes = state_.residences(i);
    if (homes.size() < 2) continue;
    state_.RemoveFromLexicon(i);
    for (std::size_t h = 1; h < homes.size(); ++h) {
      Segmentation seg;
      seg.morphemes = SampleSegmentation(
          state_.word(i), state_.tries().tries[homes[h]].trie, rng);
      bool seen = false;
      for (const auto& s : out[i]) seen = seen || s.SameSplit(seg);
      if (!seen) out[i].push_back(std::move(seg));
    }
    state_.AddToLexicon(i);
  }
  return out;
}

void WriteSegmentations(const CorpusState& state,
                        const std::vector<std::vector<Segmentation>>& learned,
                        std::ostream& out) {
  std::vector<std::size_t> order(state.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return state.word(a) < state.word(b);
  });
  for (std::size_t i : order) {
    if (learned.empty()) {
      out << state.word(i) << '\t' << state.segmentation(i).Joined() << '\n';
      continue;
    }
    for (const auto& seg : learned[i]) {
      out << state.word(i) << '\t' << seg.Joined() << '\n';
    }
  }
}

std::map<std::string, std::vector<Segmentation>> ReadSegmentations(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open segmentations", path);
  std::map<std::string, std::vector<Segmentation>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw InputError("expected 'word<TAB>m1 m2 ...'", path, lineno);
    }
    std::string word = line.substr(0, tab);
    Segmentation seg = ParseJoined(line.substr(tab + 1));
    if (seg.morphemes.empty() || seg.Word() != word) {
      throw InputError("analysis does not spell '" + word + "'", path, lineno);
    }
    out[word].push_back(std::move(seg));
  }
  return out;
}

}  // namespace tsm
