#include "tsm/trie_builder.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "tsm/errors.hpp"
#include "tsm/utf8.hpp"

namespace tsm {
namespace {

using nlohmann::json;

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string WalkStem(std::string_view word, const EmbeddingStore& store,
                     const BuilderParams& p) {
  const auto offsets = utf8::Offsets(word);
  const std::size_t len = offsets.size() - 1;
  std::string_view anchor = word;
  // Each prefix that clears the threshold against the current anchor becomes
  // the next anchor; the last one found is the leftmost segmentation point.
  for (std::size_t n = len - 1; n >= p.min_stem_length && n >= 1; --n) {
    std::string_view prefix = word.substr(0, offsets[n]);
    auto c = store.TryCosine(anchor, prefix);
    if (c && *c > p.cosine_threshold) anchor = prefix;
  }
  return std::string(anchor);
}

std::string ShortestStem(std::string_view word, const EmbeddingStore& store,
                         const BuilderParams& p) {
  const auto offsets = utf8::Offsets(word);
  const std::size_t len = offsets.size() - 1;
  for (std::size_t n = std::max<std::size_t>(p.min_stem_length, 1); n < len;
       ++n) {
    std::string_view prefix = word.substr(0, offsets[n]);
    auto c = store.TryCosine(word, prefix);
    if (c && *c > p.cosine_threshold) return std::string(prefix);
  }
  return std::string(word);
}

}  // namespace

void BuilderParams::Validate() const {
  if (!(cosine_threshold >= 0.0 && cosine_threshold <= 1.0)) {
    throw ConfigError("cosine threshold must lie in [0, 1]");
  }
  if (neighbor_k < 1) throw ConfigError("neighbor count must be at least 1");
  if (max_expansion_words < 1) {
    throw ConfigError("max expansion words must be at least 1");
  }
  if (min_stem_length < 1) throw ConfigError("min stem length must be >= 1");
}

std::size_t TrieSet::TotalWords() const {
  std::size_t n = 0;
  for (const auto& t : tries) n += t.trie.word_count();
  return n;
}

std::size_t TrieSet::DistinctWords() const {
  std::unordered_set<std::string> seen;
  for (const auto& t : tries) {
    for (auto& w : t.trie.Words()) seen.insert(std::move(w));
  }
  return seen.size();
}

std::string ToString(TrieMethod method) {
  return method == TrieMethod::kSameStem ? "same-stem" : "semantic";
}

TrieMethod ParseTrieMethod(std::string_view name) {
  if (name == "same-stem") return TrieMethod::kSameStem;
  if (name == "semantic") return TrieMethod::kSemantic;
  throw ConfigError("unknown trie method '" + std::string(name) + "'");
}

std::string ToString(StemAlgorithm algo) {
  return algo == StemAlgorithm::kPrefixWalk ? "walk" : "shortest";
}

StemAlgorithm ParseStemAlgorithm(std::string_view name) {
  if (name == "walk") return StemAlgorithm::kPrefixWalk;
  if (name == "shortest") return StemAlgorithm::kShortest;
  throw ConfigError("unknown stem algorithm '" + std::string(name) + "'");
}

std::string DetectStem(std::string_view word, const EmbeddingStore& store,
                       const BuilderParams& params) {
  if (word.empty()) throw InputError("cannot detect the stem of an empty word");
  if (!store.Contains(word)) return std::string(word);
  return params.stem_algorithm == StemAlgorithm::kPrefixWalk
             ? WalkStem(word, store, params)
             : ShortestStem(word, store, params);
}

Trie BuildSameStemTrie(const std::string& seed, const EmbeddingStore& store,
                       const BuilderParams& params) {
  Trie trie;
  trie.Insert(seed);
  if (!store.Contains(seed)) return trie;

  const std::string stem = DetectStem(seed, store, params);
  std::unordered_map<std::string, std::string> stem_cache{{seed, stem}};
  auto stem_of = [&](const std::string& w) -> const std::string& {
    auto it = stem_cache.find(w);
    if (it == stem_cache.end()) {
      it = stem_cache.emplace(w, DetectStem(w, store, params)).first;
    }
    return it->second;
  };

  std::deque<std::string> queue{seed};
  auto expand = [&](const std::string& from) {
    std::vector<std::string> accepted;
    for (const auto& n : store.NearestNeighbors(from, params.neighbor_k)) {
      if (trie.ContainsWord(n.word) || !StartsWith(n.word, stem)) continue;
      if (stem_of(n.word) == stem) accepted.push_back(n.word);
    }
    std::sort(accepted.begin(), accepted.end());
    for (auto& w : accepted) {
      if (trie.word_count() >= params.max_expansion_words) return;
      trie.Insert(w);
      queue.push_back(std::move(w));
    }
  };

  expand(store.Contains(stem) ? stem : seed);
  if (params.neighbor_source == NeighborSource::kStemOnly) return trie;
  while (!queue.empty() && trie.word_count() < params.max_expansion_words) {
    const std::string w = std::move(queue.front());
    queue.pop_front();
    expand(w);
  }
  return trie;
}

Trie BuildSemanticTrie(const std::string& seed, const EmbeddingStore& store,
                       const BuilderParams& params) {
  Trie trie;
  trie.Insert(seed);
  if (!store.Contains(seed)) return trie;
  for (const auto& n : store.NearestNeighbors(seed, params.neighbor_k)) {
    trie.Insert(n.word);
  }
  return trie;
}

TrieSet BuildCorpus(const std::vector<std::string>& seeds,
                    const EmbeddingStore& store, const BuilderParams& params,
                    TrieMethod method, std::ostream* log) {
  params.Validate();
  if (seeds.empty()) throw InputError("no seed words to build tries from");

  TrieSet set;
  set.method = method;
  set.params = params;
  set.tries.reserve(seeds.size());
  for (const auto& seed : seeds) {
    try {
      Trie trie = method == TrieMethod::kSameStem
                      ? BuildSameStemTrie(seed, store, params)
                      : BuildSemanticTrie(seed, store, params);
      set.tries.push_back({seed, std::move(trie)});
    } catch (const std::exception& e) {
      if (log) *log << "skipping seed '" << seed << "': " << e.what() << "\n";
    }
  }
  if (log) {
    *log << "built " << set.tries.size() << " " << ToString(method)
         << " tries: " << set.TotalWords() << " word tokens, "
         << set.DistinctWords() << " word types\n";
  }
  return set;
}

void WriteTrieRecords(const TrieSet& set, std::ostream& out) {
  for (const auto& t : set.tries) {
    out << t.seed << '\t';
    const auto words = t.trie.Words();
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) out << ',';
      out << words[i];
    }
    out << '\n';
  }
}

std::vector<SeededTrie> ReadTrieRecords(std::istream& in,
                                        const std::string& source) {
  std::vector<SeededTrie> tries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw InputError("expected 'seed<TAB>word,word,...'", source, lineno);
    }
    SeededTrie t{line.substr(0, tab), Trie()};
    std::string_view members(line);
    members.remove_prefix(tab + 1);
    while (!members.empty()) {
      auto comma = members.find(',');
      std::string_view w = members.substr(0, comma);
      if (w.empty()) throw InputError("empty trie member", source, lineno);
      t.trie.Insert(w);
      if (comma == std::string_view::npos) break;
      members.remove_prefix(comma + 1);
    }
    tries.push_back(std::move(t));
  }
  return tries;
}

void SaveTrieSet(const TrieSet& set, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out(fs::path(dir) / "tries.tsv", std::ios::binary);
    if (!out) throw InputError("cannot write tries", dir);
    WriteTrieRecords(set, out);
  }
  json manifest = {
      {"format", "tsm-tries/1"},
      {"method", ToString(set.method)},
      {"threshold", set.params.cosine_threshold},
      {"neighbors", set.params.neighbor_k},
      {"max_expansion_words", set.params.max_expansion_words},
      {"min_stem_length", set.params.min_stem_length},
      {"stem_algorithm", ToString(set.params.stem_algorithm)},
      {"neighbor_source",
       set.params.neighbor_source == NeighborSource::kStemOnly ? "stem"
                                                               : "each"},
      {"tries", set.tries.size()},
      {"word_tokens", set.TotalWords()},
      {"word_types", set.DistinctWords()},
  };
  std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

TrieSet LoadTrieSet(const std::string& dir) {
  namespace fs = std::filesystem;
  const auto records = (fs::path(dir) / "tries.tsv").string();
  const auto manifest_path = (fs::path(dir) / "manifest.json").string();
  std::ifstream in(records);
  if (!in) throw InputError("cannot open tries file", records);
  std::ifstream min(manifest_path);
  if (!min) throw InputError("cannot open tries manifest", manifest_path);

  TrieSet set;
  try {
    json m = json::parse(min);
    set.method = ParseTrieMethod(m.at("method").get<std::string>());
    set.params.cosine_threshold = m.at("threshold").get<double>();
    set.params.neighbor_k = m.at("neighbors").get<std::size_t>();
    set.params.max_expansion_words =
        m.at("max_expansion_words").get<std::size_t>();
    set.params.min_stem_length = m.at("min_stem_length").get<std::size_t>();
    set.params.stem_algorithm =
        ParseStemAlgorithm(m.at("stem_algorithm").get<std::string>());
    set.params.neighbor_source = m.at("neighbor_source") == "stem"
                                     ? NeighborSource::kStemOnly
                                     : NeighborSource::kEachInsertedWord;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad tries manifest: ") + e.what(),
                     manifest_path);
  } catch (const ConfigError& e) {
    throw InputError(e.what(), manifest_path);
  }
  set.tries = ReadTrieRecords(in, records);
  if (set.tries.empty()) throw InputError("tries file is empty", records);
  return set;
}

}  // namespace tsm
