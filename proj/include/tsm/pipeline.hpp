#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tsm/evaluator.hpp"
#include "tsm/gibbs_sampler.hpp"
#include "tsm/morpheme_model.hpp"
#include "tsm/segmenter.hpp"
#include "tsm/trie_builder.hpp"

namespace tsm {

inline constexpr const char* kVersion = "tsm 1.0.0";

struct RunConfig {
  std::string embeddings;
  std::string wordlist;
  std::string gold;
  std::string tries;  // trie set directory
  std::string model;  // trained model directory
  std::string out;

  TrieMethod method = TrieMethod::kSemantic;
  BuilderParams builder;
  ModelParams model_params;
  SamplerConfig sampler;
  DecodeConfig decode;
  // Decode-time alpha override (e.g. 0 for pure maximum likelihood).
  std::optional<double> decode_alpha;
};

// Words of a word list or plain word file, one per nonblank line, in file
// order (duplicates kept). The word is the last field on the line.
std::vector<std::string> ReadWordColumn(const std::string& path);

// Each stage validates its paths before doing work and writes a
// manifest.json (parameters, SHA-256 of inputs, seed, version) next to its
// outputs. Progress goes to `log`.

// out/: tries.tsv, manifest.json.
TrieSet BuildTriesStage(const RunConfig& cfg, std::ostream& log);

// out/: lexicon.txt, segmentations.txt, sweeps.log, manifest.json.
void TrainStage(const RunConfig& cfg, std::ostream& log);

// Segments the words of cfg.wordlist with the model in cfg.model; writes
// `word<TAB>m1 m2` lines to cfg.out after a `# strategy=...` header.
std::vector<Segmentation> SegmentStage(const RunConfig& cfg, std::ostream& log);

// Scores `predictions` against cfg.gold; writes the rendering to cfg.out
// when set. Returns the report.
EvalReport EvaluateStage(const RunConfig& cfg, const std::string& predictions,
                         std::ostream& log);

// Build tries, train, segment the gold words with both strategies, evaluate
// both, all under cfg.out.
void PipelineStage(const RunConfig& cfg, std::ostream& log);

}  // namespace tsm
