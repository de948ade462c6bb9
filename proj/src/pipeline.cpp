#include "tsm/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tsm/digest.hpp"
#include "tsm/errors.hpp"
#include "tsm/text.hpp"
#include "tsm/word_list.hpp"

namespace tsm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

const std::string& Require(const std::string& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string("missing ") + flag);
  return path;
}

void RequireFile(const std::string& path, const char* flag) {
  Require(path, flag);
  if (!fs::is_regular_file(path)) {
    throw InputError(std::string("not a readable file (") + flag + ")", path);
  }
}

void RequireDir(const std::string& path, const char* flag) {
  Require(path, flag);
  if (!fs::is_directory(path)) {
    throw InputError(std::string("not a directory (") + flag + ")", path);
  }
}

json ParamsJson(const RunConfig& cfg) {
  json j;
  j["method"] = ToString(cfg.method);
  j["threshold"] = cfg.builder.cosine_threshold;
  j["neighbors"] = cfg.builder.neighbor_k;
  j["max_expansion_words"] = cfg.builder.max_expansion_words;
  j["stem_min_length"] = cfg.builder.min_stem_length;
  j["stem_algo"] = ToString(cfg.builder.stem_algorithm);
  j["alpha"] = cfg.model_params.alpha;
  j["lambda"] = cfg.model_params.lambda;
  j["gamma"] = cfg.model_params.gamma ? json(*cfg.model_params.gamma)
                                      : json("1/L");
  j["alphabet_size"] = cfg.model_params.alphabet_size;
  j["semantic_floor"] = cfg.model_params.semantic_floor;
  j["presence_floor"] = cfg.model_params.presence_floor;
  j["min_stem"] = cfg.sampler.min_stem_length;
  j["iterations"] = cfg.sampler.iterations;
  j["seed"] = cfg.sampler.rng_seed;
  j["strategy"] = ToString(cfg.decode.strategy);
  j["min_morph_freq"] = cfg.decode.min_morpheme_freq;
  if (cfg.decode_alpha) j["decode_alpha"] = *cfg.decode_alpha;
  return j;
}

void WriteManifest(const std::string& path, const std::string& stage,
                   const RunConfig& cfg,
                   const std::vector<std::pair<std::string, std::string>>& inputs,
                   const json& extra = json::object()) {
  json m;
  m["version"] = kVersion;
  m["stage"] = stage;
  m["parameters"] = ParamsJson(cfg);
  json in = json::object();
  for (const auto& [name, file] : inputs) {
    in[name] = {{"path", file}, {"sha256", Sha256File(file)}};
  }
  m["inputs"] = in;
  for (const auto& [k, v] : extra.items()) m[k] = v;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write manifest", path);
  out << m.dump(2) << '\n';
}

std::ofstream OpenOut(const std::string& path) {
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write output", path);
  return out;
}

}  // namespace

std::vector<std::string> ReadWordColumn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open word file", path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string field, last;
    while (fields >> field) last = field;
    if (!last.empty()) words.push_back(last);
  }
  return words;
}

TrieSet BuildTriesStage(const RunConfig& cfg, std::ostream& log) {
  RequireFile(cfg.embeddings, "--embeddings");
  RequireFile(cfg.wordlist, "--wordlist");
  Require(cfg.out, "--out");
  cfg.builder.Validate();

  const auto store = LoadEmbeddings(cfg.embeddings);
  const auto words = LoadWordList(cfg.wordlist);
  if (words.empty()) throw InputError("word list is empty", cfg.wordlist);
  log << "loaded " << store.size() << " vectors (dim " << store.dimension()
      << "), " << words.size() << " seed words\n";

  TrieSet set = BuildCorpus(words.words(), store, cfg.builder, cfg.method, &log);
  SaveTrieSet(set, cfg.out);
  WriteManifest(Join(cfg.out, "run.json"), "build-tries", cfg,
                {{"embeddings", cfg.embeddings}, {"wordlist", cfg.wordlist}},
                {{"word_types", set.DistinctWords()},
                 {"word_tokens", set.TotalWords()}});
  log << "wrote " << Join(cfg.out, "tries.tsv") << "\n";
  return set;
}

void TrainStage(const RunConfig& cfg, std::ostream& log) {
  RequireDir(cfg.tries, "--tries");
  RequireFile(cfg.wordlist, "--wordlist");
  RequireFile(cfg.embeddings, "--embeddings");
  Require(cfg.out, "--out");
  cfg.sampler.Validate();

  auto tries = std::make_shared<const TrieSet>(LoadTrieSet(cfg.tries));
  const auto words = LoadWordList(cfg.wordlist);
  if (words.total() == 0) {
    throw InputError("word list has zero total frequency", cfg.wordlist);
  }
  const auto store = LoadEmbeddings(cfg.embeddings);

  CorpusState state(tries);
  ModelParams params = cfg.model_params;
  if (params.alphabet_size == 0) params.alphabet_size = CountAlphabet(state.words());
  params.Validate();
  log << "training on " << state.size() << " word types from "
      << tries->tries.size() << " tries, L=" << params.alphabet_size
      << " gamma=" << params.Gamma() << "\n";

  GibbsSampler sampler(state, params, cfg.sampler,
                       MakeBoundaryScorer(store, words, params));
  fs::create_directories(cfg.out);
  auto sweep_log = OpenOut(Join(cfg.out, "sweeps.log"));
  Rng rng(cfg.sampler.rng_seed);
  for (std::size_t it = 0; it < cfg.sampler.iterations; ++it) {
    const auto stats = sampler.Sweep(rng);
    sweep_log << stats.sweep << '\t' << FormatDouble(stats.log_posterior) << '\t'
              << stats.lexicon_size << '\n';
    if (state.RebuildLexicon() != state.lexicon()) {
      throw InvariantError("lexicon drifted from segmentations after sweep " +
                           std::to_string(stats.sweep));
    }
  }
  const auto learned = sampler.LearnedSegmentations(rng);

  LexiconFile file{state.lexicon(), params, {}};
  file.metadata["version"] = kVersion;
  file.metadata["trie_method"] = ToString(tries->method);
  file.metadata["iterations"] = std::to_string(cfg.sampler.iterations);
  file.metadata["seed"] = std::to_string(cfg.sampler.rng_seed);
  file.metadata["min_stem"] = std::to_string(cfg.sampler.min_stem_length);
  file.metadata["training_words"] = std::to_string(state.size());
  SaveLexicon(file, Join(cfg.out, "lexicon.txt"));
  {
    auto seg_out = OpenOut(Join(cfg.out, "segmentations.txt"));
    WriteSegmentations(state, learned, seg_out);
  }
  WriteManifest(Join(cfg.out, "manifest.json"), "train", cfg,
                {{"tries", Join(cfg.tries, "tries.tsv")},
                 {"tries_manifest", Join(cfg.tries, "manifest.json")},
                 {"wordlist", cfg.wordlist},
                 {"embeddings", cfg.embeddings}},
                {{"lexicon_types", state.lexicon().size()},
                 {"lexicon_tokens", state.lexicon().total()}});
  log << "lexicon: " << state.lexicon().size() << " morpheme types, "
      << state.lexicon().total() << " tokens\n";
}

std::vector<Segmentation> SegmentStage(const RunConfig& cfg, std::ostream& log) {
  RequireDir(cfg.model, "--model");
  RequireFile(cfg.wordlist, "--wordlist");
  Require(cfg.out, "--out");
  const std::string lexicon_path = Join(cfg.model, "lexicon.txt");
  const std::string learned_path = Join(cfg.model, "segmentations.txt");
  RequireFile(lexicon_path, "--model");

  auto model = LoadLexicon(lexicon_path);
  if (cfg.decode_alpha) model.params.alpha = *cfg.decode_alpha;
  model.params.Validate();
  LearnedAnalyses learned;
  if (cfg.decode.strategy == DecodeStrategy::kLearnedOnly) {
    RequireFile(learned_path, "--model");
    learned = ReadSegmentations(learned_path);
  }
  const Lexicon lex = FilterLexicon(model.lexicon, cfg.decode);
  const auto words = ReadWordColumn(cfg.wordlist);
  log << "segmenting " << words.size() << " words with strategy "
      << ToString(cfg.decode.strategy) << ", " << lex.size() << " of "
      << model.lexicon.size() << " morphemes kept\n";

  auto segs = SegmentBatch(words, learned, lex, model.params, cfg.decode);
  {
    auto out = OpenOut(cfg.out);
    out << "# strategy=" << ToString(cfg.decode.strategy)
        << " min_morph_freq=" << cfg.decode.min_morpheme_freq << '\n';
    for (std::size_t i = 0; i < words.size(); ++i) {
      out << words[i] << '\t' << segs[i].Joined() << '\n';
    }
  }
  std::vector<std::pair<std::string, std::string>> inputs{
      {"lexicon", lexicon_path}, {"wordlist", cfg.wordlist}};
  if (cfg.decode.strategy == DecodeStrategy::kLearnedOnly) {
    inputs.emplace_back("learned", learned_path);
  }
  WriteManifest(cfg.out + ".manifest.json", "segment", cfg, inputs);
  return segs;
}

EvalReport EvaluateStage(const RunConfig& cfg, const std::string& predictions,
                         std::ostream& log) {
  RequireFile(predictions, "predictions");
  RequireFile(cfg.gold, "--gold");

  const auto pred = LoadAnalyses(predictions);
  const auto gold = LoadAnalyses(cfg.gold);
  const auto report = Evaluate(pred, gold);
  const std::string label = fs::path(predictions).filename().string();
  const std::string text = RenderReport(report, label);
  if (cfg.out.empty()) {
    log << text;
  } else {
    auto out = OpenOut(cfg.out);
    out << text;
    WriteManifest(cfg.out + ".manifest.json", "evaluate", cfg,
                  {{"predictions", predictions}, {"gold", cfg.gold}});
  }
  return report;
}

void PipelineStage(const RunConfig& cfg, std::ostream& log) {
  RequireFile(cfg.embeddings, "--embeddings");
  RequireFile(cfg.wordlist, "--wordlist");
  RequireFile(cfg.gold, "--gold");
  Require(cfg.out, "--out");
  cfg.builder.Validate();
  cfg.sampler.Validate();
  fs::create_directories(cfg.out);

  RunConfig stage = cfg;
  stage.out = Join(cfg.out, "tries");
  log << "[1/4] build-tries\n";
  BuildTriesStage(stage, log);

  stage.tries = stage.out;
  stage.out = Join(cfg.out, "model");
  log << "[2/4] train\n";
  TrainStage(stage, log);

  // The evaluation words are the gold words.
  const std::string eval_words = Join(cfg.out, "eval_words.txt");
  {
    auto out = OpenOut(eval_words);
    for (const auto& [w, _] : LoadAnalyses(cfg.gold).words) out << w << '\n';
  }

  json results = json::object();
  for (auto strategy : {DecodeStrategy::kLearnedOnly, DecodeStrategy::kAllSplits}) {
    const std::string tag = ToString(strategy);
    RunConfig seg = cfg;
    seg.model = stage.out;
    seg.wordlist = eval_words;
    seg.decode.strategy = strategy;
    seg.out = Join(cfg.out, "segmentation." + tag + ".txt");
    log << "[3/4] segment (" << tag << ")\n";
    SegmentStage(seg, log);

    RunConfig ev = cfg;
    ev.out = Join(cfg.out, "report." + tag + ".txt");
    log << "[4/4] evaluate (" << tag << ")\n";
    const auto report = EvaluateStage(ev, seg.out, log);
    log << RenderReport(report, tag);
    results[tag] = {{"precision", report.precision},
                    {"recall", report.recall},
                    {"f_measure", report.f_measure}};
  }
  WriteManifest(Join(cfg.out, "manifest.json"), "pipeline", cfg,
                {{"embeddings", cfg.embeddings},
                 {"wordlist", cfg.wordlist},
                 {"gold", cfg.gold}},
                {{"results", results}});
}

}  // namespace tsm
