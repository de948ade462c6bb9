// Command-line driver: build-tries, train, segment, evaluate, pipeline.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tsm/errors.hpp"
#include "tsm/pipeline.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadConfig = 2,
  kBadInput = 3,
  kInvariant = 4,
};

struct Flags {
  tsm::RunConfig cfg;
  std::string method = "semantic";
  std::string strategy = "all";
  std::string stem_algo = "walk";
  double gamma = 0.0;
  double alpha = 1.0;
  std::string predictions;
};

void AddPaths(CLI::App* cmd, Flags& f, bool embeddings, bool wordlist,
              bool gold, bool tries, bool model) {
  if (embeddings) cmd->add_option("--embeddings", f.cfg.embeddings, "word2vec text file");
  if (wordlist) cmd->add_option("--wordlist", f.cfg.wordlist, "frequency<TAB>word lines (or bare words)");
  if (gold) cmd->add_option("--gold", f.cfg.gold, "gold analyses: word<TAB>m1 m2, alt ...");
  if (tries) cmd->add_option("--tries", f.cfg.tries, "trie set directory");
  if (model) cmd->add_option("--model", f.cfg.model, "trained model directory");
  cmd->add_option("--out", f.cfg.out, "output path");
}

void AddBuilder(CLI::App* cmd, Flags& f) {
  cmd->add_option("--method", f.method, "same-stem|semantic")
      ->check(CLI::IsMember({"same-stem", "semantic"}));
  cmd->add_option("--threshold", f.cfg.builder.cosine_threshold, "stem cosine threshold");
  cmd->add_option("--neighbors", f.cfg.builder.neighbor_k, "nearest neighbors per query");
  cmd->add_option("--stem-algo", f.stem_algo, "walk|shortest")
      ->check(CLI::IsMember({"walk", "shortest"}));
}

void AddModel(CLI::App* cmd, Flags& f) {
  cmd->add_option("--alpha", f.alpha, "DP concentration");
  cmd->add_option("--lambda", f.cfg.model_params.lambda, "Poisson rate of branching");
  cmd->add_option("--gamma", f.gamma, "geometric base parameter")->default_str("1/L");
  cmd->add_option("--alphabet-size", f.cfg.model_params.alphabet_size,
                  "L (0: distinct characters of the training words)");
  cmd->add_option("--min-stem", f.cfg.sampler.min_stem_length, "minimum stem length");
  cmd->add_option("--iterations", f.cfg.sampler.iterations, "Gibbs sweeps");
  cmd->add_option("--seed", f.cfg.sampler.rng_seed, "random seed");
}

void AddDecode(CLI::App* cmd, Flags& f, bool with_alpha) {
  cmd->add_option("--strategy", f.strategy, "learned|all")
      ->check(CLI::IsMember({"learned", "all"}));
  cmd->add_option("--min-morph-freq", f.cfg.decode.min_morpheme_freq,
                  "drop morphemes rarer than this");
  if (with_alpha) {
    cmd->add_option("--alpha", f.alpha, "override the model's alpha (0 = pure ML)")
        ->default_str("from model");
  }
}

bool Given(CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt && opt->count() > 0;
}

void Finish(CLI::App* cmd, Flags& f) {
  f.cfg.method = tsm::ParseTrieMethod(f.method);
  f.cfg.builder.stem_algorithm = tsm::ParseStemAlgorithm(f.stem_algo);
  f.cfg.decode.strategy = tsm::ParseDecodeStrategy(f.strategy);
  if (Given(cmd, "--gamma")) f.cfg.model_params.gamma = f.gamma;
  f.cfg.model_params.alpha = f.alpha;
  if (cmd->get_name() == "segment" && Given(cmd, "--alpha")) {
    f.cfg.decode_alpha = f.alpha;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trie-structured Bayesian morphological segmentation"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Flags f;

  auto* build = app.add_subcommand("build-tries", "build embedding-driven tries");
  AddPaths(build, f, true, true, false, false, false);
  AddBuilder(build, f);

  auto* train = app.add_subcommand("train", "learn a morpheme lexicon by Gibbs sampling");
  AddPaths(train, f, true, true, false, true, false);
  AddModel(train, f);

  auto* segment = app.add_subcommand("segment", "segment words with a trained model");
  AddPaths(segment, f, false, true, false, false, true);
  AddDecode(segment, f, true);

  auto* evaluate = app.add_subcommand("evaluate", "pair-based precision/recall/F");
  AddPaths(evaluate, f, false, false, true, false, false);
  evaluate->add_option("predictions", f.predictions, "word<TAB>m1 m2 predictions")
      ->required();

  auto* pipeline = app.add_subcommand("pipeline", "build-tries, train, segment, evaluate");
  AddPaths(pipeline, f, true, true, true, false, false);
  AddBuilder(pipeline, f);
  AddModel(pipeline, f);
  AddDecode(pipeline, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    Finish(cmd, f);
    const std::string name = cmd->get_name();
    if (name == "build-tries") {
      tsm::BuildTriesStage(f.cfg, std::cerr);
    } else if (name == "train") {
      tsm::TrainStage(f.cfg, std::cerr);
    } else if (name == "segment") {
      tsm::SegmentStage(f.cfg, std::cerr);
    } else if (name == "evaluate") {
      const auto report = tsm::EvaluateStage(f.cfg, f.predictions, std::cout);
      if (!f.cfg.out.empty()) std::cout << tsm::RenderReport(report, "result");
    } else {
      tsm::PipelineStage(f.cfg, std::cerr);
    }
  } catch (const tsm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const tsm::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const tsm::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
