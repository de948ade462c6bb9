#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"
#include "tsm/digest.hpp"
#include "tsm/errors.hpp"
#include "tsm/pipeline.hpp"

using namespace tsm;
using tsm::testing::ReadFile;
using tsm::testing::SourcePath;
using tsm::testing::TempDir;
namespace fs = std::filesystem;

namespace {

RunConfig ToyConfig(const std::string& out) {
  RunConfig cfg;
  cfg.embeddings = SourcePath("data/toy/embeddings.txt");
  cfg.wordlist = SourcePath("data/toy/wordlist.tsv");
  cfg.gold = SourcePath("data/toy/gold.tsv");
  cfg.out = out;
  cfg.sampler.iterations = 10;
  return cfg;
}

std::size_t Lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("word column reader takes the last field") {
  TempDir dir("pipe");
  auto p = dir.Write("w.txt", "3\tkitap\nkalem\n\n  okul  \n3\tkitap\n");
  CHECK(ReadWordColumn(p) == std::vector<std::string>{"kitap", "kalem", "okul", "kitap"});
  CHECK_THROWS_AS(ReadWordColumn(dir.File("none.txt")), InputError);
}

TEST_CASE("stages write outputs and manifests") {
  TempDir dir("pipe");
  std::ostringstream log;
  auto cfg = ToyConfig(dir.File("tries"));
  auto set = BuildTriesStage(cfg, log);
  CHECK(set.tries.size() == 50);
  CHECK(fs::exists(dir.File("tries/tries.tsv")));
  auto run = nlohmann::json::parse(ReadFile(dir.File("tries/run.json")));
  CHECK(run["version"] == kVersion);
  CHECK(run["stage"] == "build-tries");
  CHECK(run["inputs"]["embeddings"]["sha256"].get<std::string>().size() == 64);

  cfg.tries = dir.File("tries");
  cfg.out = dir.File("model");
  TrainStage(cfg, log);
  for (auto f : {"lexicon.txt", "segmentations.txt", "sweeps.log", "manifest.json"}) {
    CHECK(fs::exists(dir.File(std::string("model/") + f)));
  }
  CHECK(Lines(ReadFile(dir.File("model/sweeps.log"))) == 10);
  auto train = nlohmann::json::parse(ReadFile(dir.File("model/manifest.json")));
  CHECK(train["parameters"]["seed"] == 1);
  CHECK(train["parameters"]["iterations"] == 10);

  cfg.model = dir.File("model");
  std::string words;
  for (const auto& [w, _] : LoadAnalyses(SourcePath("data/toy/heldout.tsv")).words) {
    words += w + "\n";
  }
  cfg.wordlist = dir.Write("heldout.txt", words);
  cfg.out = dir.File("heldout.seg");
  auto segs = SegmentStage(cfg, log);
  CHECK(segs.size() == 10);
  const auto text = ReadFile(cfg.out);
  CHECK(text.rfind("# strategy=all", 0) == 0);
  CHECK(Lines(text) == 11);
  CHECK(fs::exists(cfg.out + ".manifest.json"));

  cfg.decode.strategy = DecodeStrategy::kLearnedOnly;
  cfg.out = dir.File("heldout.learned.seg");
  auto learned = SegmentStage(cfg, log);
  REQUIRE(learned.size() == segs.size());
  // None of the held-out words were trained on, so both strategies agree.
  for (std::size_t i = 0; i < segs.size(); ++i) {
    CHECK(learned[i].morphemes == segs[i].morphemes);
  }

  cfg.out = dir.File("report.txt");
  auto report = EvaluateStage(cfg, dir.File("heldout.seg"), log);
  CHECK(report.evaluated_words == 10);
  CHECK(ReadFile(cfg.out).find("f_measure=") != std::string::npos);
}

TEST_CASE("pipeline is byte-for-byte reproducible") {
  TempDir a("pipe"), b("pipe");
  std::ostringstream log;
  PipelineStage(ToyConfig(a.File("run")), log);
  PipelineStage(ToyConfig(b.File("run")), log);
  for (auto f : {"model/lexicon.txt", "model/segmentations.txt", "model/sweeps.log",
                 "tries/tries.tsv", "segmentation.learned.txt", "segmentation.all.txt",
                 "report.learned.txt", "report.all.txt"}) {
    const auto x = ReadFile(a.File(std::string("run/") + f));
    CHECK_MESSAGE(!x.empty(), f);
    CHECK_MESSAGE(x == ReadFile(b.File(std::string("run/") + f)), f);
  }
  auto m = nlohmann::json::parse(ReadFile(a.File("run/manifest.json")));
  CHECK(m["results"].contains("learned"));
  CHECK(m["results"].contains("all"));
  const auto gold_words = LoadAnalyses(SourcePath("data/toy/gold.tsv")).size();
  CHECK(Lines(ReadFile(a.File("run/segmentation.all.txt"))) == gold_words + 1);

  auto other = ToyConfig(b.File("seeded"));
  other.sampler.rng_seed = 2;
  PipelineStage(other, log);
  CHECK(ReadFile(b.File("seeded/model/sweeps.log")) !=
        ReadFile(a.File("run/model/sweeps.log")));
}

TEST_CASE("missing inputs and bad configs are reported") {
  TempDir dir("pipe");
  std::ostringstream log;
  auto cfg = ToyConfig(dir.File("out"));
  cfg.embeddings = dir.File("nope.txt");
  CHECK_THROWS_AS(BuildTriesStage(cfg, log), InputError);
  CHECK_THROWS_AS(PipelineStage(cfg, log), InputError);

  cfg = ToyConfig(dir.File("out"));
  cfg.tries = dir.File("no-tries");
  CHECK_THROWS_AS(TrainStage(cfg, log), InputError);
  cfg.model = dir.File("no-model");
  CHECK_THROWS_AS(SegmentStage(cfg, log), InputError);
  CHECK_THROWS_AS(EvaluateStage(cfg, dir.File("no-pred.txt"), log), InputError);

  cfg = ToyConfig(dir.File("out"));
  cfg.sampler.iterations = 0;
  CHECK_THROWS_AS(PipelineStage(cfg, log), ConfigError);
  cfg = ToyConfig(dir.File("out"));
  cfg.builder.cosine_threshold = 1.5;
  CHECK_THROWS_AS(BuildTriesStage(cfg, log), ConfigError);
}

TEST_CASE("manifest digests follow input content") {
  TempDir dir("pipe");
  std::ostringstream log;
  auto cfg = ToyConfig(dir.File("a"));
  const auto emb = ReadFile(cfg.embeddings);
  cfg.embeddings = dir.Write("emb.txt", emb);
  BuildTriesStage(cfg, log);
  auto digest = [&](const std::string& run) {
    auto m = nlohmann::json::parse(ReadFile(run + "/run.json"));
    return m["inputs"]["embeddings"]["sha256"].get<std::string>();
  };
  const auto first = digest(dir.File("a"));
  CHECK(first == Sha256File(cfg.embeddings));

  cfg.out = dir.File("b");
  BuildTriesStage(cfg, log);
  CHECK(digest(dir.File("b")) == first);

  dir.Write("emb.txt", emb + "\n");
  cfg.out = dir.File("c");
  BuildTriesStage(cfg, log);
  CHECK(digest(dir.File("c")) != first);
  // Inputs are left untouched.
  CHECK(ReadFile(cfg.embeddings) == emb + "\n");
}

TEST_CASE("sha256 of known content") {
  TempDir dir("pipe");
  CHECK(Sha256File(dir.Write("abc.txt", "abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(Sha256File(dir.File("none")), InputError);
}
