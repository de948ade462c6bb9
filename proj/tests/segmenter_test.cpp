#include <cmath>
#include <random>

#include "decode_oracle.hpp"
#include "doctest.h"
#include "tsm/errors.hpp"
#include "tsm/segmenter.hpp"

using namespace tsm;
using tsm::testing::BruteDecode;

namespace {

using Morphs = std::vector<std::string>;

Lexicon Lex(std::initializer_list<std::pair<const char*, long>> entries) {
  Lexicon lex;
  for (const auto& [m, c] : entries) lex.Add(m, c);
  return lex;
}

std::map<std::string, long> Counts(const Lexicon& lex) {
  std::map<std::string, long> out;
  for (const auto& [m, c] : lex.Sorted()) out[m] = c;
  return out;
}

ModelParams Params(double alpha, std::size_t alphabet = 26) {
  ModelParams p;
  p.alpha = alpha;
  p.alphabet_size = alphabet;
  return p;
}

DecodeConfig NoFilter() {
  DecodeConfig c;
  c.min_morpheme_freq = 0;
  return c;
}

}  // namespace

TEST_CASE("strategy names") {
  CHECK(ParseDecodeStrategy("learned") == DecodeStrategy::kLearnedOnly);
  CHECK(ParseDecodeStrategy("all") == DecodeStrategy::kAllSplits);
  CHECK(ToString(DecodeStrategy::kLearnedOnly) == "learned");
  CHECK_THROWS_AS(ParseDecodeStrategy("best"), ConfigError);
}

TEST_CASE("rare morpheme filter") {
  const Lexicon lex = Lex({{"walk", 10}, {"ed", 4}, {"s", 5}});
  DecodeConfig c;
  auto f = FilterLexicon(lex, c);
  CHECK(f.Count("ed") == 0);
  CHECK(f.Count("s") == 5);
  CHECK(f.total() == 15);
  c.min_morpheme_freq = 0;
  CHECK(FilterLexicon(lex, c) == lex);
  c.min_morpheme_freq = 11;
  CHECK(FilterLexicon(lex, c).total() == 0);
}

TEST_CASE("walked decodes as walk ed, matching brute force") {
  const Lexicon lex = Lex({{"walk", 10}, {"ed", 10}, {"walked", 1}});
  const auto p = Params(0.01);
  auto seg = SegmentAllSplits("walked", lex, p, NoFilter());
  CHECK(seg.morphemes == Morphs{"walk", "ed"});
  auto brute = BruteDecode("walked", Counts(lex), 0.01, 1.0 / 26);
  CHECK(brute.morphemes == seg.morphemes);
  CHECK(seg.score == doctest::Approx(brute.score).epsilon(1e-12));
  CHECK(seg.score == doctest::Approx(std::log((10 + 0.01 * std::pow(1.0 / 26, 5)) / 21.01) +
                                     std::log((10 + 0.01 * std::pow(1.0 / 26, 3)) / 21.01)));
}

TEST_CASE("empty lexicon leaves words unsplit") {
  const Lexicon empty;
  for (double alpha : {0.5, 1.0, 20.0}) {
    for (const char* w : {"walked", "kitaplar", "ab"}) {
      auto seg = SegmentAllSplits(w, empty, Params(alpha), NoFilter());
      CHECK(seg.morphemes == Morphs{w});
    }
  }
  // All entries under the cutoff behave the same way.
  DecodeConfig c;
  auto filtered = FilterLexicon(Lex({{"walk", 2}, {"ed", 3}}), c);
  CHECK(SegmentAllSplits("walked", filtered, Params(1.0), c).morphemes == Morphs{"walked"});
  // With alpha = 0 every analysis is impossible; the tie goes to one morpheme.
  CHECK(SegmentAllSplits("walked", empty, Params(0.0), NoFilter()).morphemes ==
        Morphs{"walked"});
}

TEST_CASE("one-letter and multibyte words") {
  const Lexicon lex = Lex({{"ı", 3}, {"sın", 5}, {"f", 5}});
  CHECK(SegmentAllSplits("a", lex, Params(1.0), NoFilter()).morphemes == Morphs{"a"});
  auto seg = SegmentAllSplits("sınıf", lex, Params(0.01, 29), NoFilter());
  CHECK(seg.morphemes == Morphs{"sın", "ı", "f"});
  CHECK_THROWS_AS(SegmentAllSplits("", lex, Params(1.0), NoFilter()), InputError);
}

TEST_CASE("ties: fewer morphemes, then longest from the left") {
  // alpha = 0: only counts matter. a|bc and ab|c both score (1/4)(1/4).
  const Lexicon lex = Lex({{"a", 1}, {"bc", 1}, {"ab", 1}, {"c", 1}});
  auto seg = SegmentAllSplits("abc", lex, Params(0.0), NoFilter());
  CHECK(seg.morphemes == Morphs{"ab", "c"});
  // abc (1 morpheme) ties the split analyses once it has the same mass.
  const Lexicon lex2 = Lex({{"abc", 1}, {"ab", 2}, {"c", 2}});
  // abc: 1/5; ab|c: 4/25 < 1/5
  CHECK(SegmentAllSplits("abc", lex2, Params(0.0), NoFilter()).morphemes == Morphs{"abc"});
}

TEST_CASE("dynamic program equals brute force on random lexicons") {
  std::mt19937_64 gen(7);
  const std::string letters = "abcd";
  std::uniform_int_distribution<int> letter(0, 3), len(1, 4), count(1, 6), wlen(1, 10);
  for (int trial = 0; trial < 300; ++trial) {
    Lexicon lex;
    for (int k = 0; k < 12; ++k) {
      std::string m;
      for (int i = len(gen); i > 0; --i) m += letters[letter(gen)];
      lex.Add(m, count(gen));
    }
    const double alpha = trial % 3 == 0 ? 0.0 : (trial % 3 == 1 ? 0.1 : 2.0);
    std::string w;
    for (int i = wlen(gen); i > 0; --i) w += letters[letter(gen)];
    auto seg = SegmentAllSplits(w, lex, Params(alpha, 4), NoFilter());
    auto brute = BruteDecode(w, Counts(lex), alpha, 0.25);
    CHECK(seg.morphemes == brute.morphemes);
    if (std::isfinite(brute.score)) {
      CHECK(std::abs(seg.score - brute.score) < 1e-9);
    } else {
      CHECK_FALSE(std::isfinite(seg.score));
    }
    CHECK(seg.Word() == w);
  }
}

TEST_CASE("morpheme cap") {
  const Lexicon lex = Lex({{"walk", 10}, {"ed", 10}, {"s", 10}, {"er", 10}});
  DecodeConfig c = NoFilter();
  auto free = SegmentAllSplits("walkers", lex, Params(0.01), c);
  CHECK(free.morphemes == Morphs{"walk", "er", "s"});
  c.max_morphemes = 2;
  auto capped = SegmentAllSplits("walkers", lex, Params(0.01), c);
  CHECK(capped.morphemes.size() <= 2);
  auto brute = BruteDecode("walkers", Counts(lex), 0.01, 1.0 / 26, 2);
  CHECK(capped.morphemes == brute.morphemes);
  c.max_morphemes = 1;
  CHECK(SegmentAllSplits("walkers", lex, Params(0.01), c).morphemes == Morphs{"walkers"});
}

TEST_CASE("filtered decode never beats the unfiltered optimum") {
  const Lexicon lex = Lex({{"kitap", 9}, {"lar", 7}, {"da", 4}, {"n", 2}, {"kitaplar", 1},
                           {"ki", 3}, {"tap", 5}});
  const auto p = Params(1.0);
  for (const char* w : {"kitaplardan", "kitaplar", "tapda", "kilar"}) {
    const double best = SegmentAllSplits(w, lex, p, NoFilter()).score;
    for (std::size_t cut = 0; cut <= 10; ++cut) {
      DecodeConfig c;
      c.min_morpheme_freq = cut;
      auto seg = SegmentAllSplits(w, FilterLexicon(lex, c), p, c);
      CHECK(LogWordLikelihood(seg.morphemes, lex, p) <= best + 1e-12);
    }
  }
}

TEST_CASE("filtering renormalizes N, so raw scores can rise") {
  const Lexicon lex = Lex({{"kitap", 9}, {"n", 2}});
  DecodeConfig c;
  c.min_morpheme_freq = 5;
  const auto p = Params(1.0);
  auto full = SegmentAllSplits("kitap", lex, p, NoFilter());
  auto filtered = SegmentAllSplits("kitap", FilterLexicon(lex, c), p, c);
  CHECK(full.morphemes == filtered.morphemes);
  // 9/12 vs 9/10 plus the same tiny new-table term.
  CHECK(filtered.score > full.score);
}

TEST_CASE("alpha zero decoding ignores a common count scale") {
  const Lexicon lex = Lex({{"kitap", 9}, {"lar", 7}, {"da", 4}, {"n", 2}, {"ki", 3}, {"tap", 5}});
  Lexicon scaled;
  for (const auto& [m, c] : lex.Sorted()) scaled.Add(m, c * 7);
  for (const char* w : {"kitaplardan", "kitaplar", "tapda", "kilar"}) {
    auto a = SegmentAllSplits(w, lex, Params(0.0), NoFilter());
    auto b = SegmentAllSplits(w, scaled, Params(0.0), NoFilter());
    CHECK(a.morphemes == b.morphemes);
  }
}

TEST_CASE("learned-only picks the best recorded analysis") {
  const Lexicon lex = Lex({{"lise", 6}, {"ler", 8}, {"de", 9}, {"liseler", 2}});
  const auto p = Params(1.0, 29);
  LearnedAnalyses learned;
  learned["liselerde"] = {Segmentation{{"lise", "ler", "de"}, 0.0},
                          Segmentation{{"liseler", "de"}, 0.0}};
  learned["evde"] = {Segmentation{{"evde"}, 0.0}};
  DecodeConfig c = NoFilter();
  c.strategy = DecodeStrategy::kLearnedOnly;

  auto s3 = LogWordLikelihood({"lise", "ler", "de"}, lex, p);
  auto s2 = LogWordLikelihood({"liseler", "de"}, lex, p);
  // Direct formula: N = 25.
  auto crp = [](double n, std::size_t len) {
    return std::log((n + std::pow(1.0 / 29, static_cast<double>(len + 1))) / 26.0);
  };
  CHECK(s3 == doctest::Approx(crp(6, 4) + crp(8, 3) + crp(9, 2)));
  CHECK(s2 == doctest::Approx(crp(2, 7) + crp(9, 2)));
  auto seg = SegmentLearnedOnly("liselerde", learned, lex, p, c);
  CHECK(seg.morphemes == (s2 > s3 ? Morphs{"liseler", "de"} : Morphs{"lise", "ler", "de"}));
  CHECK(seg.score == doctest::Approx(std::max(s2, s3)));

  CHECK(SegmentLearnedOnly("evde", learned, lex, p, c).morphemes == Morphs{"evde"});
  auto unseen = SegmentLearnedOnly("liselerin", learned, lex, p, c);
  CHECK(unseen.morphemes == SegmentAllSplits("liselerin", lex, p, c).morphemes);

  c.max_morphemes = 1;
  CHECK(SegmentLearnedOnly("liselerde", learned, lex, p, c).morphemes ==
        SegmentAllSplits("liselerde", lex, p, c).morphemes);
}

TEST_CASE("batch preserves order and equals per-word calls") {
  const Lexicon lex = Lex({{"walk", 10}, {"ed", 10}, {"s", 10}});
  const auto p = Params(0.5);
  LearnedAnalyses learned;
  learned["walks"] = {Segmentation{{"walks"}, 0.0}};
  DecodeConfig c = NoFilter();
  CHECK(SegmentBatch({}, learned, lex, p, c).empty());
  const std::vector<std::string> words{"walks", "walked", "talks", "walks"};
  for (auto strat : {DecodeStrategy::kAllSplits, DecodeStrategy::kLearnedOnly}) {
    c.strategy = strat;
    auto out = SegmentBatch(words, learned, lex, p, c);
    REQUIRE(out.size() == words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto single = strat == DecodeStrategy::kAllSplits
                        ? SegmentAllSplits(words[i], lex, p, c)
                        : SegmentLearnedOnly(words[i], learned, lex, p, c);
      CHECK(out[i].morphemes == single.morphemes);
      CHECK(out[i].score == single.score);
    }
  }
}
