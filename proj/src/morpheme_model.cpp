#include "tsm/morpheme_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "tsm/errors.hpp"
#include "tsm/text.hpp"
#include "tsm/utf8.hpp"

namespace tsm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double ModelParams::Gamma() const {
  if (gamma) return *gamma;
  if (alphabet_size == 0) {
    throw ConfigError("gamma needs either an explicit value or alphabet size");
  }
  return 1.0 / static_cast<double>(alphabet_size);
}

void ModelParams::Validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a non-negative finite number");
  }
  const double g = Gamma();
  if (!(g > 0.0 && g < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be positive");
  }
  if (!(semantic_floor > 0.0 && semantic_floor <= 1.0) ||
      !(presence_floor > 0.0 && presence_floor <= 1.0)) {
    throw ConfigError("prior floors must lie in (0, 1]");
  }
}

std::size_t CountAlphabet(const std::vector<std::string>& words) {
  std::unordered_set<char32_t> letters;
  for (const auto& w : words) {
    for (char32_t c : utf8::Decode(w)) letters.insert(c);
  }
  return letters.size();
}

void Lexicon::Add(const std::string& morpheme, std::int64_t times) {
  if (times <= 0) return;
  counts_[morpheme] += times;
  total_ += times;
}

void Lexicon::Remove(const std::string& morpheme) {
  auto it = counts_.find(morpheme);
  if (it == counts_.end()) {
    throw InvariantError("removing absent morpheme '" + morpheme + "'");
  }
  if (--it->second == 0) counts_.erase(it);
  --total_;
}

std::int64_t Lexicon::Count(std::string_view morpheme) const {
  auto it = counts_.find(std::string(morpheme));
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::int64_t>> Lexicon::Sorted() const {
  std::vector<std::pair<std::string, std::int64_t>> out(counts_.begin(),
                                                         counts_.end());
  std::sort(out.begin(), out.end());
  return out;
}

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double LogBaseProb(std::string_view morpheme, const ModelParams& p) {
  const std::size_t len = utf8::Length(morpheme);
  if (len == 0) throw InputError("base probability of an empty morpheme");
  return static_cast<double>(len + 1) * std::log(p.Gamma());
}

double BaseProb(std::string_view morpheme, const ModelParams& p) {
  return std::exp(LogBaseProb(morpheme, p));
}

double LogCrpProb(std::string_view morpheme, const Lexicon& lex,
                  const ModelParams& p) {
  const auto n = lex.Count(morpheme);
  const double log_new =
      p.alpha > 0.0 ? std::log(p.alpha) + LogBaseProb(morpheme, p) : kNegInf;
  const double log_old = n > 0 ? std::log(static_cast<double>(n)) : kNegInf;
  const double denom = static_cast<double>(lex.total()) + p.alpha;
  if (!(denom > 0.0)) return kNegInf;
  return LogAdd(log_old, log_new) - std::log(denom);
}

double CrpProb(std::string_view morpheme, const Lexicon& lex,
               const ModelParams& p) {
  return std::exp(LogCrpProb(morpheme, lex, p));
}

double LogPoissonBranchProb(std::size_t k, const ModelParams& p) {
  const double kd = static_cast<double>(k);
  return kd * std::log(p.lambda) - p.lambda - std::lgamma(kd + 1.0);
}

double PoissonBranchProb(std::size_t k, const ModelParams& p) {
  return std::exp(LogPoissonBranchProb(k, p));
}

double SemanticPrior(const BoundaryContext& ctx, const EmbeddingStore& store,
                     const ModelParams& p) {
  auto c = store.TryCosine(ctx.prefix_form, ctx.extended_form);
  if (!c) return p.semantic_floor;
  return std::clamp(*c, p.semantic_floor, 1.0);
}

double PresencePrior(std::string_view prefix_form, const WordList& words,
                     const ModelParams& p) {
  if (words.total() == 0) {
    throw InputError("presence prior needs a nonempty word list");
  }
  const auto f = words.Frequency(prefix_form);
  if (f == 0) return p.presence_floor;
  return static_cast<double>(f) / static_cast<double>(words.total());
}

double LogBoundaryPrior(const BoundaryContext& ctx, const EmbeddingStore& store,
                        const WordList& words, const ModelParams& p) {
  return LogPoissonBranchProb(ctx.branch_count, p) +
         std::log(SemanticPrior(ctx, store, p)) +
         std::log(PresencePrior(ctx.prefix_form, words, p));
}

double BoundaryPrior(const BoundaryContext& ctx, const EmbeddingStore& store,
                     const WordList& words, const ModelParams& p) {
  return PoissonBranchProb(ctx.branch_count, p) *
         SemanticPrior(ctx, store, p) *
         PresencePrior(ctx.prefix_form, words, p);
}

double LogWordLikelihood(const std::vector<std::string>& morphemes,
                         const Lexicon& lex, const ModelParams& p) {
  double s = 0.0;
  for (const auto& m : morphemes) s += LogCrpProb(m, lex, p);
  return s;
}

double WordLikelihood(const std::vector<std::string>& morphemes,
                      const Lexicon& lex, const ModelParams& p) {
  return std::exp(LogWordLikelihood(morphemes, lex, p));
}

double LogCrpJoint(const Lexicon& lex, const ModelParams& p) {
  if (lex.empty()) return 0.0;
  const double a = p.alpha;
  if (!(a > 0.0)) return kNegInf;
  double s = static_cast<double>(lex.size()) * std::log(a);
  for (const auto& [m, n] : lex.counts()) {
    s += LogBaseProb(m, p) + std::lgamma(static_cast<double>(n));
  }
  return s + std::lgamma(a) - std::lgamma(static_cast<double>(lex.total()) + a);
}

void SaveLexicon(const LexiconFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write lexicon", path);
  out << "#format=tsm-lexicon/1\n";
  out << "#alpha=" << FormatDouble(file.params.alpha) << '\n';
  out << "#gamma=" << FormatDouble(file.params.Gamma()) << '\n';
  out << "#lambda=" << FormatDouble(file.params.lambda) << '\n';
  out << "#alphabet_size=" << file.params.alphabet_size << '\n';
  out << "#semantic_floor=" << FormatDouble(file.params.semantic_floor) << '\n';
  out << "#presence_floor=" << FormatDouble(file.params.presence_floor) << '\n';
  for (const auto& [k, v] : file.metadata) out << '#' << k << '=' << v << '\n';
  for (const auto& [m, n] : file.lexicon.Sorted()) out << n << '\t' << m << '\n';
}

LexiconFile LoadLexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lexicon", path);

  LexiconFile file;
  std::string line;
  std::size_t lineno = 0;
  bool saw_format = false;
  auto number = [&](const std::string& v) {
    auto d = ParseDouble(v);
    if (!d) throw InputError("bad numeric header value '" + v + "'", path, lineno);
    return *d;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw InputError("header line without '='", path, lineno);
      }
      std::string key = line.substr(1, eq - 1), value = line.substr(eq + 1);
      if (key == "format") {
        if (value != "tsm-lexicon/1") {
          throw InputError("unsupported lexicon format '" + value + "'", path,
                           lineno);
        }
        saw_format = true;
      } else if (key == "alpha") {
        file.params.alpha = number(value);
      } else if (key == "gamma") {
        file.params.gamma = number(value);
      } else if (key == "lambda") {
        file.params.lambda = number(value);
      } else if (key == "alphabet_size") {
        file.params.alphabet_size = static_cast<std::size_t>(number(value));
      } else if (key == "semantic_floor") {
        file.params.semantic_floor = number(value);
      } else if (key == "presence_floor") {
        file.params.presence_floor = number(value);
      } else {
        file.metadata[key] = value;
      }
      continue;
    }
    auto tab = line.find('\t');
    std::int64_t n = 0;
    if (tab == std::string::npos || tab + 1 == line.size()) {
      throw InputError("expected 'count<TAB>morpheme'", path, lineno);
    }
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, n);
    if (ec != std::errc() || ptr != line.data() + tab || n <= 0) {
      throw InputError("bad morpheme count", path, lineno);
    }
    file.lexicon.Add(line.substr(tab + 1), n);
  }
  if (!saw_format) throw InputError("missing lexicon format header", path);
  try {
    file.params.Validate();
  } catch (const ConfigError& e) {
    throw InputError(e.what(), path);
  }
  return file;
}

}  // namespace tsm
