#include "tsm/evaluator.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "tsm/errors.hpp"

namespace tsm {
namespace {

std::string Trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

using MorphemeSets = std::vector<std::set<std::string>>;

// Union of morphemes over each word's alternatives, indexed like `words`.
MorphemeSets Unions(const Analyses& a, const std::vector<std::string>& words) {
  MorphemeSets out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const auto& alt : a.words.at(words[i])) {
      out[i].insert(alt.begin(), alt.end());
    }
  }
  return out;
}

bool Intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

struct Side {
  double score = 0.0;
  bool defined = false;
  std::vector<std::size_t> pairs, hits;
};

// Pairs come from `source`, correctness from `target`.
Side Score(const MorphemeSets& source, const MorphemeSets& target) {
  const std::size_t n = source.size();
  std::unordered_map<std::string, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& m : source[i]) index[m].push_back(i);
  }

  Side side;
  side.pairs.assign(n, 0);
  side.hits.assign(n, 0);
  std::vector<char> mark(n, 0);
  std::vector<std::size_t> partners;
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    partners.clear();
    for (const auto& m : source[i]) {
      for (std::size_t j : index[m]) {
        if (j != i && !mark[j]) {
          mark[j] = 1;
          partners.push_back(j);
        }
      }
    }
    for (std::size_t j : partners) {
      mark[j] = 0;
      if (Intersects(target[i], target[j])) ++side.hits[i];
    }
    side.pairs[i] = partners.size();
    if (!partners.empty()) {
      sum += static_cast<double>(side.hits[i]) /
             static_cast<double>(partners.size());
      ++counted;
    }
  }
  side.defined = counted > 0;
  side.score = counted > 0 ? sum / static_cast<double>(counted) : 0.0;
  return side;
}

}  // namespace

void Analyses::Add(const std::string& word, std::vector<std::string> analysis) {
  auto& alts = words[word];
  if (std::find(alts.begin(), alts.end(), analysis) == alts.end()) {
    alts.push_back(std::move(analysis));
  }
}

Analyses ParseAnalyses(std::istream& in, const std::string& source) {
  Analyses out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw InputError("expected 'word<TAB>analysis, analysis, ...'", source,
                       lineno);
    }
    const std::string word = Trim(line.substr(0, tab));
    std::stringstream alts(line.substr(tab + 1));
    std::string alt;
    bool any = false;
    while (std::getline(alts, alt, ',')) {
      std::istringstream ms(alt);
      std::vector<std::string> morphemes;
      std::string m;
      while (ms >> m) morphemes.push_back(m);
      if (morphemes.empty()) {
        throw InputError("empty analysis for '" + word + "'", source, lineno);
      }
      out.Add(word, std::move(morphemes));
      any = true;
    }
    if (!any) {
      throw InputError("no analysis for '" + word + "'", source, lineno);
    }
  }
  if (out.words.empty()) throw InputError("no analyses found", source);
  return out;
}

Analyses LoadAnalyses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open analyses file", path);
  return ParseAnalyses(in, path);
}

Analyses FromSegmentations(const std::vector<std::string>& words,
                           const std::vector<Segmentation>& segs) {
  Analyses out;
  for (std::size_t i = 0; i < words.size() && i < segs.size(); ++i) {
    out.Add(words[i], segs[i].morphemes);
  }
  return out;
}

EvalReport Evaluate(const Analyses& predicted, const Analyses& gold) {
  std::vector<std::string> words;
  for (const auto& [w, _] : predicted.words) {
    if (gold.words.count(w)) words.push_back(w);
  }
  if (words.empty()) {
    throw InputError("predictions and gold standard share no words");
  }
  const auto pred_sets = Unions(predicted, words);
  const auto gold_sets = Unions(gold, words);
  const Side p = Score(pred_sets, gold_sets);
  const Side r = Score(gold_sets, pred_sets);

  EvalReport report;
  report.precision = p.score;
  report.recall = r.score;
  report.precision_defined = p.defined;
  report.recall_defined = r.defined;
  const double pr = report.precision + report.recall;
  report.f_measure = pr > 0.0 ? 2.0 * report.precision * report.recall / pr : 0.0;
  report.evaluated_words = words.size();
  report.words.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    report.words.push_back({words[i], p.pairs[i], p.hits[i], r.pairs[i], r.hits[i]});
  }
  return report;
}

std::string RenderReport(const EvalReport& report, const std::string& label) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  const std::size_t w = std::max<std::size_t>(label.size(), 6) + 2;
  out << std::left << std::setw(static_cast<int>(w)) << "system"
      << std::right << std::setw(14) << "Precision(%)" << std::setw(12)
      << "Recall(%)" << std::setw(15) << "F-measure(%)" << '\n';
  out << std::left << std::setw(static_cast<int>(w)) << label << std::right
      << std::setw(14) << 100.0 * report.precision << std::setw(12)
      << 100.0 * report.recall << std::setw(15) << 100.0 * report.f_measure
      << '\n';
  out << "precision=" << 100.0 * report.precision << '\n';
  out << "recall=" << 100.0 * report.recall << '\n';
  out << "f_measure=" << 100.0 * report.f_measure << '\n';
  out << "words=" << report.evaluated_words << '\n';
  if (!report.precision_defined) out << "precision_undefined=1\n";
  if (!report.recall_defined) out << "recall_undefined=1\n";
  return out.str();
}

}  // namespace tsm
