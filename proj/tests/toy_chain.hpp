#pragma once

// The four-word corpus {walked, walks, talked, talks} and an exact oracle for
// the Markov chain the sampler runs on it. The oracle enumerates the joint
// segmentation space, builds the per-sweep transition matrix from the
// closed-form model formulas (not from sampler code), and solves for its
// stationary distribution.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "tsm/embedding_store.hpp"
#include "tsm/gibbs_sampler.hpp"
#include "tsm/trie_builder.hpp"
#include "tsm/word_list.hpp"

namespace tsm::testing {

struct ToyCorpus {
  std::shared_ptr<const TrieSet> tries;
  EmbeddingStore store{3};
  WordList words;
  ModelParams params;
  SamplerConfig config;
};

inline ToyCorpus MakeToyCorpus() {
  ToyCorpus toy;
  auto set = std::make_shared<TrieSet>();
  SeededTrie t{"walked", Trie()};
  for (auto w : {"walked", "walks", "talked", "talks"}) t.trie.Insert(w);
  set->tries.push_back(std::move(t));
  toy.tries = set;

  // Stems close to their inflected forms, the two families apart.
  toy.store.Add("walk", {1.0, 0.1, 0.0});
  toy.store.Add("walked", {0.9, 0.3, 0.1});
  toy.store.Add("walks", {0.95, 0.2, -0.1});
  toy.store.Add("talk", {0.0, 0.1, 1.0});
  toy.store.Add("talked", {0.1, 0.3, 0.9});
  toy.store.Add("talks", {-0.1, 0.2, 0.95});

  toy.words.Add("walk", 100);
  toy.words.Add("talk", 100);
  toy.words.Add("walked", 5);
  toy.words.Add("walks", 5);
  toy.words.Add("talked", 5);
  toy.words.Add("talks", 5);

  toy.params.alpha = 1.0;
  toy.params.alphabet_size = 8;  // a d e k l s t w
  toy.config.min_stem_length = 4;
  return toy;
}

class ToyChainOracle {
 public:
  using Split = std::vector<std::string>;

  explicit ToyChainOracle(const ToyCorpus& toy) : toy_(toy) {
    words_ = {"talked", "talks", "walked", "walks"};
    for (const auto& w : words_) options_.push_back(Enumerate(w));
    states_ = 1;
    for (const auto& o : options_) states_ *= o.size();
    Solve();
  }

  std::size_t num_states() const { return states_; }
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<Split>& options(std::size_t w) const { return options_[w]; }
  const std::vector<double>& stationary() const { return pi_; }

  // Joint state index of a per-word choice of analyses (aligned with
  // words()); npos if some analysis is not in the enumerated set.
  std::size_t Index(const std::vector<Split>& choice) const {
    std::size_t idx = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto it = std::find(options_[w].begin(), options_[w].end(), choice[w]);
      if (it == options_[w].end()) return static_cast<std::size_t>(-1);
      idx = idx * options_[w].size() + static_cast<std::size_t>(it - options_[w].begin());
    }
    return idx;
  }

  std::vector<Split> Decode(std::size_t idx) const {
    std::vector<Split> out(words_.size());
    for (std::size_t w = words_.size(); w-- > 0;) {
      out[w] = options_[w][idx % options_[w].size()];
      idx /= options_[w].size();
    }
    return out;
  }

  // State distribution after `sweeps` sweeps from a point mass at `start`.
  std::vector<double> Evolve(std::size_t start, std::size_t sweeps) const {
    const std::size_t n = states_;
    std::vector<double> d(n, 0.0);
    d[start] = 1.0;
    for (std::size_t k = 0; k < sweeps; ++k) {
      std::vector<double> next(n, 0.0);
      for (std::size_t s = 0; s < n; ++s) {
        if (d[s] == 0.0) continue;
        for (std::size_t t = 0; t < n; ++t) next[t] += d[s] * kernel_[s * n + t];
      }
      d = std::move(next);
    }
    return d;
  }

  std::size_t Mode() const {
    return static_cast<std::size_t>(
        std::max_element(pi_.begin(), pi_.end()) - pi_.begin());
  }

  // Probability that word w moves to each option given the others' analyses.
  std::vector<double> Conditional(std::size_t w, const std::vector<Split>& state) const {
    std::map<std::string, double> counts;
    double total = 0.0;
    for (std::size_t v = 0; v < state.size(); ++v) {
      if (v == w) continue;
      for (const auto& m : state[v]) {
        counts[m] += 1.0;
        total += 1.0;
      }
    }
    std::map<Split, double> dist;
    Recurse(words_[w], words_[w], {}, 1.0, counts, total, dist);
    std::vector<double> out;
    for (const auto& o : options_[w]) out.push_back(dist.count(o) ? dist.at(o) : 0.0);
    return out;
  }

 private:
  double Gamma() const { return 1.0 / 8.0; }

  double Crp(const std::string& m, const std::map<std::string, double>& counts,
             double total) const {
    const double a = toy_.params.alpha;
    const double h = std::pow(Gamma(), static_cast<double>(m.size() + 1));
    auto it = counts.find(m);
    const double n = it == counts.end() ? 0.0 : it->second;
    return (n + a * h) / (total + a);
  }

  double Cos(const std::string& a, const std::string& b) const {
    if (!toy_.store.Contains(a) || !toy_.store.Contains(b)) return -2.0;
    auto x = toy_.store.Vector(a);
    auto y = toy_.store.Vector(b);
    double d = 0, nx = 0, ny = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      d += x[i] * y[i];
      nx += x[i] * x[i];
      ny += y[i] * y[i];
    }
    return d / std::sqrt(nx * ny);
  }

  double Boundary(const std::string& left, const std::string& part) const {
    // Branches in the single trie: walk/talk fork into e and s, the rest chain.
    const std::size_t branches = (left == "walk" || left == "talk") ? 2 : 1;
    const double lambda = toy_.params.lambda;
    double pois = std::exp(-lambda);
    for (std::size_t k = 1; k <= branches; ++k) pois *= lambda / static_cast<double>(k);
    double sem = Cos(left, part);
    sem = sem < toy_.params.semantic_floor ? toy_.params.semantic_floor : std::min(sem, 1.0);
    const double f = static_cast<double>(toy_.words.Frequency(left));
    const double pres = f > 0 ? f / static_cast<double>(toy_.words.total())
                              : toy_.params.presence_floor;
    return pois * sem * pres;
  }

  // Distribution over final analyses of `part` (a prefix of `word`), with
  // `suffixes` already committed to its right.
  void Recurse(const std::string& word, const std::string& part, Split suffixes,
               double mass, const std::map<std::string, double>& counts,
               double total, std::map<Split, double>& out) const {
    const std::size_t min_stem = toy_.config.min_stem_length;
    std::vector<std::pair<std::size_t, double>> cands{{0, Crp(part, counts, total)}};
    for (std::size_t left = min_stem; part.size() > min_stem && left < part.size(); ++left) {
      const std::string l = part.substr(0, left), r = part.substr(left);
      cands.emplace_back(left, Crp(l, counts, total) * Crp(r, counts, total) * Boundary(l, part));
    }
    double z = 0.0;
    for (const auto& c : cands) z += c.second;
    for (const auto& [left, s] : cands) {
      const double p = mass * s / z;
      if (left == 0) {
        Split full{part};
        full.insert(full.end(), suffixes.rbegin(), suffixes.rend());
        out[full] += p;
      } else {
        Split next = suffixes;
        next.push_back(part.substr(left));
        Recurse(word, part.substr(0, left), next, p, counts, total, out);
      }
    }
  }

  std::vector<Split> Enumerate(const std::string& word) const {
    std::map<Split, double> dist;
    Recurse(word, word, {}, 1.0, {}, 0.0, dist);
    std::vector<Split> out;
    for (const auto& [s, _] : dist) out.push_back(s);
    return out;
  }

  void Solve() {
    const std::size_t n = states_;
    // Sweep kernel: average over all visiting orders of the sequential
    // single-word updates.
    std::vector<std::size_t> order(words_.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> kernel(n * n, 0.0);
    std::size_t perms = 0;
    do {
      ++perms;
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> dist(n, 0.0);
        dist[s] = 1.0;
        for (std::size_t w : order) {
          std::vector<double> next(n, 0.0);
          for (std::size_t x = 0; x < n; ++x) {
            if (dist[x] == 0.0) continue;
            auto state = Decode(x);
            auto cond = Conditional(w, state);
            for (std::size_t o = 0; o < cond.size(); ++o) {
              state[w] = options_[w][o];
              next[Index(state)] += dist[x] * cond[o];
            }
          }
          dist = std::move(next);
        }
        for (std::size_t t = 0; t < n; ++t) kernel[s * n + t] += dist[t];
      }
    } while (std::next_permutation(order.begin(), order.end()));
    for (auto& k : kernel) k /= static_cast<double>(perms);
    kernel_ = kernel;

    pi_.assign(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < 10000; ++it) {
      std::vector<double> next(n, 0.0);
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) next[t] += pi_[s] * kernel[s * n + t];
      }
      double diff = 0.0;
      for (std::size_t s = 0; s < n; ++s) diff += std::abs(next[s] - pi_[s]);
      pi_ = std::move(next);
      if (diff < 1e-15) break;
    }
  }

  std::vector<double> kernel_;
  const ToyCorpus& toy_;
  std::vector<std::string> words_;
  std::vector<std::vector<Split>> options_;
  std::size_t states_ = 0;
  std::vector<double> pi_;
};

}  // namespace tsm::testing
