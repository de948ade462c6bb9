#include "tsm/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tsm/errors.hpp"

namespace tsm {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !IsSpace(line[j])) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<double> ParseDouble(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::size_t> ParseCount(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

EmbeddingStore::EmbeddingStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw InputError("embedding dimension must be positive");
}

void EmbeddingStore::Add(std::string word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw InputError("expected " + std::to_string(dimension_) +
                     " components for '" + word + "', got " +
                     std::to_string(vector.size()));
  }
  if (index_.count(word)) throw InputError("duplicate word '" + word + "'");
  double sq = 0.0;
  for (double v : vector) sq += v * v;
  const double norm = std::sqrt(sq);
  if (!(norm > 0.0)) throw InputError("zero-norm vector for '" + word + "'");

  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vector.begin(), vector.end());
  norms_.push_back(norm);
}

bool EmbeddingStore::Contains(std::string_view word) const {
  return IndexOf(word).has_value();
}

std::optional<std::size_t> EmbeddingStore::IndexOf(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const double> EmbeddingStore::Vector(std::string_view word) const {
  auto i = IndexOf(word);
  if (!i) throw UnknownWordError(std::string(word));
  return {data_.data() + *i * dimension_, dimension_};
}

double EmbeddingStore::CosineAt(std::size_t i, std::size_t j) const {
  const double* a = data_.data() + i * dimension_;
  const double* b = data_.data() + j * dimension_;
  double dot = 0.0;
  for (std::size_t d = 0; d < dimension_; ++d) dot += a[d] * b[d];
  // Symmetric by construction: the dot product and the norm product commute.
  double c = dot / (norms_[i] * norms_[j]);
  return std::clamp(c, -1.0, 1.0);
}

double EmbeddingStore::Cosine(std::string_view a, std::string_view b) const {
  auto i = IndexOf(a);
  if (!i) throw UnknownWordError(std::string(a));
  auto j = IndexOf(b);
  if (!j) throw UnknownWordError(std::string(b));
  return CosineAt(*i, *j);
}

std::optional<double> EmbeddingStore::TryCosine(std::string_view a,
                                                std::string_view b) const {
  auto i = IndexOf(a);
  auto j = IndexOf(b);
  if (!i || !j) return std::nullopt;
  return CosineAt(*i, *j);
}

std::vector<Neighbor> EmbeddingStore::NearestNeighbors(std::string_view word,
                                                       std::size_t k) const {
  auto q = IndexOf(word);
  if (!q) throw UnknownWordError(std::string(word));
  if (k == 0) throw ConfigError("neighbor count must be positive");

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i == *q) continue;
    scored.emplace_back(CosineAt(*q, i), i);
  }
  auto better = [this](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return words_[x.second] < words_[y.second];
  };
  const std::size_t n = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + n, scored.end(), better);

  std::vector<Neighbor> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({words_[scored[i].second], scored[i].first});
  }
  return out;
}

EmbeddingStore LoadEmbeddings(const std::string& path,
                              std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open embeddings file", path);

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw InputError("empty embeddings file", path);
  ++lineno;
  auto header = SplitWhitespace(line);
  std::optional<std::size_t> count, dim;
  if (header.size() == 2) {
    count = ParseCount(header[0]);
    dim = ParseCount(header[1]);
  }
  if (!count || !dim || *dim == 0) {
    throw InputError("malformed header, expected '<count> <dimension>'", path,
                     lineno);
  }
  if (expected_dim && *expected_dim != *dim) {
    throw InputError("header dimension " + std::to_string(*dim) +
                         " does not match expected " +
                         std::to_string(*expected_dim),
                     path, lineno);
  }

  EmbeddingStore store(*dim);
  std::vector<double> vec;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != *dim + 1) {
      throw InputError("expected " + std::to_string(*dim) +
                           " components, got " +
                           std::to_string(fields.size() - 1),
                       path, lineno);
    }
    vec.assign(*dim, 0.0);
    for (std::size_t d = 0; d < *dim; ++d) {
      auto v = ParseDouble(fields[d + 1]);
      if (!v) {
        throw InputError("non-numeric component '" +
                             std::string(fields[d + 1]) + "'",
                         path, lineno);
      }
      vec[d] = *v;
    }
    try {
      store.Add(std::string(fields[0]), vec);
    } catch (const InputError& e) {
      throw InputError(e.what(), path, lineno);
    }
  }
  if (store.size() != *count) {
    throw InputError("header declares " + std::to_string(*count) +
                         " words but file has " + std::to_string(store.size()),
                     path, lineno);
  }
  return store;
}

}  // namespace tsm
