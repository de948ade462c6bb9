#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tsm {

struct Neighbor {
  std::string word;
  double similarity = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// Word vectors read from the word2vec text format. Immutable once loaded,
// so concurrent queries are safe.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dimension);

  // Throws InputError on duplicate words, wrong dimension or zero norm.
  void Add(std::string word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  bool Contains(std::string_view word) const;

  // Words in load order.
  const std::vector<std::string>& words() const { return words_; }
  std::span<const double> Vector(std::string_view word) const;

  // Throws UnknownWordError when either word is missing.
  double Cosine(std::string_view a, std::string_view b) const;
  // Same, but nullopt for out-of-vocabulary words.
  std::optional<double> TryCosine(std::string_view a, std::string_view b) const;

  // Exact k nearest neighbors by cosine, excluding the query word. Sorted by
  // descending similarity, ties by ascending word. k past |V|-1 returns
  // every other word.
  std::vector<Neighbor> NearestNeighbors(std::string_view word,
                                         std::size_t k) const;

 private:
  std::optional<std::size_t> IndexOf(std::string_view word) const;
  double CosineAt(std::size_t i, std::size_t j) const;

  std::size_t dimension_ = 0;
  std::vector<std::string> words_;
  std::vector<double> data_;  // row-major, size() x dimension_
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Loads a word2vec text file (`count dim` header, then `word v1 .. vd`).
// If expected_dim is set, the header dimension must match it.
EmbeddingStore LoadEmbeddings(const std::string& path,
                              std::optional<std::size_t> expected_dim = {});

}  // namespace tsm
