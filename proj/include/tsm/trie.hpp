#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tsm {

// One node per character edge. Children are keyed by Unicode scalar value
// and kept ordered so traversal is lexicographic.
struct TrieNode {
  std::map<char32_t, std::unique_ptr<TrieNode>> children;
  bool is_word_end = false;
  // Number of distinct inserted words whose path runs through this node.
  std::size_t pass_count = 0;

  std::size_t branch_count() const { return children.size(); }
};

class Trie {
 public:
  Trie();
  Trie(Trie&&) noexcept = default;
  Trie& operator=(Trie&&) noexcept = default;
  Trie(const Trie& other);
  Trie& operator=(const Trie& other);

  // Returns false if the word was already present (no counts change).
  // Throws InputError on an empty word.
  bool Insert(std::string_view word);

  std::size_t word_count() const { return word_count_; }
  bool empty() const { return word_count_ == 0; }

  // Branches leaving the node reached by `prefix`; nullopt if no such node.
  std::optional<std::size_t> BranchCount(std::string_view prefix) const;

  bool ContainsPrefix(std::string_view prefix) const;
  bool ContainsWord(std::string_view word) const;

  // All inserted words, lexicographically sorted.
  std::vector<std::string> Words() const;

  const TrieNode& root() const { return *root_; }
  const TrieNode* Find(std::string_view prefix) const;

  // `prefix<TAB>branch_count` for every node, in preorder.
  void DumpBranchCounts(std::ostream& out) const;

 private:
  std::unique_ptr<TrieNode> root_;
  std::size_t word_count_ = 0;
};

}  // namespace tsm
