#include "tsm/trie.hpp"

#include "tsm/errors.hpp"
#include "tsm/utf8.hpp"

namespace tsm {
namespace {

std::unique_ptr<TrieNode> CloneNode(const TrieNode& node) {
  auto copy = std::make_unique<TrieNode>();
  copy->is_word_end = node.is_word_end;
  copy->pass_count = node.pass_count;
  for (const auto& [c, child] : node.children) {
    copy->children.emplace(c, CloneNode(*child));
  }
  return copy;
}

void CollectWords(const TrieNode& node, std::u32string& path,
                  std::vector<std::string>& out) {
  if (node.is_word_end) out.push_back(utf8::Encode(path));
  for (const auto& [c, child] : node.children) {
    path.push_back(c);
    CollectWords(*child, path, out);
    path.pop_back();
  }
}

void Dump(const TrieNode& node, std::u32string& path, std::ostream& out) {
  out << utf8::Encode(path) << '\t' << node.branch_count() << '\n';
  for (const auto& [c, child] : node.children) {
    path.push_back(c);
    Dump(*child, path, out);
    path.pop_back();
  }
}

}  // namespace

Trie::Trie() : root_(std::make_unique<TrieNode>()) {}

Trie::Trie(const Trie& other)
    : root_(CloneNode(*other.root_)), word_count_(other.word_count_) {}

Trie& Trie::operator=(const Trie& other) {
  if (this != &other) {
    root_ = CloneNode(*other.root_);
    word_count_ = other.word_count_;
  }
  return *this;
}

bool Trie::Insert(std::string_view word) {
  if (word.empty()) throw InputError("cannot insert an empty word into a trie");
  if (ContainsWord(word)) return false;

  TrieNode* node = root_.get();
  ++node->pass_count;
  for (char32_t c : utf8::Decode(word)) {
    auto& child = node->children[c];
    if (!child) child = std::make_unique<TrieNode>();
    node = child.get();
    ++node->pass_count;
  }
  node->is_word_end = true;
  ++word_count_;
  return true;
}

const TrieNode* Trie::Find(std::string_view prefix) const {
  const TrieNode* node = root_.get();
  for (char32_t c : utf8::Decode(prefix)) {
    auto it = node->children.find(c);
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return node;
}

std::optional<std::size_t> Trie::BranchCount(std::string_view prefix) const {
  const TrieNode* node = Find(prefix);
  if (!node) return std::nullopt;
  return node->branch_count();
}

bool Trie::ContainsPrefix(std::string_view prefix) const {
  return Find(prefix) != nullptr;
}

bool Trie::ContainsWord(std::string_view word) const {
  const TrieNode* node = Find(word);
  return node && node->is_word_end;
}

std::vector<std::string> Trie::Words() const {
  std::vector<std::string> out;
  out.reserve(word_count_);
  std::u32string path;
  CollectWords(*root_, path, out);
  return out;
}

void Trie::DumpBranchCounts(std::ostream& out) const {
  std::u32string path;
  Dump(*root_, path, out);
}

}  // namespace tsm
