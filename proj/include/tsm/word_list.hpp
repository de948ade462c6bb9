#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tsm {

// Word -> corpus frequency. Keeps first-seen order for use as a seed list.
class WordList {
 public:
  // Repeated words accumulate their frequencies.
  void Add(const std::string& word, std::uint64_t frequency);

  std::uint64_t Frequency(std::string_view word) const;
  bool Contains(std::string_view word) const;
  std::uint64_t total() const { return total_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  const std::vector<std::string>& words() const { return order_; }

 private:
  std::unordered_map<std::string, std::uint64_t> freq_;
  std::vector<std::string> order_;
  std::uint64_t total_ = 0;
};

// Lines are `frequency<TAB>word` or a bare `word` (frequency 1). Blank
// lines are skipped. Throws InputError with the line number on bad rows.
WordList LoadWordList(const std::string& path);

}  // namespace tsm
