#include "tsm/word_list.hpp"

#include <charconv>
#include <fstream>

#include "tsm/errors.hpp"

namespace tsm {
namespace {

std::string_view Trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

void WordList::Add(const std::string& word, std::uint64_t frequency) {
  auto [it, inserted] = freq_.emplace(word, 0);
  if (inserted) order_.push_back(word);
  it->second += frequency;
  total_ += frequency;
}

std::uint64_t WordList::Frequency(std::string_view word) const {
  auto it = freq_.find(std::string(word));
  return it == freq_.end() ? 0 : it->second;
}

bool WordList::Contains(std::string_view word) const {
  return freq_.count(std::string(word)) > 0;
}

WordList LoadWordList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open word list", path);

  WordList list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view row = Trim(line);
    if (row.empty()) continue;

    auto ws = row.find_first_of(" \t");
    if (ws == std::string_view::npos) {
      list.Add(std::string(row), 1);
      continue;
    }
    std::string_view count = row.substr(0, ws);
    std::string_view word = Trim(row.substr(ws + 1));
    std::uint64_t freq = 0;
    auto [ptr, ec] =
        std::from_chars(count.data(), count.data() + count.size(), freq);
    if (ec != std::errc() || ptr != count.data() + count.size()) {
      throw InputError("expected 'frequency<TAB>word'", path, lineno);
    }
    if (word.empty() || word.find_first_of(" \t") != std::string_view::npos) {
      throw InputError("expected a single word after the frequency", path,
                       lineno);
    }
    list.Add(std::string(word), freq);
  }
  return list;
}

}  // namespace tsm
