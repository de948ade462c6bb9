#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsm {

// Bad flags or parameter values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable input data. Carries the offending line when known.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::string source = {},
             std::size_t line = 0)
      : std::runtime_error(Format(what, source, line)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& what, const std::string& source,
                            std::size_t line) {
    std::string msg;
    if (!source.empty()) msg += source + ":";
    if (line > 0) msg += std::to_string(line) + ":";
    if (!msg.empty()) msg += " ";
    return msg + what;
  }

  std::string source_;
  std::size_t line_ = 0;
};

// Internal bookkeeping corruption (e.g. lexicon counts out of sync).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Query for a word that is not in the embedding vocabulary.
class UnknownWordError : public std::out_of_range {
 public:
  explicit UnknownWordError(const std::string& word)
      : std::out_of_range("unknown word: " + word), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

}  // namespace tsm
