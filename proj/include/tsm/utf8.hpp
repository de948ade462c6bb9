#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tsm::utf8 {

// Decodes a UTF-8 string into Unicode scalar values. Invalid sequences
// are mapped to U+FFFD one byte at a time.
std::u32string Decode(std::string_view s);

std::string Encode(std::u32string_view s);

// Byte offsets of every code point start, plus s.size() as the final entry.
// Prefix of i characters is s.substr(0, offsets[i]).
std::vector<std::size_t> Offsets(std::string_view s);

// Number of code points.
std::size_t Length(std::string_view s);

}  // namespace tsm::utf8
