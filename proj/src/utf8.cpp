#include "tsm/utf8.hpp"

namespace tsm::utf8 {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Length of the sequence starting at lead byte c, 0 if c is not a lead byte.
int SequenceLength(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 0;
}

// Decodes one code point at s[i]; returns the number of bytes consumed.
std::size_t DecodeOne(std::string_view s, std::size_t i, char32_t* out) {
  const auto lead = static_cast<unsigned char>(s[i]);
  const int len = SequenceLength(lead);
  if (len == 0 || i + len > s.size()) {
    *out = kReplacement;
    return 1;
  }
  if (len == 1) {
    *out = lead;
    return 1;
  }
  char32_t cp = lead & (0x7F >> len);
  for (int k = 1; k < len; ++k) {
    const auto c = static_cast<unsigned char>(s[i + k]);
    if ((c >> 6) != 0x2) {
      *out = kReplacement;
      return 1;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  *out = cp;
  return len;
}

}  // namespace

std::u32string Decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    char32_t cp;
    i += DecodeOne(s, i, &cp);
    out.push_back(cp);
  }
  return out;
}

std::string Encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

std::vector<std::size_t> Offsets(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size();) {
    offsets.push_back(i);
    char32_t cp;
    i += DecodeOne(s, i, &cp);
  }
  offsets.push_back(s.size());
  return offsets;
}

std::size_t Length(std::string_view s) { return Offsets(s).size() - 1; }

}  // namespace tsm::utf8
