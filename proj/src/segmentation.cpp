#include "tsm/segmentation.hpp"

#include <sstream>

namespace tsm {

std::string Segmentation::Word() const {
  std::string w;
  for (const auto& m : morphemes) w += m;
  return w;
}

std::string Segmentation::Joined() const {
  std::string s;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i) s += ' ';
    s += morphemes[i];
  }
  return s;
}

Segmentation ParseJoined(const std::string& joined) {
  Segmentation seg;
  std::istringstream in(joined);
  std::string m;
  while (in >> m) seg.morphemes.push_back(m);
  return seg;
}

}  // namespace tsm
