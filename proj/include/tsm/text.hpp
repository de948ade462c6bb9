#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tsm {

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v);
std::optional<double> ParseDouble(std::string_view s);

}  // namespace tsm
