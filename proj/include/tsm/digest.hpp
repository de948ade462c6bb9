#pragma once

#include <string>

namespace tsm {

// Hex SHA-256 of a file's bytes. Throws InputError if unreadable.
std::string Sha256File(const std::string& path);

}  // namespace tsm
