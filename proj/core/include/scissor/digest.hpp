#pragma once

#include <string>
#include <string_view>

namespace scissor {

// Hex-encoded SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

// Hex-encoded SHA-256 of a file's contents. Throws Error if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace scissor
