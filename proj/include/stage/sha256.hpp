#pragma once

#include <string>

namespace stage {

// Hex-encoded SHA-256 digest of `data`.
std::string sha256_hex(const std::string& data);

} // namespace stage
