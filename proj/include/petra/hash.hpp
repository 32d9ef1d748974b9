#pragma once

#include <string>
#include <string_view>

namespace petra {

// SHA-256 of the input, as 64 lowercase hex digits.
std::string sha256_hex(std::string_view data);

// All-zero digest used as the parent of the genesis block.
inline constexpr const char* kNullHash =
    "0000000000000000000000000000000000000000000000000000000000000000";

}  // namespace petra
