#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace codefarm {

/// One element per bit, each 0 or 1.
using BitString = std::vector<std::uint8_t>;

/// ASCII 0/1 rendering.
std::string to_string(const BitString& bits);

/// Parses ASCII 0/1. Throws std::invalid_argument on any other character.
BitString parse_bits(std::string_view text);

} // namespace codefarm
