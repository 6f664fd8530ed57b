#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wsnsec {

// A bit sequence, one bit per element (values 0 or 1). Kept unpacked: the
// sequences handled here are short (schedules, test inputs), and unpacked
// storage keeps slot indexing trivial.
using Bits = std::vector<std::uint8_t>;
using Bytes = std::vector<std::uint8_t>;

std::size_t count_ones(const Bits& bits);

// "0011..." <-> Bits. Parsing rejects any character other than '0'/'1'.
std::string bits_to_string(const Bits& bits);
Bits bits_from_string(std::string_view text);

// Hex packing is MSB-first within each nibble; a trailing partial nibble is
// zero-padded on the right.
std::string bits_to_hex(const Bits& bits);
Bits bits_from_hex(std::string_view hex);

std::string bytes_to_hex(const Bytes& bytes);
Bytes bytes_from_hex(std::string_view hex);

}  // namespace wsnsec
