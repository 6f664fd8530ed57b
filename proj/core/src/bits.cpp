#include "wsnsec/bits.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsnsec {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("invalid hex digit: '") + c + "'");
}

char to_hex_digit(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

}  // namespace

std::size_t count_ones(const Bits& bits) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

std::string bits_to_string(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

Bits bits_from_string(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument(std::string("invalid bit character: '") + c + "'");
    out.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

std::string bits_to_hex(const Bits& bits) {
  std::string out;
  out.reserve((bits.size() + 3) / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nib = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nib <<= 1;
      if (i + j < bits.size() && bits[i + j]) nib |= 1;
    }
    out.push_back(to_hex_digit(nib));
  }
  return out;
}

Bits bits_from_hex(std::string_view hex) {
  Bits out;
  out.reserve(hex.size() * 4);
  for (char c : hex) {
    int nib = hex_digit(c);
    for (int j = 3; j >= 0; --j) out.push_back(static_cast<std::uint8_t>((nib >> j) & 1));
  }
  return out;
}

std::string bytes_to_hex(const Bytes& bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(to_hex_digit(b >> 4));
    out.push_back(to_hex_digit(b & 0xf));
  }
  return out;
}

Bytes bytes_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string must have even length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2)
    out.push_back(static_cast<std::uint8_t>(hex_digit(hex[i]) * 16 + hex_digit(hex[i + 1])));
  return out;
}

}  // namespace wsnsec
