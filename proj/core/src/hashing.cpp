#include "wsnsec/hashing.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace wsnsec {

namespace {

void put_be64(Bytes& out, std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

}  // namespace

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size())
    throw std::runtime_error("sha256 failed");
  return out;
}

ByteExpander::ByteExpander(Bytes seed) : seed_(std::move(seed)) {}

void ByteExpander::refill() {
  Bytes input = seed_;
  put_be64(input, counter_++);
  block_ = sha256(input);
  pos_ = 0;
}

std::uint8_t ByteExpander::next_byte() {
  if (pos_ >= block_.size()) refill();
  return block_[pos_++];
}

void ByteExpander::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) b = next_byte();
}

Bytes ByteExpander::take(std::size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

std::uint64_t ByteExpander::next_u64() {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
  return v;
}

int ByteExpander::next_bit() {
  if (bits_left_ == 0) {
    bit_buffer_ = next_byte();
    bits_left_ = 8;
  }
  --bits_left_;
  return (bit_buffer_ >> bits_left_) & 1;
}

std::uint64_t ByteExpander::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
  if (n == 1) return 0;
  // Draw the minimal number of whole bytes covering n and reject out-of-range
  // values; unbiased for every n.
  int bits = 64 - __builtin_clzll(n - 1);
  int bytes = (bits + 7) / 8;
  std::uint64_t mask = bits == 64 ? ~0ull : ((1ull << bits) - 1);
  for (;;) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | next_byte();
    v &= mask;
    if (v < n) return v;
  }
}

Bytes derive_bytes(std::span<const std::uint8_t> master, std::string_view label,
                   std::uint64_t index) {
  Bytes input(master.begin(), master.end());
  input.push_back(0);
  input.insert(input.end(), label.begin(), label.end());
  input.push_back(0);
  put_be64(input, index);
  auto digest = sha256(input);
  return Bytes(digest.begin(), digest.end());
}

std::uint64_t derive_u64(std::span<const std::uint8_t> master, std::string_view label,
                         std::uint64_t index) {
  Bytes d = derive_bytes(master, label, index);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace wsnsec
