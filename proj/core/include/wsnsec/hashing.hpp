#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "wsnsec/bits.hpp"

namespace wsnsec {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

/// Deterministic unbounded byte stream expanded from a seed:
/// block_i = SHA256(seed || big-endian64(i)).
///
/// Every piece of derived randomness in the project (prime candidates,
/// per-trial seeds, game coins, keystreams) flows through this construction
/// so that identical seeds reproduce identical results on any platform.
class ByteExpander {
 public:
  explicit ByteExpander(Bytes seed);

  std::uint8_t next_byte();
  void fill(std::span<std::uint8_t> out);
  Bytes take(std::size_t n);
  /// 8 bytes, big-endian.
  std::uint64_t next_u64();
  /// One bit, consuming bytes MSB-first.
  int next_bit();
  /// Uniform integer in [0, n) by rejection sampling; n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  void refill();

  Bytes seed_;
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t pos_ = 32;
  std::uint8_t bit_buffer_ = 0;
  int bits_left_ = 0;
};

/// Domain-separated sub-seed: SHA256(master || 0x00 || label || 0x00 || be64(index)).
Bytes derive_bytes(std::span<const std::uint8_t> master, std::string_view label,
                   std::uint64_t index = 0);
/// First 8 bytes of derive_bytes, big-endian.
std::uint64_t derive_u64(std::span<const std::uint8_t> master, std::string_view label,
                         std::uint64_t index = 0);

}  // namespace wsnsec
