#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace wsnsec {

// Portable helpers on top of std::mt19937_64. The engine's output sequence is
// fully specified by the standard; the <random> distributions are not, so the
// mappings below are done by hand to keep results identical across platforms
// and library versions.

inline double uniform_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
  std::uint64_t rem = std::uint64_t(-1) % n;
  std::uint64_t limit = std::uint64_t(-1) - rem;  // multiples of n fit in [0, limit)
  for (;;) {
    std::uint64_t v = g();
    if (v < limit || rem == n - 1) return v % n;
  }
}

// Knuth's product method, split for large means so the running product never
// underflows.
inline std::uint64_t poisson_sample(std::mt19937_64& g, double lambda) {
  if (lambda < 0 || !std::isfinite(lambda))
    throw std::invalid_argument("poisson_sample: lambda must be finite and >= 0");
  std::uint64_t total = 0;
  while (lambda > 30.0) {
    double chunk = 30.0;
    double limit = std::exp(-chunk);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= uniform_unit(g);
    } while (p > limit);
    total += k - 1;
    lambda -= chunk;
  }
  double limit = std::exp(-lambda);
  double p = 1.0;
  std::uint64_t k = 0;
  do {
    ++k;
    p *= uniform_unit(g);
  } while (p > limit);
  return total + k - 1;
}

/// Uniform i.i.d. bits from mt19937_64 words, least-significant bit first.
class UniformBitStream {
 public:
  explicit UniformBitStream(std::uint64_t seed) : engine_(seed) {}

  int next() {
    if (used_ == 64) {
      word_ = engine_();
      used_ = 0;
    }
    return static_cast<int>((word_ >> used_++) & 1);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  int used_ = 64;
};

}  // namespace wsnsec
