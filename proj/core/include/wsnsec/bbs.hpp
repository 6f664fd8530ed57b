#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

#include "wsnsec/bits.hpp"
#include "wsnsec/hashing.hpp"

namespace wsnsec::bbs {

using bigint = boost::multiprecision::mpz_int;

/// Thrown when a candidate seed s shares a factor with the modulus.
class SeedRejected : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Miller-Rabin with `rounds` pseudorandom witnesses drawn from `witnesses`
/// (preceded by small-prime trial division). Composites survive a round with
/// probability < 1/4, so 40 rounds push the error below 2^-80.
bool probably_prime(const bigint& n, ByteExpander& witnesses, int rounds = 40);

struct BbsParams {
  bigint p;
  bigint q;
  bigint n;  // n = p*q, the Blum modulus

  /// Generates a fresh Blum modulus of exactly `modulus_bits` bits. Both prime
  /// halves are congruent to 3 mod 4 and have their top two bits forced so the
  /// product cannot fall short.
  static BbsParams generate(unsigned modulus_bits, const Bytes& seed_material);

  /// Builds parameters from explicit primes, validating the Blum conditions.
  static BbsParams from_primes(const bigint& p, const bigint& q);
};

class BbsGenerator {
 public:
  /// Seeds the generator: x0 = s^2 mod n. Requires 1 <= s <= n-1 and
  /// gcd(s, n) == 1; throws std::out_of_range / SeedRejected otherwise.
  BbsGenerator(BbsParams params, const bigint& s);

  /// Squares the state and returns its least-significant bit.
  int next_bit();

  Bits generate(std::size_t count);

  const bigint& state() const { return x_; }
  const BbsParams& params() const { return params_; }

 private:
  BbsParams params_;
  bigint x_;
};

/// Derives a seed s in [1, n-1] with gcd(s, n) == 1 from expander output,
/// retrying on the (astronomically unlikely) shared-factor case.
bigint derive_seed_s(const bigint& n, ByteExpander& expander);

/// Parses a decimal or 0x-prefixed hex integer.
bigint parse_bigint(const std::string& text);

}  // namespace wsnsec::bbs
