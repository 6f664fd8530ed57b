#include "wsnsec/bbs.hpp"

#include <array>

namespace wsnsec::bbs {

namespace {

const std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

bigint from_bytes(const Bytes& buf) {
  bigint v = 0;
  for (std::uint8_t byte : buf) {
    v <<= 8;
    v |= byte;
  }
  return v;
}

bigint random_below(const bigint& bound, ByteExpander& expander) {
  // Rejection sampling over [0, bound): draw ceil(bits/8) bytes, mask the top
  // byte down to the bit length, retry until in range.
  std::size_t bits = boost::multiprecision::msb(bound) + 1;
  std::size_t bytes = (bits + 7) / 8;
  unsigned top_mask = bits % 8 == 0 ? 0xFFu : ((1u << (bits % 8)) - 1u);
  for (;;) {
    Bytes buf = expander.take(bytes);
    buf[0] &= static_cast<std::uint8_t>(top_mask);
    bigint v = from_bytes(buf);
    if (v < bound) return v;
  }
}

bigint random_blum_prime_candidate(unsigned bits, ByteExpander& expander) {
  std::size_t nbytes = (bits + 7) / 8;
  bigint v = from_bytes(expander.take(nbytes));
  // Keep exactly `bits` bits, force the top two so products reach full width,
  // and force v = 3 (mod 4).
  v &= (bigint(1) << bits) - 1;
  v |= bigint(1) << (bits - 1);
  v |= bigint(1) << (bits - 2);
  v |= 3;
  return v;
}

}  // namespace

bool probably_prime(const bigint& n, ByteExpander& witnesses, int rounds) {
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // n is odd and > 251 here. Write n - 1 = d * 2^r with d odd.
  bigint d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  bigint n_minus_1 = n - 1;
  bigint n_minus_3 = n - 3;
  for (int round = 0; round < rounds; ++round) {
    bigint a = 2 + random_below(n_minus_3, witnesses);  // a in [2, n-2]
    bigint x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BbsParams BbsParams::generate(unsigned modulus_bits, const Bytes& seed_material) {
  if (modulus_bits < 16)
    throw std::invalid_argument("BbsParams::generate: modulus must be at least 16 bits");
  unsigned hi_bits = modulus_bits - modulus_bits / 2;
  unsigned lo_bits = modulus_bits / 2;
  ByteExpander candidates(derive_bytes(seed_material, "bbs-prime-candidates", 0));
  ByteExpander witnesses(derive_bytes(seed_material, "bbs-mr-witnesses", 0));
  bigint p, q;
  do {
    p = random_blum_prime_candidate(hi_bits, candidates);
  } while (!probably_prime(p, witnesses));
  do {
    q = random_blum_prime_candidate(lo_bits, candidates);
  } while (q == p || !probably_prime(q, witnesses));
  BbsParams out;
  out.p = p;
  out.q = q;
  out.n = p * q;
  return out;
}

BbsParams BbsParams::from_primes(const bigint& p, const bigint& q) {
  if (p == q) throw std::invalid_argument("BBS primes must be distinct");
  if (p % 4 != 3 || q % 4 != 3)
    throw std::invalid_argument("BBS primes must be congruent to 3 mod 4");
  Bytes fixed(32, 0x5a);
  ByteExpander witnesses(fixed);
  if (!probably_prime(p, witnesses) || !probably_prime(q, witnesses))
    throw std::invalid_argument("BBS parameters require prime p and q");
  BbsParams out;
  out.p = p;
  out.q = q;
  out.n = p * q;
  return out;
}

BbsGenerator::BbsGenerator(BbsParams params, const bigint& s)
    : params_(std::move(params)) {
  if (s < 1 || s > params_.n - 1)
    throw std::out_of_range("BBS seed s must lie in [1, n-1]");
  if (boost::multiprecision::gcd(s, params_.n) != 1)
    throw SeedRejected("BBS seed s must be coprime to the modulus");
  x_ = (s * s) % params_.n;
}

int BbsGenerator::next_bit() {
  x_ = (x_ * x_) % params_.n;
  return static_cast<int>(static_cast<unsigned>(x_ & 1));
}

Bits BbsGenerator::generate(std::size_t count) {
  Bits out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(static_cast<std::uint8_t>(next_bit()));
  return out;
}

bigint derive_seed_s(const bigint& n, ByteExpander& expander) {
  for (;;) {
    bigint s = 1 + random_below(n - 1, expander);  // s in [1, n-1]
    if (boost::multiprecision::gcd(s, n) == 1) return s;
  }
}

bigint parse_bigint(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  try {
    return bigint(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid integer literal: " + text);
  }
}

}  // namespace wsnsec::bbs
