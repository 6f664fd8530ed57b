#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wsnsec/bits.hpp"

namespace wsnsec::stattests {

struct TestResult {
  std::string name;
  double p_value = 0;
};

/// Frequency (monobit): p = erfc(|S| / sqrt(2n)), S = #ones - #zeros.
double monobit_p(const Bits& seq);

/// Runs test. When the monobit precondition |pi - 1/2| >= 2/sqrt(n) fails,
/// p is 0 by convention (the sequence already failed frequency).
double runs_p(const Bits& seq);

/// Serial test, m = 2, first p-value. Overlapping dibit counts are cyclic;
/// with m = 2 the incomplete-gamma form collapses to exp(-dpsi2 / 2).
double serial2_p(const Bits& seq);

/// Longest run of ones in 8-bit blocks, categories <=1, 2, 3, >=4 with the
/// exact enumerated block probabilities (55, 94, 59, 48)/256; trailing bits
/// that do not fill a block are discarded.
double longest_run8_p(const Bits& seq);

inline constexpr std::size_t kMinBatteryLength = 100;

/// Runs all four tests. Throws std::invalid_argument naming the minimum
/// length when seq.size() < kMinBatteryLength.
std::vector<TestResult> battery(const Bits& seq);

/// True when every p-value is >= alpha.
bool passes(const std::vector<TestResult>& results, double alpha);

/// Chi-square survival function Q(dof/2, x/2) — upper tail probability.
double chi_square_sf(double chi2, double dof);

}  // namespace wsnsec::stattests
