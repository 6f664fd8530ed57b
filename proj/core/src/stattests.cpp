#include "wsnsec/stattests.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

namespace wsnsec::stattests {

namespace {

// GSL must not abort the process on underflow; results are still filled in.
const int kGslHandlerOff = [] {
  gsl_set_error_handler_off();
  return 0;
}();

double igamc(double a, double x) { return gsl_sf_gamma_inc_Q(a, x); }

}  // namespace

double monobit_p(const Bits& seq) {
  if (seq.empty()) throw std::invalid_argument("monobit: empty sequence");
  const double n = static_cast<double>(seq.size());
  double s = 0;
  for (auto b : seq) s += b ? 1.0 : -1.0;
  return std::erfc(std::abs(s) / std::sqrt(2.0 * n));
}

double runs_p(const Bits& seq) {
  if (seq.size() < 2) throw std::invalid_argument("runs: need >= 2 bits");
  const double n = static_cast<double>(seq.size());
  const double pi = static_cast<double>(count_ones(seq)) / n;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
  double v = 1;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k)
    if (seq[k] != seq[k + 1]) v += 1;
  const double expected = 2.0 * n * pi * (1.0 - pi);
  return std::erfc(std::abs(v - expected) /
                   (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));
}

double serial2_p(const Bits& seq) {
  if (seq.size() < 2) throw std::invalid_argument("serial: need >= 2 bits");
  const double n = static_cast<double>(seq.size());
  std::array<double, 4> c2{};  // overlapping cyclic dibits
  std::array<double, 2> c1{};
  for (std::size_t k = 0; k < seq.size(); ++k) {
    unsigned b0 = seq[k];
    unsigned b1 = seq[(k + 1) % seq.size()];
    c1[b0] += 1;
    c2[(b0 << 1) | b1] += 1;
  }
  double psi2 = 0, psi1 = 0;
  for (double c : c2) psi2 += c * c;
  for (double c : c1) psi1 += c * c;
  psi2 = psi2 * 4.0 / n - n;
  psi1 = psi1 * 2.0 / n - n;
  const double dpsi2 = psi2 - psi1;
  return std::exp(-dpsi2 / 2.0);
}

double longest_run8_p(const Bits& seq) {
  if (seq.size() < 8)
    throw std::invalid_argument("longest-run: need >= 8 bits");
  // Exact category probabilities for the longest run of ones in 8 uniform
  // bits: counts (55, 94, 59, 48) out of 256 for <=1, 2, 3, >=4.
  static constexpr std::array<double, 4> kProb = {
      55.0 / 256.0, 94.0 / 256.0, 59.0 / 256.0, 48.0 / 256.0};
  std::array<double, 4> obs{};
  const std::size_t blocks = seq.size() / 8;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    unsigned longest = 0, run = 0;
    for (std::size_t j = 0; j < 8; ++j) {
      if (seq[blk * 8 + j]) {
        if (++run > longest) longest = run;
      } else {
        run = 0;
      }
    }
    unsigned cat = longest <= 1 ? 0 : longest >= 4 ? 3 : longest - 1;
    obs[cat] += 1;
  }
  const double n_blocks = static_cast<double>(blocks);
  double chi2 = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = n_blocks * kProb[i];
    const double d = obs[i] - expected;
    chi2 += d * d / expected;
  }
  return igamc(1.5, chi2 / 2.0);
}

std::vector<TestResult> battery(const Bits& seq) {
  if (seq.size() < kMinBatteryLength)
    throw std::invalid_argument(
        "battery: sequence length " + std::to_string(seq.size()) +
        " is below the minimum of " + std::to_string(kMinBatteryLength) +
        " bits");
  std::vector<TestResult> out;
  out.push_back({"monobit", monobit_p(seq)});
  out.push_back({"runs", runs_p(seq)});
  out.push_back({"serial2", serial2_p(seq)});
  out.push_back({"longest_run8", longest_run8_p(seq)});
  return out;
}

bool passes(const std::vector<TestResult>& results, double alpha) {
  for (const auto& r : results)
    if (r.p_value < alpha) return false;
  return true;
}

double chi_square_sf(double chi2, double dof) {
  if (dof <= 0) return 1.0;
  if (chi2 <= 0) return 1.0;
  return igamc(dof / 2.0, chi2 / 2.0);
}

}  // namespace wsnsec::stattests
