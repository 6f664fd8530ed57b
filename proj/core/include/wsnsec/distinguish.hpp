#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wsnsec/bbs.hpp"
#include "wsnsec/bits.hpp"
#include "wsnsec/hashing.hpp"

namespace wsnsec::distinguish {

enum class SourceKind { Bbs, Lcg, Constant, Uniform, File };

std::string to_string(SourceKind kind);
SourceKind source_kind_from_string(const std::string& text);

struct SourceSpec {
  SourceKind kind = SourceKind::Bbs;
  unsigned bbs_bits = 512;  // BBS modulus bit length
  // Textbook power-of-two-modulus LCG (the classic rand() recurrence):
  // x <- (a x + c) mod 2^31, emitting the low bit of each state.
  std::uint32_t lcg_multiplier = 1103515245;
  std::uint32_t lcg_increment = 12345;
  unsigned lcg_modulus_bits = 31;
  int constant_bit = 0;
  std::string file_path;
};

class BitStream {
 public:
  virtual ~BitStream() = default;
  virtual int next_bit() = 0;
  Bits take(std::size_t count);
};

/// Builds per-trial streams from a master seed. Expensive per-experiment
/// setup (BBS modulus generation, file loading) happens once in the
/// constructor; make(trial) derives the per-trial seed by hashing
/// (master, label, trial), so trials are independent and reproducible.
class SourceFactory {
 public:
  SourceFactory(SourceSpec spec, Bytes master_seed);

  std::unique_ptr<BitStream> make(std::uint64_t trial_index) const;

  const SourceSpec& spec() const { return spec_; }
  const Bytes& master_seed() const { return master_; }

 private:
  SourceSpec spec_;
  Bytes master_;
  std::shared_ptr<const bbs::BbsParams> bbs_params_;
  std::shared_ptr<const Bits> file_bits_;
};

/// Decision procedure on an m-bit string: 1 = "looks non-uniform".
using Decision = std::function<bool(const Bits&)>;

struct AdvantageEstimate {
  std::string test_name;
  std::uint64_t trials = 0;
  double p1_hat = 0;     // trigger rate on the source under test
  double p2_hat = 0;     // trigger rate on the uniform reference
  double advantage = 0;  // |p1_hat - p2_hat|
  double ci95 = 0;       // 95% half-width, two-sample normal approximation
  double elapsed_seconds = 0;        // not part of any CSV (nondeterministic)
  std::uint64_t budget_exhausted = 0;  // trials aborted for exceeding budget
};

/// Runs `trials` paired trials: one m_len-bit sample from the source, one
/// from an independent uniform reference, both derived from master_seed.
/// A positive per_trial_budget_ns aborts (and counts) any trial whose
/// decision ran longer; 0 means unlimited.
AdvantageEstimate run_distinguisher(const Decision& decision,
                                    const std::string& name,
                                    const SourceFactory& source,
                                    std::size_t m_len, std::uint64_t trials,
                                    std::uint64_t per_trial_budget_ns = 0);

/// Decision "battery test <name> rejects at alpha" for name in
/// {monobit, runs, serial2, longest_run8}.
Decision battery_decision(const std::string& test_name, double alpha);

/// The default battery as distinguishers: one AdvantageEstimate per test.
std::vector<AdvantageEstimate> battery_advantages(const SourceFactory& source,
                                                  std::size_t m_len,
                                                  std::uint64_t trials,
                                                  double alpha = 0.01);

/// Next-bit predictor: given the first l bits, guess bit l (0-based).
using Predictor = std::function<int(const Bits& prefix)>;

struct AccuracyEstimate {
  std::string predictor_name;
  std::uint64_t trials = 0;
  double accuracy = 0;
  double ci95 = 0;
};

AccuracyEstimate next_bit_accuracy(const Predictor& predictor,
                                   const std::string& name,
                                   const SourceFactory& source,
                                   std::size_t prefix_len,
                                   std::uint64_t trials);

/// Registered predictors: "alternation" (flip the last bit; 1 on empty),
/// "majority" (majority of the prefix, ties and empty -> 1),
/// "constant_one".
Predictor named_predictor(const std::string& name);

}  // namespace wsnsec::distinguish
