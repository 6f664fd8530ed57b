#include "wsnsec/distinguish.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "wsnsec/rng.hpp"
#include "wsnsec/stattests.hpp"

namespace wsnsec::distinguish {

namespace {

class BbsStream : public BitStream {
 public:
  BbsStream(std::shared_ptr<const bbs::BbsParams> params, const bbs::bigint& s)
      : params_(std::move(params)), gen_(*params_, s) {}
  int next_bit() override { return gen_.next_bit(); }

 private:
  std::shared_ptr<const bbs::BbsParams> params_;
  bbs::BbsGenerator gen_;
};

class LcgStream : public BitStream {
 public:
  LcgStream(std::uint64_t seed, std::uint32_t a, std::uint32_t c, unsigned bits)
      : a_(a), c_(c), mask_((std::uint64_t{1} << bits) - 1), x_(seed & mask_) {}
  int next_bit() override {
    x_ = (a_ * x_ + c_) & mask_;
    return static_cast<int>(x_ & 1);
  }

 private:
  std::uint64_t a_, c_, mask_, x_;
};

class ConstantStream : public BitStream {
 public:
  explicit ConstantStream(int bit) : bit_(bit) {}
  int next_bit() override { return bit_; }

 private:
  int bit_;
};

class UniformStream : public BitStream {
 public:
  explicit UniformStream(std::uint64_t seed) : bits_(seed) {}
  int next_bit() override { return bits_.next(); }

 private:
  UniformBitStream bits_;
};

class FileStream : public BitStream {
 public:
  explicit FileStream(std::shared_ptr<const Bits> bits)
      : bits_(std::move(bits)) {}
  int next_bit() override {
    if (pos_ >= bits_->size())
      throw std::out_of_range("file bit source exhausted");
    return (*bits_)[pos_++];
  }

 private:
  std::shared_ptr<const Bits> bits_;
  std::size_t pos_ = 0;
};

Bits load_bits_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bit file: " + path);
  Bits bits;
  char ch;
  while (in.get(ch)) {
    if (ch == '0' || ch == '1') {
      bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (ch != '\n' && ch != '\r' && ch != ' ' && ch != '\t') {
      throw std::runtime_error(std::string("bit file contains invalid byte '") +
                               ch + "': " + path);
    }
  }
  return bits;
}

double binom_halfwidth(double p, double n) {
  return 1.96 * std::sqrt(p * (1.0 - p) / n);
}

}  // namespace

Bits BitStream::take(std::size_t count) {
  Bits out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(static_cast<std::uint8_t>(next_bit()));
  return out;
}

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Bbs: return "bbs";
    case SourceKind::Lcg: return "lcg";
    case SourceKind::Constant: return "constant";
    case SourceKind::Uniform: return "uniform";
    case SourceKind::File: return "file";
  }
  return "?";
}

SourceKind source_kind_from_string(const std::string& text) {
  if (text == "bbs") return SourceKind::Bbs;
  if (text == "lcg") return SourceKind::Lcg;
  if (text == "constant") return SourceKind::Constant;
  if (text == "uniform") return SourceKind::Uniform;
  if (text == "file") return SourceKind::File;
  throw std::invalid_argument("unknown source kind: " + text);
}

SourceFactory::SourceFactory(SourceSpec spec, Bytes master_seed)
    : spec_(std::move(spec)), master_(std::move(master_seed)) {
  if (spec_.kind == SourceKind::Bbs) {
    bbs_params_ = std::make_shared<bbs::BbsParams>(bbs::BbsParams::generate(
        spec_.bbs_bits, derive_bytes(master_, "distinguish-bbs-params", 0)));
  } else if (spec_.kind == SourceKind::File) {
    file_bits_ = std::make_shared<Bits>(load_bits_file(spec_.file_path));
  }
}

std::unique_ptr<BitStream> SourceFactory::make(std::uint64_t trial) const {
  switch (spec_.kind) {
    case SourceKind::Bbs: {
      ByteExpander exp(derive_bytes(master_, "bbs-seed", trial));
      return std::make_unique<BbsStream>(bbs_params_,
                                         bbs::derive_seed_s(bbs_params_->n, exp));
    }
    case SourceKind::Lcg:
      return std::make_unique<LcgStream>(derive_u64(master_, "lcg-seed", trial),
                                         spec_.lcg_multiplier,
                                         spec_.lcg_increment,
                                         spec_.lcg_modulus_bits);
    case SourceKind::Constant:
      return std::make_unique<ConstantStream>(spec_.constant_bit);
    case SourceKind::Uniform:
      return std::make_unique<UniformStream>(
          derive_u64(master_, "uniform-source", trial));
    case SourceKind::File:
      return std::make_unique<FileStream>(file_bits_);
  }
  throw std::logic_error("unreachable source kind");
}

AdvantageEstimate run_distinguisher(const Decision& decision,
                                    const std::string& name,
                                    const SourceFactory& source,
                                    std::size_t m_len, std::uint64_t trials,
                                    std::uint64_t per_trial_budget_ns) {
  if (m_len < 1) throw std::invalid_argument("m_len must be >= 1");
  if (trials < 30)
    throw std::invalid_argument("need >= 30 trials for the CI approximation");

  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  std::uint64_t hits1 = 0, hits2 = 0, counted = 0, exhausted = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Bits sample = source.make(trial)->take(m_len);
    UniformStream reference(derive_u64(source.master_seed(),
                                       "uniform-reference", trial));
    Bits ref_sample = reference.take(m_len);

    const auto trial_start = clock::now();
    bool d1 = decision(sample);
    bool d2 = decision(ref_sample);
    if (per_trial_budget_ns > 0) {
      auto spent = std::chrono::duration_cast<std::chrono::nanoseconds>(
                       clock::now() - trial_start)
                       .count();
      if (static_cast<std::uint64_t>(spent) > per_trial_budget_ns) {
        ++exhausted;  // budget blown: result discarded, trial counted here
        continue;
      }
    }
    hits1 += d1;
    hits2 += d2;
    ++counted;
  }

  AdvantageEstimate est;
  est.test_name = name;
  est.trials = trials;
  est.budget_exhausted = exhausted;
  if (counted > 0) {
    const double n = static_cast<double>(counted);
    est.p1_hat = static_cast<double>(hits1) / n;
    est.p2_hat = static_cast<double>(hits2) / n;
    est.advantage = std::abs(est.p1_hat - est.p2_hat);
    est.ci95 = 1.96 * std::sqrt(est.p1_hat * (1 - est.p1_hat) / n +
                                est.p2_hat * (1 - est.p2_hat) / n);
  }
  est.elapsed_seconds =
      std::chrono::duration<double>(clock::now() - start).count();
  return est;
}

Decision battery_decision(const std::string& test_name, double alpha) {
  if (test_name == "monobit")
    return [alpha](const Bits& s) { return stattests::monobit_p(s) < alpha; };
  if (test_name == "runs")
    return [alpha](const Bits& s) { return stattests::runs_p(s) < alpha; };
  if (test_name == "serial2")
    return [alpha](const Bits& s) { return stattests::serial2_p(s) < alpha; };
  if (test_name == "longest_run8")
    return
        [alpha](const Bits& s) { return stattests::longest_run8_p(s) < alpha; };
  throw std::invalid_argument("unknown battery test: " + test_name);
}

std::vector<AdvantageEstimate> battery_advantages(const SourceFactory& source,
                                                  std::size_t m_len,
                                                  std::uint64_t trials,
                                                  double alpha) {
  std::vector<AdvantageEstimate> out;
  for (const char* name : {"monobit", "runs", "serial2", "longest_run8"})
    out.push_back(run_distinguisher(battery_decision(name, alpha), name,
                                    source, m_len, trials));
  return out;
}

AccuracyEstimate next_bit_accuracy(const Predictor& predictor,
                                   const std::string& name,
                                   const SourceFactory& source,
                                   std::size_t prefix_len,
                                   std::uint64_t trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    auto stream = source.make(trial);
    Bits prefix = stream->take(prefix_len);
    int actual = stream->next_bit();
    if (predictor(prefix) == actual) ++hits;
  }
  AccuracyEstimate est;
  est.predictor_name = name;
  est.trials = trials;
  est.accuracy = static_cast<double>(hits) / static_cast<double>(trials);
  est.ci95 = binom_halfwidth(est.accuracy, static_cast<double>(trials));
  return est;
}

Predictor named_predictor(const std::string& name) {
  if (name == "alternation")
    return [](const Bits& prefix) {
      return prefix.empty() ? 1 : 1 - prefix.back();
    };
  if (name == "majority")
    return [](const Bits& prefix) {
      return 2 * count_ones(prefix) >= prefix.size() ? 1 : 0;
    };
  if (name == "constant_one") return [](const Bits&) { return 1; };
  throw std::invalid_argument("unknown predictor: " + name);
}

}  // namespace wsnsec::distinguish
