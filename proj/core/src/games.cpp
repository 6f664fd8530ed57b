#include "wsnsec/games.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace wsnsec::games {

namespace {

constexpr std::size_t kKeyBytes = 16;      // ell = 128 bits
constexpr std::size_t kMessageBytes = 16;
constexpr std::size_t kSupportBytes = 32;  // 16-byte header + 16-byte payload
constexpr std::size_t kNonceBytes = 16;

Bytes keystream(const Bytes& key, const Bytes& nonce, std::size_t len) {
  Bytes out;
  out.reserve(len);
  std::uint64_t counter = 0;
  while (out.size() < len) {
    Bytes block(key);
    block.insert(block.end(), nonce.begin(), nonce.end());
    for (int i = 7; i >= 0; --i)
      block.push_back(static_cast<std::uint8_t>(counter >> (8 * i)));
    auto digest = sha256(block);
    for (auto byte : digest) {
      if (out.size() == len) break;
      out.push_back(byte);
    }
    ++counter;
  }
  return out;
}

// Fresh-nonce XOR embedder; `fresh` false pins the nonce to zero, which is
// the deliberately broken deterministic variant.
class XorSystem : public CommSystem {
 public:
  explicit XorSystem(bool fresh) : fresh_(fresh) {}

  std::string name() const override { return fresh_ ? "xor" : "broken"; }
  std::size_t key_len_bits() const override { return kKeyBytes * 8; }
  std::size_t message_len() const override { return kMessageBytes; }
  std::size_t support_len() const override { return kSupportBytes; }
  std::size_t transmitted_len() const override { return kSupportBytes; }
  bool symmetric() const override { return true; }
  Bytes inv(const Bytes& key) const override { return key; }

  Bytes insert(const Bytes& support, const Bytes& message, const Bytes& key,
               ByteExpander& rnd) const override {
    require_sizes(support, message, key);
    Bytes nonce = fresh_ ? rnd.take(kNonceBytes) : Bytes(kNonceBytes, 0);
    Bytes ks = keystream(key, nonce, kMessageBytes);
    Bytes out = nonce;  // nonce replaces the support header bytes
    out.resize(kSupportBytes);
    for (std::size_t i = 0; i < kMessageBytes; ++i)
      out[kNonceBytes + i] = static_cast<std::uint8_t>(message[i] ^ ks[i]);
    return out;
  }

  std::optional<Bytes> extract(const Bytes& transmitted,
                               const Bytes& key) const override {
    if (transmitted.size() != transmitted_len() || key.size() != kKeyBytes)
      return std::nullopt;
    Bytes nonce(transmitted.begin(), transmitted.begin() + kNonceBytes);
    Bytes ks = keystream(key, nonce, kMessageBytes);
    Bytes message(kMessageBytes, 0);
    for (std::size_t i = 0; i < kMessageBytes; ++i)
      message[i] =
          static_cast<std::uint8_t>(transmitted[kNonceBytes + i] ^ ks[i]);
    return message;
  }

 private:
  static void require_sizes(const Bytes& support, const Bytes& message,
                            const Bytes& key) {
    if (support.size() != kSupportBytes)
      throw std::invalid_argument("support must be 32 bytes");
    if (message.size() != kMessageBytes)
      throw std::invalid_argument("message must be 16 bytes");
    if (key.size() != kKeyBytes)
      throw std::invalid_argument("key must be 16 bytes");
  }

  bool fresh_;
};

// Appends the message in clear — the guaranteed detection-resistance loss.
class ClearSystem : public CommSystem {
 public:
  std::string name() const override { return "clear"; }
  std::size_t key_len_bits() const override { return kKeyBytes * 8; }
  std::size_t message_len() const override { return kMessageBytes; }
  std::size_t support_len() const override { return kSupportBytes; }
  std::size_t transmitted_len() const override {
    return kSupportBytes + kMessageBytes;
  }
  bool symmetric() const override { return true; }
  Bytes inv(const Bytes& key) const override { return key; }

  Bytes insert(const Bytes& support, const Bytes& message, const Bytes& key,
               ByteExpander&) const override {
    if (support.size() != kSupportBytes || message.size() != kMessageBytes ||
        key.size() != kKeyBytes)
      throw std::invalid_argument("clear: bad support/message/key length");
    Bytes out = support;
    out.insert(out.end(), message.begin(), message.end());
    return out;
  }

  std::optional<Bytes> extract(const Bytes& transmitted,
                               const Bytes& key) const override {
    if (transmitted.size() != transmitted_len() || key.size() != kKeyBytes)
      return std::nullopt;
    return Bytes(transmitted.end() - kMessageBytes, transmitted.end());
  }
};

double halfwidth(double p, std::uint64_t n) {
  if (n == 0) return 0;
  return 1.96 * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

std::size_t level_index(SecurityLevel level) {
  return static_cast<std::size_t>(level.goal) * 3 +
         static_cast<std::size_t>(level.attack);
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Levels and implications
// ---------------------------------------------------------------------------

std::string to_string(Goal goal) { return goal == Goal::IND ? "IND" : "NM"; }

std::string to_string(Attack attack) {
  switch (attack) {
    case Attack::CIA: return "CIA";
    case Attack::CDA1: return "CDA1";
    case Attack::CDA2: return "CDA2";
  }
  return "?";
}

std::string to_string(SecurityLevel level) {
  return to_string(level.goal) + "," + to_string(level.attack);
}

SecurityLevel level_from_string(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("security level must look like NM,CDA2: " +
                                text);
  std::string goal = upper(text.substr(0, comma));
  std::string attack = upper(text.substr(comma + 1));
  SecurityLevel level;
  if (goal == "IND") level.goal = Goal::IND;
  else if (goal == "NM") level.goal = Goal::NM;
  else throw std::invalid_argument("unknown goal: " + goal);
  if (attack == "CIA") level.attack = Attack::CIA;
  else if (attack == "CDA1") level.attack = Attack::CDA1;
  else if (attack == "CDA2") level.attack = Attack::CDA2;
  else throw std::invalid_argument("unknown attack: " + attack);
  return level;
}

bool implies(SecurityLevel a, SecurityLevel b) {
  // Indices: goal*3 + attack; IND = 0, NM = 1; CIA = 0, CDA1 = 1, CDA2 = 2.
  constexpr std::size_t kNodes = 6;
  static const auto kClosure = [] {
    std::array<std::array<bool, kNodes>, kNodes> reach{};
    auto idx = [](Goal g, Attack a2) {
      return level_index(SecurityLevel{g, a2});
    };
    std::array<std::array<bool, kNodes>, kNodes> edge{};
    auto add = [&](Goal g1, Attack a1, Goal g2, Attack a2) {
      edge[idx(g1, a1)][idx(g2, a2)] = true;
    };
    // Horizontal chains: adaptive beats non-adaptive beats chosen-information.
    add(Goal::NM, Attack::CDA2, Goal::NM, Attack::CDA1);
    add(Goal::NM, Attack::CDA1, Goal::NM, Attack::CIA);
    add(Goal::IND, Attack::CDA2, Goal::IND, Attack::CDA1);
    add(Goal::IND, Attack::CDA1, Goal::IND, Attack::CIA);
    // NM implies IND at CDA1 and CIA; the two goals coincide at CDA2.
    add(Goal::NM, Attack::CDA1, Goal::IND, Attack::CDA1);
    add(Goal::NM, Attack::CIA, Goal::IND, Attack::CIA);
    add(Goal::NM, Attack::CDA2, Goal::IND, Attack::CDA2);
    add(Goal::IND, Attack::CDA2, Goal::NM, Attack::CDA2);
    for (std::size_t i = 0; i < kNodes; ++i) {
      reach[i][i] = true;
      for (std::size_t j = 0; j < kNodes; ++j)
        if (edge[i][j]) reach[i][j] = true;
    }
    for (std::size_t k = 0; k < kNodes; ++k)
      for (std::size_t i = 0; i < kNodes; ++i)
        for (std::size_t j = 0; j < kNodes; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
  }();
  return kClosure[level_index(a)][level_index(b)];
}

// ---------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------

Bytes CommSystem::sample_support(ByteExpander& rnd) const {
  return rnd.take(support_len());
}

Bytes CommSystem::sample_message(ByteExpander& rnd) const {
  return rnd.take(message_len());
}

std::unique_ptr<CommSystem> make_system(const std::string& name) {
  if (name == "xor") return std::make_unique<XorSystem>(true);
  if (name == "broken") return std::make_unique<XorSystem>(false);
  if (name == "clear") return std::make_unique<ClearSystem>();
  throw std::invalid_argument("unknown system: " + name);
}

std::vector<std::string> system_names() { return {"xor", "broken", "clear"}; }

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::NA: return "na";
    case OracleKind::AD1: return "ad1";
    case OracleKind::AD2: return "ad2";
  }
  return "?";
}

OracleKind oracle_from_string(const std::string& text) {
  if (text == "na") return OracleKind::NA;
  if (text == "ad1") return OracleKind::AD1;
  if (text == "ad2") return OracleKind::AD2;
  throw std::invalid_argument("unknown oracle model: " + text);
}

Attack attack_for(OracleKind kind) {
  switch (kind) {
    case OracleKind::NA: return Attack::CIA;
    case OracleKind::AD1: return Attack::CDA1;
    case OracleKind::AD2: return Attack::CDA2;
  }
  return Attack::CIA;
}

OracleHandle::OracleHandle(OracleKind kind, const CommSystem& system, Bytes key)
    : kind_(kind), system_(system), inv_key_(system.inv(std::move(key))) {}

std::optional<Bytes> OracleHandle::query(const Bytes& transmitted) {
  const bool forbidden =
      kind_ == OracleKind::NA ||
      (kind_ == OracleKind::AD1 && challenge_phase_) ||
      (kind_ == OracleKind::AD2 && challenge_phase_ &&
       transmitted == challenge_);
  if (forbidden) {
    ++refused_;
    violated_ = true;
    return std::nullopt;
  }
  return system_.extract(transmitted, inv_key_);
}

void OracleHandle::enter_challenge_phase(Bytes challenge) {
  challenge_phase_ = true;
  challenge_ = std::move(challenge);
}

// ---------------------------------------------------------------------------
// Adversaries
// ---------------------------------------------------------------------------

std::string to_string(KeyVisibility vis) {
  return vis == KeyVisibility::Literal ? "literal" : "keyless";
}

KeyVisibility key_visibility_from_string(const std::string& text) {
  if (text == "literal") return KeyVisibility::Literal;
  if (text == "keyless") return KeyVisibility::Keyless;
  throw std::invalid_argument("unknown key visibility: " + text);
}

namespace {

IndChoice default_choice(const CommSystem& system, ByteExpander& rnd) {
  IndChoice choice;
  choice.m0 = system.sample_message(rnd);
  choice.m1 = choice.m0;
  choice.m1[0] ^= 0x01;  // guaranteed distinct
  choice.support = system.sample_support(rnd);
  return choice;
}

class RandomGuessInd : public IndAdversary {
 public:
  std::string name() const override { return "random_guess"; }
  IndChoice choose(const Bytes&, const CommSystem& system, OracleHandle&,
                   ByteExpander& rnd) override {
    return default_choice(system, rnd);
  }
  int guess(const Bytes&, const IndChoice&, const Bytes&, const CommSystem&,
            OracleHandle&, ByteExpander& rnd) override {
    return rnd.next_bit();
  }
};

// Re-runs the insertion of m0 and compares; wins with certainty against
// deterministic insertion, collapses to chance against a fresh nonce.
class ReEmbedInd : public IndAdversary {
 public:
  std::string name() const override { return "re_embed"; }
  IndChoice choose(const Bytes&, const CommSystem& system, OracleHandle&,
                   ByteExpander& rnd) override {
    return default_choice(system, rnd);
  }
  int guess(const Bytes& key, const IndChoice& choice, const Bytes& challenge,
            const CommSystem& system, OracleHandle&,
            ByteExpander& rnd) override {
    if (key.empty()) return rnd.next_bit();
    Bytes again = system.insert(choice.support, choice.m0, key, rnd);
    return again == challenge ? 0 : 1;
  }
};

// Uses the literally-provided key to just extract the challenge — the
// demonstration that the game as printed is trivial for symmetric systems.
class DirectExtractInd : public IndAdversary {
 public:
  std::string name() const override { return "direct_extract"; }
  IndChoice choose(const Bytes&, const CommSystem& system, OracleHandle&,
                   ByteExpander& rnd) override {
    return default_choice(system, rnd);
  }
  int guess(const Bytes& key, const IndChoice& choice, const Bytes& challenge,
            const CommSystem& system, OracleHandle&,
            ByteExpander& rnd) override {
    if (key.empty()) return rnd.next_bit();
    auto message = system.extract(challenge, system.inv(key));
    if (!message) return rnd.next_bit();
    return *message == choice.m0 ? 0 : 1;
  }
};

// Deterministic function of the challenge bytes; a size-control adversary
// whose advantage must stay near zero on any sound system.
class ParityInd : public IndAdversary {
 public:
  std::string name() const override { return "parity"; }
  IndChoice choose(const Bytes&, const CommSystem& system, OracleHandle&,
                   ByteExpander& rnd) override {
    return default_choice(system, rnd);
  }
  int guess(const Bytes&, const IndChoice&, const Bytes& challenge,
            const CommSystem&, OracleHandle&, ByteExpander&) override {
    unsigned ones = 0;
    for (auto byte : challenge) ones += static_cast<unsigned>(std::popcount(byte));
    return static_cast<int>(ones & 1u);
  }
};

class CopyNm : public NmAdversary {
 public:
  std::string name() const override { return "copy"; }
  Bytes transform(const Bytes& observed, const CommSystem&,
                  ByteExpander&) override {
    return observed;
  }
};

// Flips the first bit of the message-carrying region — the classic stream-
// cipher malleability move.
class BitFlipNm : public NmAdversary {
 public:
  std::string name() const override { return "bit_flip"; }
  Bytes transform(const Bytes& observed, const CommSystem& system,
                  ByteExpander&) override {
    Bytes out = observed;
    const std::size_t payload =
        system.transmitted_len() - system.message_len();
    if (payload < out.size()) out[payload] ^= 0x01;
    return out;
  }
};

class RandomMangleNm : public NmAdversary {
 public:
  std::string name() const override { return "random_mangle"; }
  Bytes transform(const Bytes& observed, const CommSystem&,
                  ByteExpander& rnd) override {
    Bytes out = observed;
    if (!out.empty()) {
      const std::size_t pos =
          static_cast<std::size_t>(rnd.uniform_below(out.size()));
      out[pos] ^= static_cast<std::uint8_t>(1u << rnd.uniform_below(8));
    }
    return out;
  }
};

class RandomGuessDr : public DrAdversary {
 public:
  std::string name() const override { return "random_guess"; }
  Bytes choose_message(const Bytes&, const CommSystem& system,
                       ByteExpander& rnd) override {
    return system.sample_message(rnd);
  }
  int identify_decoy(const Bytes&, const Bytes&, const DrPair&,
                     const CommSystem&, ByteExpander& rnd) override {
    return rnd.next_bit();
  }
};

// With the literal key: extract both elements, the one yielding the chosen
// message is the embedding, so point at the other.
class ExtractCompareDr : public DrAdversary {
 public:
  std::string name() const override { return "extract_compare"; }
  Bytes choose_message(const Bytes&, const CommSystem& system,
                       ByteExpander& rnd) override {
    return system.sample_message(rnd);
  }
  int identify_decoy(const Bytes& key, const Bytes& message,
                     const DrPair& pair, const CommSystem& system,
                     ByteExpander& rnd) override {
    if (key.empty()) return rnd.next_bit();
    const Bytes inv = system.inv(key);
    auto m0 = system.extract(pair.first, inv);
    auto m1 = system.extract(pair.second, inv);
    const bool first_embeds = m0 && *m0 == message;
    const bool second_embeds = m1 && *m1 == message;
    if (first_embeds && !second_embeds) return 1;
    if (second_embeds && !first_embeds) return 0;
    return rnd.next_bit();
  }
};

// Keyless structural detector: a clear-append embedding betrays itself by
// its length or its message suffix.
class ClearSpotDr : public DrAdversary {
 public:
  std::string name() const override { return "clear_spot"; }
  Bytes choose_message(const Bytes&, const CommSystem& system,
                       ByteExpander& rnd) override {
    return system.sample_message(rnd);
  }
  int identify_decoy(const Bytes&, const Bytes& message, const DrPair& pair,
                     const CommSystem&, ByteExpander& rnd) override {
    if (pair.first.size() != pair.second.size())
      return pair.first.size() < pair.second.size() ? 0 : 1;
    auto has_suffix = [&](const Bytes& datum) {
      return datum.size() >= message.size() &&
             std::equal(message.begin(), message.end(),
                        datum.end() - static_cast<std::ptrdiff_t>(message.size()));
    };
    const bool first_embeds = has_suffix(pair.first);
    const bool second_embeds = has_suffix(pair.second);
    if (first_embeds && !second_embeds) return 1;
    if (second_embeds && !first_embeds) return 0;
    return rnd.next_bit();
  }
};

class ParityDr : public DrAdversary {
 public:
  std::string name() const override { return "parity"; }
  Bytes choose_message(const Bytes&, const CommSystem& system,
                       ByteExpander& rnd) override {
    return system.sample_message(rnd);
  }
  int identify_decoy(const Bytes&, const Bytes&, const DrPair& pair,
                     const CommSystem&, ByteExpander&) override {
    unsigned ones = 0;
    for (auto byte : pair.first) ones += static_cast<unsigned>(std::popcount(byte));
    return static_cast<int>(ones & 1u);
  }
};

}  // namespace

std::unique_ptr<IndAdversary> make_ind_adversary(const std::string& name) {
  if (name == "random_guess") return std::make_unique<RandomGuessInd>();
  if (name == "re_embed") return std::make_unique<ReEmbedInd>();
  if (name == "direct_extract") return std::make_unique<DirectExtractInd>();
  if (name == "parity") return std::make_unique<ParityInd>();
  throw std::invalid_argument("unknown IND adversary: " + name);
}

std::unique_ptr<NmAdversary> make_nm_adversary(const std::string& name) {
  if (name == "copy") return std::make_unique<CopyNm>();
  if (name == "bit_flip") return std::make_unique<BitFlipNm>();
  if (name == "random_mangle") return std::make_unique<RandomMangleNm>();
  throw std::invalid_argument("unknown NM adversary: " + name);
}

std::unique_ptr<DrAdversary> make_dr_adversary(const std::string& name) {
  if (name == "random_guess") return std::make_unique<RandomGuessDr>();
  if (name == "extract_compare") return std::make_unique<ExtractCompareDr>();
  if (name == "clear_spot") return std::make_unique<ClearSpotDr>();
  if (name == "parity") return std::make_unique<ParityDr>();
  throw std::invalid_argument("unknown DR adversary: " + name);
}

std::vector<std::string> ind_adversary_names() {
  return {"random_guess", "re_embed", "direct_extract", "parity"};
}
std::vector<std::string> nm_adversary_names() {
  return {"copy", "bit_flip", "random_mangle"};
}
std::vector<std::string> dr_adversary_names() {
  return {"random_guess", "extract_compare", "clear_spot", "parity"};
}

Relation named_relation(const std::string& name) {
  if (name == "identity")
    return [](const Bytes& m, const Bytes& mp) { return m == mp; };
  if (name == "flip_first_bit")
    return [](const Bytes& m, const Bytes& mp) {
      if (m.size() != mp.size() || m.empty()) return false;
      if (mp[0] != (m[0] ^ 0x01)) return false;
      return std::equal(m.begin() + 1, m.end(), mp.begin() + 1);
    };
  if (name == "empty") return [](const Bytes&, const Bytes&) { return false; };
  throw std::invalid_argument("unknown relation: " + name);
}

std::vector<std::string> relation_names() {
  return {"identity", "flip_first_bit", "empty"};
}

// ---------------------------------------------------------------------------
// Game runners
// ---------------------------------------------------------------------------

GameResult ind_game(const CommSystem& system, IndAdversary& adversary,
                    OracleKind oracle_kind, KeyVisibility visibility,
                    std::uint64_t trials, const Bytes& master_seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  GameResult result;
  result.game = "ind";
  result.system = system.name();
  result.adversary = adversary.name();
  result.oracle = to_string(oracle_kind);
  result.key_visibility = to_string(visibility);
  result.trials = trials;

  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ByteExpander rnd(derive_bytes(master_seed, "ind-trial", t));
    Bytes key = rnd.take(system.key_len_bits() / 8);
    OracleHandle oracle(oracle_kind, system, key);
    const Bytes key_view =
        visibility == KeyVisibility::Literal ? key : Bytes{};

    IndChoice choice = adversary.choose(key_view, system, oracle, rnd);
    const bool malformed = choice.m0.size() != system.message_len() ||
                           choice.m1.size() != system.message_len() ||
                           choice.m0 == choice.m1 ||
                           choice.support.size() != system.support_len();
    if (malformed || oracle.violated()) {
      ++result.violations;
      continue;
    }

    const int b = rnd.next_bit();
    Bytes challenge =
        system.insert(choice.support, b ? choice.m1 : choice.m0, key, rnd);
    oracle.enter_challenge_phase(challenge);
    const int guess =
        adversary.guess(key_view, choice, challenge, system, oracle, rnd);
    if (oracle.violated()) {
      ++result.violations;
      continue;
    }
    ++result.valid_trials;
    if (guess == b) ++wins;
  }

  if (result.valid_trials > 0) {
    result.success_prob =
        static_cast<double>(wins) / static_cast<double>(result.valid_trials);
    result.normalized_advantage = 2.0 * std::abs(result.success_prob - 0.5);
    result.ci_halfwidth = halfwidth(result.success_prob, result.valid_trials);
  }
  return result;
}

GameResult nm_game(const CommSystem& system, NmAdversary& adversary,
                   const Relation& relation, const std::string& relation_name,
                   const Bytes& message, std::uint64_t trials,
                   const Bytes& master_seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (message.size() != system.message_len())
    throw std::invalid_argument("message length does not fit the system");
  GameResult result;
  result.game = "nm";
  result.system = system.name();
  result.adversary = adversary.name();
  result.relation = relation_name;
  result.trials = trials;

  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ByteExpander rnd(derive_bytes(master_seed, "nm-trial", t));
    Bytes key = rnd.take(system.key_len_bits() / 8);
    Bytes support = system.sample_support(rnd);
    Bytes observed = system.insert(support, message, key, rnd);
    Bytes transformed = adversary.transform(observed, system, rnd);
    // Extraction uses k as the experiment is printed; identical to inv(k)
    // for symmetric systems, and inv(k) otherwise.
    const Bytes ek = system.symmetric() ? key : system.inv(key);
    auto extracted = system.extract(transformed, ek);
    ++result.valid_trials;
    if (extracted && relation(message, *extracted)) ++wins;  // errors = losses
  }

  result.success_prob =
      static_cast<double>(wins) / static_cast<double>(result.valid_trials);
  result.normalized_advantage = result.success_prob;
  result.ci_halfwidth = halfwidth(result.success_prob, result.valid_trials);
  return result;
}

GameResult dr_game(const CommSystem& system, DrAdversary& adversary,
                   KeyVisibility visibility, std::uint64_t trials,
                   const Bytes& master_seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  GameResult result;
  result.game = "dr";
  result.system = system.name();
  result.adversary = adversary.name();
  result.key_visibility = to_string(visibility);
  result.trials = trials;

  std::uint64_t wins = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ByteExpander rnd(derive_bytes(master_seed, "dr-trial", t));
    Bytes key = rnd.take(system.key_len_bits() / 8);
    Bytes support0 = system.sample_support(rnd);
    Bytes support1 = system.sample_support(rnd);
    const Bytes key_view =
        visibility == KeyVisibility::Literal ? key : Bytes{};
    Bytes message = adversary.choose_message(key_view, system, rnd);
    if (message.size() != system.message_len()) {
      ++result.violations;
      continue;
    }
    const int b = rnd.next_bit();  // which support stays a decoy
    Bytes embedding =
        system.insert(b ? support0 : support1, message, key, rnd);
    const Bytes& decoy = b ? support1 : support0;
    const int order = rnd.next_bit();  // seeded-random presentation order
    DrPair pair;
    int decoy_index;
    if (order) {
      pair.first = embedding;
      pair.second = decoy;
      decoy_index = 1;
    } else {
      pair.first = decoy;
      pair.second = embedding;
      decoy_index = 0;
    }
    const int guess =
        adversary.identify_decoy(key_view, message, pair, system, rnd);
    ++result.valid_trials;
    if (guess == decoy_index) ++wins;
  }

  if (result.valid_trials > 0) {
    result.success_prob =
        static_cast<double>(wins) / static_cast<double>(result.valid_trials);
    result.normalized_advantage = 2.0 * std::abs(result.success_prob - 0.5);
    result.ci_halfwidth = halfwidth(result.success_prob, result.valid_trials);
  }
  return result;
}

namespace {

GameResult max_result(std::vector<GameResult> results) {
  if (results.empty())
    throw std::invalid_argument("adversary suite must be non-empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].normalized_advantage >
        results[best].normalized_advantage)
      best = i;
  return results[best];
}

}  // namespace

GameResult ind_insecurity(const CommSystem& system,
                          const std::vector<std::string>& suite,
                          OracleKind oracle, KeyVisibility visibility,
                          std::uint64_t trials, const Bytes& master_seed) {
  std::vector<GameResult> results;
  for (const auto& name : suite) {
    auto adversary = make_ind_adversary(name);
    results.push_back(
        ind_game(system, *adversary, oracle, visibility, trials, master_seed));
  }
  return max_result(std::move(results));
}

GameResult dr_insecurity(const CommSystem& system,
                         const std::vector<std::string>& suite,
                         KeyVisibility visibility, std::uint64_t trials,
                         const Bytes& master_seed) {
  std::vector<GameResult> results;
  for (const auto& name : suite) {
    auto adversary = make_dr_adversary(name);
    results.push_back(
        dr_game(system, *adversary, visibility, trials, master_seed));
  }
  return max_result(std::move(results));
}

double correctness_rate(const CommSystem& system, std::uint64_t samples,
                        const Bytes& master_seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::uint64_t ok = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    ByteExpander rnd(derive_bytes(master_seed, "correctness", i));
    Bytes key = rnd.take(system.key_len_bits() / 8);
    Bytes support = system.sample_support(rnd);
    Bytes message = system.sample_message(rnd);
    Bytes transmitted = system.insert(support, message, key, rnd);
    auto back = system.extract(transmitted, system.inv(key));
    if (back && *back == message) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(samples);
}

double insertion_collision_rate(const CommSystem& system,
                                std::uint64_t samples,
                                const Bytes& master_seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::uint64_t collisions = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    ByteExpander rnd(derive_bytes(master_seed, "collision", i));
    Bytes key = rnd.take(system.key_len_bits() / 8);
    Bytes support = system.sample_support(rnd);
    Bytes message = system.sample_message(rnd);
    ByteExpander r1(derive_bytes(master_seed, "collision-r1", i));
    ByteExpander r2(derive_bytes(master_seed, "collision-r2", i));
    if (system.insert(support, message, key, r1) ==
        system.insert(support, message, key, r2))
      ++collisions;
  }
  return static_cast<double>(collisions) / static_cast<double>(samples);
}

}  // namespace wsnsec::games
