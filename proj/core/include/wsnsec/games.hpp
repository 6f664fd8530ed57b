#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wsnsec/bits.hpp"
#include "wsnsec/hashing.hpp"

namespace wsnsec::games {

// ---------------------------------------------------------------------------
// Security levels and the implication lattice
// ---------------------------------------------------------------------------

enum class Goal { IND, NM };
enum class Attack { CIA, CDA1, CDA2 };

struct SecurityLevel {
  Goal goal = Goal::IND;
  Attack attack = Attack::CIA;

  bool operator==(const SecurityLevel&) const = default;
};

std::string to_string(Goal goal);
std::string to_string(Attack attack);
std::string to_string(SecurityLevel level);
/// Parses "NM,CDA2" / "ind,cia" style level names.
SecurityLevel level_from_string(const std::string& text);

/// True iff b is reachable from a in the reflexive-transitive closure of the
/// relation diagram: NM and IND chains CDA2 -> CDA1 -> CIA, NM -> IND at
/// CDA1 and CIA, and NM <-> IND at CDA2.
bool implies(SecurityLevel a, SecurityLevel b);

// ---------------------------------------------------------------------------
// Communication systems
// ---------------------------------------------------------------------------

/// A communication system: insertion of a message into a transmission
/// support under a key, with extraction via the key inverse.
class CommSystem {
 public:
  virtual ~CommSystem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t key_len_bits() const = 0;   // ell
  virtual std::size_t message_len() const = 0;    // bytes
  virtual std::size_t support_len() const = 0;    // bytes
  virtual std::size_t transmitted_len() const = 0;
  virtual bool symmetric() const = 0;  // inv(k) == k

  virtual Bytes inv(const Bytes& key) const = 0;
  /// Embeds message into support; `rnd` supplies the fresh per-call
  /// randomness (ignored by deliberately deterministic variants).
  virtual Bytes insert(const Bytes& support, const Bytes& message,
                       const Bytes& key, ByteExpander& rnd) const = 0;
  /// Recovers the message, or nullopt on malformed input.
  virtual std::optional<Bytes> extract(const Bytes& transmitted,
                                       const Bytes& key) const = 0;

  /// Uniform draw from the declared support / message set.
  Bytes sample_support(ByteExpander& rnd) const;
  Bytes sample_message(ByteExpander& rnd) const;
};

/// Shipped reference systems:
///  - "xor":    fresh 16-byte nonce replaces the support header, payload
///              bytes carry message XOR keystream(key, nonce) — the secure
///              target;
///  - "broken": same embedder with the nonce pinned to zero (deterministic
///              insertion) — the guaranteed IND loss;
///  - "clear":  support with the message appended in clear — the guaranteed
///              DR loss.
std::unique_ptr<CommSystem> make_system(const std::string& name);
std::vector<std::string> system_names();

// ---------------------------------------------------------------------------
// Oracle discipline
// ---------------------------------------------------------------------------

enum class OracleKind { NA, AD1, AD2 };

std::string to_string(OracleKind kind);
OracleKind oracle_from_string(const std::string& text);

/// Maps oracle models onto the attack taxonomy (NA<->CIA, AD1<->CDA1,
/// AD2<->CDA2).
Attack attack_for(OracleKind kind);

/// Extraction oracle handed to adversaries. Query rules:
///   NA  — no queries at all;
///   AD1 — queries only before the challenge is fixed;
///   AD2 — queries in both phases, but never the challenge datum itself.
/// A forbidden query is refused (nullopt), counted, and invalidates the
/// trial; nothing about the challenge ever leaks through.
class OracleHandle {
 public:
  OracleHandle(OracleKind kind, const CommSystem& system, Bytes key);

  std::optional<Bytes> query(const Bytes& transmitted);

  void enter_challenge_phase(Bytes challenge);
  bool violated() const { return violated_; }
  std::uint64_t refused_queries() const { return refused_; }

 private:
  OracleKind kind_;
  const CommSystem& system_;
  Bytes inv_key_;
  bool challenge_phase_ = false;
  Bytes challenge_;
  bool violated_ = false;
  std::uint64_t refused_ = 0;
};

// ---------------------------------------------------------------------------
// Adversaries
// ---------------------------------------------------------------------------

/// Whether the experiment hands the adversary the key, as the game is
/// printed (Literal), or withholds it (Keyless). The literal reading makes
/// IND/DR trivially winnable for symmetric systems — both variants are
/// implemented and reported side by side.
enum class KeyVisibility { Literal, Keyless };

std::string to_string(KeyVisibility vis);
KeyVisibility key_visibility_from_string(const std::string& text);

struct IndChoice {
  Bytes m0, m1, support;
};

class IndAdversary {
 public:
  virtual ~IndAdversary() = default;
  virtual std::string name() const = 0;
  /// Phase 1: pick (m0, m1, support). `key` is empty under Keyless.
  virtual IndChoice choose(const Bytes& key, const CommSystem& system,
                           OracleHandle& oracle, ByteExpander& rnd) = 0;
  /// Phase 2: guess which message the challenge embeds (0 or 1).
  virtual int guess(const Bytes& key, const IndChoice& choice,
                    const Bytes& challenge, const CommSystem& system,
                    OracleHandle& oracle, ByteExpander& rnd) = 0;
};

class NmAdversary {
 public:
  virtual ~NmAdversary() = default;
  virtual std::string name() const = 0;
  /// Produce a transformed transmission from the observed one.
  virtual Bytes transform(const Bytes& observed, const CommSystem& system,
                          ByteExpander& rnd) = 0;
};

struct DrPair {
  Bytes first, second;  // unordered presentation of {decoy, embedding}
};

class DrAdversary {
 public:
  virtual ~DrAdversary() = default;
  virtual std::string name() const = 0;
  virtual Bytes choose_message(const Bytes& key, const CommSystem& system,
                               ByteExpander& rnd) = 0;
  /// Return 0 or 1: the element believed to be the decoy.
  virtual int identify_decoy(const Bytes& key, const Bytes& message,
                             const DrPair& pair, const CommSystem& system,
                             ByteExpander& rnd) = 0;
};

std::unique_ptr<IndAdversary> make_ind_adversary(const std::string& name);
std::unique_ptr<NmAdversary> make_nm_adversary(const std::string& name);
std::unique_ptr<DrAdversary> make_dr_adversary(const std::string& name);
std::vector<std::string> ind_adversary_names();
std::vector<std::string> nm_adversary_names();
std::vector<std::string> dr_adversary_names();

/// Decidable message relation R(m, m'). Registered names: "identity",
/// "flip_first_bit" (m' equals m with the first payload bit flipped),
/// "empty" (never holds).
using Relation = std::function<bool(const Bytes& m, const Bytes& m_prime)>;
Relation named_relation(const std::string& name);
std::vector<std::string> relation_names();

// ---------------------------------------------------------------------------
// Game runners
// ---------------------------------------------------------------------------

struct GameResult {
  std::string game;            // "ind" | "nm" | "dr"
  std::string system;
  std::string adversary;
  std::string oracle = "-";    // "-" for nm/dr
  std::string key_visibility = "-";  // "-" for nm
  std::string relation = "-";  // "-" for ind/dr
  std::uint64_t trials = 0;
  std::uint64_t valid_trials = 0;  // trials minus invalidated ones
  double success_prob = 0;
  double normalized_advantage = 0;  // 2|p - 1/2| for IND/DR, p for NM
  double ci_halfwidth = 0;          // 95%, over valid trials
  std::uint64_t violations = 0;     // invalidated trials
};

GameResult ind_game(const CommSystem& system, IndAdversary& adversary,
                    OracleKind oracle, KeyVisibility visibility,
                    std::uint64_t trials, const Bytes& master_seed);

/// NM has no oracle phases in the experiment as defined; extraction uses k
/// directly, which equals inv(k) for every shipped (symmetric) system. For
/// an asymmetric system the harness would use inv(k) — see symmetric().
GameResult nm_game(const CommSystem& system, NmAdversary& adversary,
                   const Relation& relation, const std::string& relation_name,
                   const Bytes& message, std::uint64_t trials,
                   const Bytes& master_seed);

GameResult dr_game(const CommSystem& system, DrAdversary& adversary,
                   KeyVisibility visibility, std::uint64_t trials,
                   const Bytes& master_seed);

/// Maximum normalized advantage over a named adversary suite (a lower bound
/// on the true insecurity, which ranges over all adversaries). Throws on an
/// empty suite.
GameResult ind_insecurity(const CommSystem& system,
                          const std::vector<std::string>& suite,
                          OracleKind oracle, KeyVisibility visibility,
                          std::uint64_t trials, const Bytes& master_seed);
GameResult dr_insecurity(const CommSystem& system,
                         const std::vector<std::string>& suite,
                         KeyVisibility visibility, std::uint64_t trials,
                         const Bytes& master_seed);

/// Correctness round-trip rate over `samples` random (s, m, k) triples
/// (expected: exactly 1).
double correctness_rate(const CommSystem& system, std::uint64_t samples,
                        const Bytes& master_seed);

/// Fraction of repeated insert(s, m, k) calls with fresh randomness that
/// produced identical transmissions (expected ~0 for "xor", 1 for the
/// deterministic variants).
double insertion_collision_rate(const CommSystem& system,
                                std::uint64_t samples,
                                const Bytes& master_seed);

}  // namespace wsnsec::games
