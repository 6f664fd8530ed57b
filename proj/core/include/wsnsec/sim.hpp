#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsnsec/config.hpp"
#include "wsnsec/csv.hpp"
#include "wsnsec/distinguish.hpp"

namespace wsnsec::sim {

enum class SchedMode { Local, Global };

std::string to_string(SchedMode mode);
SchedMode sched_mode_from_string(const std::string& text);

struct SimConfig {
  double area_width = 75.0;    // meters
  double area_height = 75.0;   // meters
  std::uint32_t node_count = 128;
  double initial_energy = 1000.0;  // energy units
  double awake_cost = 1.0;         // units/second while awake
  double asleep_cost = 0.01;       // units/second while asleep
  double radio_cost = 0.1;         // units per detection report
  double sensing_radius = 10.0;    // meters
  double quantum = 1.0;            // seconds per slot
  double horizon = 3600.0;         // seconds (multiple of quantum)
  double sample_period = 10.0;     // seconds (multiple of quantum)
  double intrusion_rate = 0.02;    // expected intrusions per second
  // Scheduling bitstream generator: bbs or lcg, with its parameters.
  distinguish::SourceKind scheduler = distinguish::SourceKind::Bbs;
  SchedMode sched_mode = SchedMode::Local;
  unsigned bbs_bits = 512;
  std::uint32_t lcg_multiplier = 1103515245;
  std::uint32_t lcg_increment = 12345;
  unsigned lcg_modulus_bits = 31;
  // Seed text: its bytes feed every derived stream (deploy, intrusion,
  // per-node scheduling).
  std::string master_seed = "wsnsec-default-seed";
  // Test hook: retain per-slot awake/alive/drain history in the result.
  bool record_timeline = false;
};

/// Throws std::invalid_argument on any violated invariant (positivity,
/// asleep_cost < awake_cost, sample_period and horizon multiples of quantum,
/// scheduler in {bbs, lcg}).
void validate(const SimConfig& config);

SimConfig config_from_kv(const config::KeyValues& kv);
/// Fully resolved form (every field explicit) — used as the run manifest.
config::KeyValues config_to_kv(const SimConfig& config);

struct NodeState {
  std::uint32_t id = 0;
  double x = 0, y = 0;
  std::int64_t energy_micro = 0;  // integer micro-units, exact accounting
  bool awake = false;
  bool alive = true;
  std::int64_t death_slot = -1;   // slot index the node died in, -1 if alive
  std::int64_t drained_micro = 0; // lifetime total drained
};

struct TraceRow {
  double time = 0;
  double active_fraction = 0;
  double alive_fraction = 0;
  double energy_mean = 0;
  double energy_stddev = 0;  // population standard deviation
  std::uint64_t detections_cum = 0;
  std::uint64_t intrusions_cum = 0;
};

struct IntrusionEvent {
  std::uint64_t slot = 0;
  double x = 0, y = 0;
  bool detected = false;
  std::int64_t witness_id = -1;   // nearest awake alive node, lowest id on tie
  double witness_distance = -1;   // meters; -1 when undetected
};

/// Per-slot snapshot kept only when record_timeline is set.
struct SlotRecord {
  std::vector<std::uint8_t> awake;          // state during the slot
  std::vector<std::uint8_t> alive;          // state during the slot
  std::vector<std::int64_t> drained_micro;  // actual drain charged in the slot
};

struct SimResult {
  std::vector<TraceRow> trace;
  std::vector<IntrusionEvent> intrusions;
  std::vector<NodeState> final_nodes;
  // Scheduled awake slots per node, counted from the scheduling stream
  // alone (deaths ignored) — the scheduler-uniformity measure.
  std::vector<std::uint64_t> scheduled_wake_counts;
  std::vector<SlotRecord> timeline;  // empty unless record_timeline
  std::uint64_t slots = 0;
};

/// Seeded deployment plus the slot-0 schedule applied; all nodes alive.
std::vector<NodeState> init_field(const SimConfig& config);

SimResult run(const SimConfig& config);

/// Chi-square dispersion statistic sum (c_i - mean)^2 / mean over the given
/// counts, plus its survival-function p-value at node_count - 1 degrees of
/// freedom.
struct UniformityStat {
  double chi2 = 0;
  double dof = 0;
  double p_value = 1;
};
UniformityStat wake_uniformity(const std::vector<std::uint64_t>& counts);

struct ComparisonSummary {
  std::string scheduler_a;  // "bbs"
  std::string scheduler_b;  // "lcg"
  double stddev_time_avg_a = 0;
  double stddev_time_avg_b = 0;
  double stddev_diff_a_minus_b = 0;  // signed, reported not asserted
  UniformityStat uniformity_a;
  UniformityStat uniformity_b;
};

struct Comparison {
  SimResult a;  // bbs
  SimResult b;  // lcg
  ComparisonSummary summary;
};

/// Runs the configuration twice — scheduler bbs versus lcg — with identical
/// deployment and intrusion randomness (both derive only from master_seed).
Comparison compare_schedulers(const SimConfig& base);

csv::Table trace_table(const SimResult& result);
/// Side-by-side table: time, then each trace column suffixed _bbs / _lcg.
csv::Table comparison_table(const Comparison& comparison);
config::KeyValues summary_kv(const ComparisonSummary& summary);

}  // namespace wsnsec::sim
