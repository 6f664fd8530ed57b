#include "wsnsec/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "wsnsec/hashing.hpp"
#include "wsnsec/rng.hpp"
#include "wsnsec/sched.hpp"
#include "wsnsec/stattests.hpp"

namespace wsnsec::sim {

namespace {

constexpr double kMicro = 1e6;

std::int64_t to_micro(double units) {
  return static_cast<std::int64_t>(std::llround(units * kMicro));
}

std::uint64_t exact_multiple(double value, double quantum, const char* what) {
  const double ratio = value / quantum;
  const auto k = static_cast<std::uint64_t>(std::llround(ratio));
  if (k < 1 || std::abs(static_cast<double>(k) * quantum - value) >
                   1e-9 * std::max(1.0, value))
    throw std::invalid_argument(std::string(what) +
                                " must be a positive multiple of quantum");
  return k;
}

distinguish::SourceSpec scheduler_spec(const SimConfig& cfg) {
  distinguish::SourceSpec spec;
  spec.kind = cfg.scheduler;
  spec.bbs_bits = cfg.bbs_bits;
  spec.lcg_multiplier = cfg.lcg_multiplier;
  spec.lcg_increment = cfg.lcg_increment;
  spec.lcg_modulus_bits = cfg.lcg_modulus_bits;
  return spec;
}

Bytes seed_bytes(const SimConfig& cfg) {
  return Bytes(cfg.master_seed.begin(), cfg.master_seed.end());
}

// Full mutable world state plus the seeded randomness streams.
class World {
 public:
  explicit World(const SimConfig& cfg)
      : cfg_(cfg),
        seed_(seed_bytes(cfg)),
        intrusion_engine_(derive_u64(seed_, "intrusion", 0)),
        awake_micro_(to_micro(cfg.awake_cost * cfg.quantum)),
        asleep_micro_(to_micro(cfg.asleep_cost * cfg.quantum)),
        radio_micro_(to_micro(cfg.radio_cost)) {
    deploy();
    if (cfg_.sched_mode == SchedMode::Local) {
      distinguish::SourceFactory factory(scheduler_spec(cfg_),
                                         derive_bytes(seed_, "sim-sched", 0));
      node_streams_.reserve(cfg_.node_count);
      for (std::uint32_t i = 0; i < cfg_.node_count; ++i)
        node_streams_.push_back(factory.make(i));
    } else {
      distinguish::SourceFactory factory(
          scheduler_spec(cfg_), derive_bytes(seed_, "sim-sched-global", 0));
      global_stream_ = factory.make(0);
      global_width_ = sched::block_bits(cfg_.node_count);
      // Global mode starts everyone awake; orders then flip one node per
      // slot. virtual_awake_ mirrors what the stream alone dictates, so the
      // uniformity measure is untouched by deaths.
      virtual_awake_.assign(cfg_.node_count, 1);
      for (NodeState& node : nodes_) node.awake = true;
    }
    wake_counts_.assign(cfg_.node_count, 0);
  }

  void apply_schedule(std::uint64_t /*slot*/) {
    if (cfg_.sched_mode == SchedMode::Local) {
      for (std::uint32_t i = 0; i < cfg_.node_count; ++i) {
        const int bit = node_streams_[i]->next_bit();
        wake_counts_[i] += static_cast<std::uint64_t>(bit);
        NodeState& node = nodes_[i];
        node.awake = bit != 0 && node.alive;  // dead nodes ignore orders
      }
    } else {
      const std::uint32_t id = next_global_order();
      virtual_awake_[id] ^= 1;
      NodeState& node = nodes_[id];
      if (node.alive) node.awake = !node.awake;
      for (std::uint32_t i = 0; i < cfg_.node_count; ++i)
        wake_counts_[i] += virtual_awake_[i];
    }
  }

  void begin_slot_record() {
    if (!cfg_.record_timeline) return;
    slot_record_.awake.assign(cfg_.node_count, 0);
    slot_record_.alive.assign(cfg_.node_count, 0);
    slot_record_.drained_micro.assign(cfg_.node_count, 0);
    for (std::uint32_t i = 0; i < cfg_.node_count; ++i) {
      slot_record_.awake[i] = nodes_[i].awake ? 1 : 0;
      slot_record_.alive[i] = nodes_[i].alive ? 1 : 0;
    }
  }

  void do_intrusions(std::uint64_t slot, std::vector<IntrusionEvent>& events) {
    const double lambda = cfg_.intrusion_rate * cfg_.quantum;
    const std::uint64_t count = poisson_sample(intrusion_engine_, lambda);
    for (std::uint64_t e = 0; e < count; ++e) {
      IntrusionEvent event;
      event.slot = slot;
      event.x = uniform_unit(intrusion_engine_) * cfg_.area_width;
      event.y = uniform_unit(intrusion_engine_) * cfg_.area_height;
      const double r2 = cfg_.sensing_radius * cfg_.sensing_radius;
      double best = std::numeric_limits<double>::infinity();
      std::int64_t witness = -1;
      for (const NodeState& node : nodes_) {
        if (!node.awake || !node.alive) continue;
        const double dx = node.x - event.x, dy = node.y - event.y;
        const double d2 = dx * dx + dy * dy;
        // strict < keeps the lowest id on ties (ids ascend in nodes_)
        if (d2 <= r2 && d2 < best) {
          best = d2;
          witness = node.id;
        }
      }
      ++intrusions_cum_;
      if (witness >= 0) {
        ++detections_cum_;
        event.detected = true;
        event.witness_id = witness;
        event.witness_distance = std::sqrt(best);
        charge(nodes_[static_cast<std::size_t>(witness)], radio_micro_, slot);
      }
      events.push_back(event);
    }
  }

  void do_drain(std::uint64_t slot) {
    for (NodeState& node : nodes_) {
      if (!node.alive) continue;
      charge(node, node.awake ? awake_micro_ : asleep_micro_, slot);
    }
  }

  void finish_slot_record(std::vector<SlotRecord>& timeline) {
    if (!cfg_.record_timeline) return;
    timeline.push_back(slot_record_);
  }

  TraceRow row(double time) const {
    TraceRow r;
    r.time = time;
    const double n = static_cast<double>(cfg_.node_count);
    double awake = 0, alive = 0, sum = 0, sum_sq = 0;
    for (const NodeState& node : nodes_) {
      awake += node.awake ? 1 : 0;
      alive += node.alive ? 1 : 0;
      const double e = static_cast<double>(node.energy_micro) / kMicro;
      sum += e;
      sum_sq += e * e;
    }
    r.active_fraction = awake / n;
    r.alive_fraction = alive / n;
    r.energy_mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - r.energy_mean * r.energy_mean);
    r.energy_stddev = std::sqrt(var);
    r.detections_cum = detections_cum_;
    r.intrusions_cum = intrusions_cum_;
    return r;
  }

  std::vector<NodeState> take_nodes() { return std::move(nodes_); }
  const std::vector<NodeState>& nodes() const { return nodes_; }
  std::vector<std::uint64_t> take_wake_counts() {
    return std::move(wake_counts_);
  }

 private:
  void deploy() {
    std::mt19937_64 engine(derive_u64(seed_, "deploy", 0));
    nodes_.resize(cfg_.node_count);
    for (std::uint32_t i = 0; i < cfg_.node_count; ++i) {
      NodeState& node = nodes_[i];
      node.id = i;
      node.x = uniform_unit(engine) * cfg_.area_width;
      node.y = uniform_unit(engine) * cfg_.area_height;
      node.energy_micro = to_micro(cfg_.initial_energy);
      node.alive = true;
      node.awake = false;  // slot-0 schedule decides
    }
  }

  std::uint32_t next_global_order() {
    for (;;) {
      std::uint32_t id = 0;
      for (unsigned j = 0; j < global_width_; ++j)
        id = (id << 1) | static_cast<std::uint32_t>(global_stream_->next_bit());
      if (id < cfg_.node_count) return id;  // rejection keeps ids uniform
    }
  }

  void charge(NodeState& node, std::int64_t cost, std::uint64_t slot) {
    const std::int64_t actual = std::min(cost, node.energy_micro);
    node.energy_micro -= actual;
    node.drained_micro += actual;
    if (cfg_.record_timeline) slot_record_.drained_micro[node.id] += actual;
    if (node.energy_micro == 0 && node.alive) {
      node.alive = false;
      node.awake = false;
      node.death_slot = static_cast<std::int64_t>(slot);
    }
  }

  const SimConfig& cfg_;
  Bytes seed_;
  std::vector<NodeState> nodes_;
  std::vector<std::unique_ptr<distinguish::BitStream>> node_streams_;
  std::unique_ptr<distinguish::BitStream> global_stream_;
  unsigned global_width_ = 0;
  std::vector<std::uint8_t> virtual_awake_;
  std::vector<std::uint64_t> wake_counts_;
  std::mt19937_64 intrusion_engine_;
  std::int64_t awake_micro_, asleep_micro_, radio_micro_;
  std::uint64_t detections_cum_ = 0, intrusions_cum_ = 0;
  SlotRecord slot_record_;
};

}  // namespace

std::string to_string(SchedMode mode) {
  return mode == SchedMode::Local ? "local" : "global";
}

SchedMode sched_mode_from_string(const std::string& text) {
  if (text == "local") return SchedMode::Local;
  if (text == "global") return SchedMode::Global;
  throw std::invalid_argument("unknown sched_mode: " + text);
}

void validate(const SimConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(cfg.area_width, "area_width");
  positive(cfg.area_height, "area_height");
  positive(cfg.initial_energy, "initial_energy");
  positive(cfg.awake_cost, "awake_cost");
  positive(cfg.asleep_cost, "asleep_cost");
  positive(cfg.sensing_radius, "sensing_radius");
  positive(cfg.quantum, "quantum");
  positive(cfg.horizon, "horizon");
  positive(cfg.sample_period, "sample_period");
  if (cfg.radio_cost < 0 || !std::isfinite(cfg.radio_cost))
    throw std::invalid_argument("radio_cost must be >= 0");
  if (cfg.intrusion_rate < 0 || !std::isfinite(cfg.intrusion_rate))
    throw std::invalid_argument("intrusion_rate must be >= 0");
  if (cfg.node_count < 1)
    throw std::invalid_argument("node_count must be >= 1");
  if (!(cfg.asleep_cost < cfg.awake_cost))
    throw std::invalid_argument("asleep_cost must be below awake_cost");
  exact_multiple(cfg.sample_period, cfg.quantum, "sample_period");
  exact_multiple(cfg.horizon, cfg.quantum, "horizon");
  if (cfg.scheduler != distinguish::SourceKind::Bbs &&
      cfg.scheduler != distinguish::SourceKind::Lcg)
    throw std::invalid_argument("scheduler must be bbs or lcg");
  if (cfg.bbs_bits < 16)
    throw std::invalid_argument("bbs_bits must be >= 16");
  if (cfg.lcg_modulus_bits < 1 || cfg.lcg_modulus_bits > 63)
    throw std::invalid_argument("lcg_modulus_bits must lie in [1, 63]");
  if (cfg.master_seed.empty())
    throw std::invalid_argument("master_seed must be non-empty");
}

SimConfig config_from_kv(const config::KeyValues& kv) {
  SimConfig cfg;
  for (const auto& [key, value] : kv.items()) {
    if (key == "area_width") cfg.area_width = kv.get_double(key);
    else if (key == "area_height") cfg.area_height = kv.get_double(key);
    else if (key == "node_count")
      cfg.node_count = static_cast<std::uint32_t>(kv.get_u64(key));
    else if (key == "initial_energy") cfg.initial_energy = kv.get_double(key);
    else if (key == "awake_cost") cfg.awake_cost = kv.get_double(key);
    else if (key == "asleep_cost") cfg.asleep_cost = kv.get_double(key);
    else if (key == "radio_cost") cfg.radio_cost = kv.get_double(key);
    else if (key == "sensing_radius") cfg.sensing_radius = kv.get_double(key);
    else if (key == "quantum") cfg.quantum = kv.get_double(key);
    else if (key == "horizon") cfg.horizon = kv.get_double(key);
    else if (key == "sample_period") cfg.sample_period = kv.get_double(key);
    else if (key == "intrusion_rate") cfg.intrusion_rate = kv.get_double(key);
    else if (key == "scheduler")
      cfg.scheduler = distinguish::source_kind_from_string(value);
    else if (key == "sched_mode") cfg.sched_mode = sched_mode_from_string(value);
    else if (key == "bbs_bits")
      cfg.bbs_bits = static_cast<unsigned>(kv.get_u64(key));
    else if (key == "lcg_multiplier")
      cfg.lcg_multiplier = static_cast<std::uint32_t>(kv.get_u64(key));
    else if (key == "lcg_increment")
      cfg.lcg_increment = static_cast<std::uint32_t>(kv.get_u64(key));
    else if (key == "lcg_modulus_bits")
      cfg.lcg_modulus_bits = static_cast<unsigned>(kv.get_u64(key));
    else if (key == "master_seed") cfg.master_seed = value;
    else if (key == "record_timeline") cfg.record_timeline = kv.get_bool(key);
    else
      throw std::invalid_argument("unknown simulation config key: " + key);
  }
  validate(cfg);
  return cfg;
}

config::KeyValues config_to_kv(const SimConfig& cfg) {
  config::KeyValues kv;
  kv.set_double("area_width", cfg.area_width);
  kv.set_double("area_height", cfg.area_height);
  kv.set_u64("node_count", cfg.node_count);
  kv.set_double("initial_energy", cfg.initial_energy);
  kv.set_double("awake_cost", cfg.awake_cost);
  kv.set_double("asleep_cost", cfg.asleep_cost);
  kv.set_double("radio_cost", cfg.radio_cost);
  kv.set_double("sensing_radius", cfg.sensing_radius);
  kv.set_double("quantum", cfg.quantum);
  kv.set_double("horizon", cfg.horizon);
  kv.set_double("sample_period", cfg.sample_period);
  kv.set_double("intrusion_rate", cfg.intrusion_rate);
  kv.set("scheduler", distinguish::to_string(cfg.scheduler));
  kv.set("sched_mode", to_string(cfg.sched_mode));
  kv.set_u64("bbs_bits", cfg.bbs_bits);
  kv.set_u64("lcg_multiplier", cfg.lcg_multiplier);
  kv.set_u64("lcg_increment", cfg.lcg_increment);
  kv.set_u64("lcg_modulus_bits", cfg.lcg_modulus_bits);
  kv.set("master_seed", cfg.master_seed);
  kv.set_bool("record_timeline", cfg.record_timeline);
  return kv;
}

std::vector<NodeState> init_field(const SimConfig& cfg) {
  validate(cfg);
  World world(cfg);
  world.apply_schedule(0);
  return std::vector<NodeState>(world.nodes());
}

SimResult run(const SimConfig& cfg) {
  validate(cfg);
  const std::uint64_t slots = exact_multiple(cfg.horizon, cfg.quantum, "horizon");
  const std::uint64_t stride =
      exact_multiple(cfg.sample_period, cfg.quantum, "sample_period");

  World world(cfg);
  SimResult result;
  result.slots = slots;

  world.apply_schedule(0);
  result.trace.push_back(world.row(0.0));
  for (std::uint64_t t = 0; t < slots; ++t) {
    if (t > 0) world.apply_schedule(t);
    world.begin_slot_record();
    world.do_intrusions(t, result.intrusions);
    world.do_drain(t);
    world.finish_slot_record(result.timeline);
    if ((t + 1) % stride == 0)
      result.trace.push_back(
          world.row(static_cast<double>(t + 1) * cfg.quantum));
  }
  result.scheduled_wake_counts = world.take_wake_counts();
  result.final_nodes = world.take_nodes();
  return result;
}

UniformityStat wake_uniformity(const std::vector<std::uint64_t>& counts) {
  UniformityStat stat;
  if (counts.size() < 2) return stat;
  double mean = 0;
  for (auto c : counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(counts.size());
  stat.dof = static_cast<double>(counts.size() - 1);
  if (mean == 0) return stat;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - mean;
    stat.chi2 += d * d / mean;
  }
  stat.p_value = stattests::chi_square_sf(stat.chi2, stat.dof);
  return stat;
}

Comparison compare_schedulers(const SimConfig& base) {
  SimConfig cfg_a = base;
  cfg_a.scheduler = distinguish::SourceKind::Bbs;
  SimConfig cfg_b = base;
  cfg_b.scheduler = distinguish::SourceKind::Lcg;

  Comparison cmp;
  cmp.a = run(cfg_a);
  cmp.b = run(cfg_b);

  auto time_avg_stddev = [](const SimResult& r) {
    if (r.trace.empty()) return 0.0;
    double sum = 0;
    for (const auto& row : r.trace) sum += row.energy_stddev;
    return sum / static_cast<double>(r.trace.size());
  };
  cmp.summary.scheduler_a = "bbs";
  cmp.summary.scheduler_b = "lcg";
  cmp.summary.stddev_time_avg_a = time_avg_stddev(cmp.a);
  cmp.summary.stddev_time_avg_b = time_avg_stddev(cmp.b);
  cmp.summary.stddev_diff_a_minus_b =
      cmp.summary.stddev_time_avg_a - cmp.summary.stddev_time_avg_b;
  cmp.summary.uniformity_a = wake_uniformity(cmp.a.scheduled_wake_counts);
  cmp.summary.uniformity_b = wake_uniformity(cmp.b.scheduled_wake_counts);
  return cmp;
}

csv::Table trace_table(const SimResult& result) {
  csv::Writer writer({"time", "active_fraction", "alive_fraction",
                      "energy_mean", "energy_stddev", "detections_cum",
                      "intrusions_cum"});
  for (const TraceRow& r : result.trace)
    writer.add_row({csv::format_double(r.time),
                    csv::format_double(r.active_fraction),
                    csv::format_double(r.alive_fraction),
                    csv::format_double(r.energy_mean),
                    csv::format_double(r.energy_stddev),
                    csv::format_u64(r.detections_cum),
                    csv::format_u64(r.intrusions_cum)});
  return writer.table();
}

csv::Table comparison_table(const Comparison& cmp) {
  if (cmp.a.trace.size() != cmp.b.trace.size())
    throw std::logic_error("paired traces must have equal length");
  std::vector<std::string> header{"time"};
  for (const char* side : {"bbs", "lcg"})
    for (const char* col :
         {"active_fraction", "alive_fraction", "energy_mean", "energy_stddev",
          "detections_cum", "intrusions_cum"})
      header.push_back(std::string(col) + "_" + side);
  csv::Writer writer(std::move(header));
  for (std::size_t i = 0; i < cmp.a.trace.size(); ++i) {
    const TraceRow& a = cmp.a.trace[i];
    const TraceRow& b = cmp.b.trace[i];
    writer.add_row({csv::format_double(a.time),
                    csv::format_double(a.active_fraction),
                    csv::format_double(a.alive_fraction),
                    csv::format_double(a.energy_mean),
                    csv::format_double(a.energy_stddev),
                    csv::format_u64(a.detections_cum),
                    csv::format_u64(a.intrusions_cum),
                    csv::format_double(b.active_fraction),
                    csv::format_double(b.alive_fraction),
                    csv::format_double(b.energy_mean),
                    csv::format_double(b.energy_stddev),
                    csv::format_u64(b.detections_cum),
                    csv::format_u64(b.intrusions_cum)});
  }
  return writer.table();
}

config::KeyValues summary_kv(const ComparisonSummary& s) {
  config::KeyValues kv;
  kv.set("scheduler_a", s.scheduler_a);
  kv.set("scheduler_b", s.scheduler_b);
  kv.set_double("stddev_time_avg_a", s.stddev_time_avg_a);
  kv.set_double("stddev_time_avg_b", s.stddev_time_avg_b);
  kv.set_double("stddev_diff_a_minus_b", s.stddev_diff_a_minus_b);
  kv.set_double("wake_chi2_a", s.uniformity_a.chi2);
  kv.set_double("wake_chi2_dof_a", s.uniformity_a.dof);
  kv.set_double("wake_chi2_p_a", s.uniformity_a.p_value);
  kv.set_double("wake_chi2_b", s.uniformity_b.chi2);
  kv.set_double("wake_chi2_dof_b", s.uniformity_b.dof);
  kv.set_double("wake_chi2_p_b", s.uniformity_b.p_value);
  return kv;
}

}  // namespace wsnsec::sim
