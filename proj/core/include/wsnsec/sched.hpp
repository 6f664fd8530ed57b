#pragma once

#include <cstdint>
#include <vector>

#include "wsnsec/bits.hpp"

namespace wsnsec::sched {

struct WakePlan {
  std::uint32_t node_id = 0;
  Bits slots;           // slot k awake <=> slots[k] == 1
  double quantum = 1.0; // seconds per slot
  bool empty_flagged = false;  // true when built from an empty bitstream

  double duty_cycle() const;  // 0 when the plan is empty (flag set)
};

/// A global-mode wake order: flip the awake state of node_id at time_slot.
struct ToggleOrder {
  std::uint64_t time_slot = 0;  // index in emission order
  std::uint32_t node_id = 0;
};

/// Slot k awake iff bits[k] == 1.
WakePlan local_schedule(const Bits& bits, double quantum,
                        std::uint32_t node_id = 0);

/// Recovers the bitstream a plan was built from (local_schedule inverse).
Bits plan_bits(const WakePlan& plan);

/// Block size used by global scheduling: max(1, ceil(log2(num_nodes))).
unsigned block_bits(std::uint32_t num_nodes);

/// Splits bits into consecutive big-endian blocks of block_bits(num_nodes);
/// blocks decoding to id >= num_nodes are discarded (rejection, not modulo),
/// as is a trailing partial block. time_slot is the emission order index.
std::vector<ToggleOrder> global_schedule(const Bits& bits,
                                         std::uint32_t num_nodes);

double duty_cycle(const WakePlan& plan);

}  // namespace wsnsec::sched
