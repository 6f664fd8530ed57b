#include "wsnsec/sched.hpp"

#include <stdexcept>

namespace wsnsec::sched {

double WakePlan::duty_cycle() const {
  if (slots.empty()) return 0.0;
  return static_cast<double>(count_ones(slots)) /
         static_cast<double>(slots.size());
}

WakePlan local_schedule(const Bits& bits, double quantum,
                        std::uint32_t node_id) {
  if (!(quantum > 0)) throw std::invalid_argument("quantum must be positive");
  WakePlan plan;
  plan.node_id = node_id;
  plan.slots = bits;
  plan.quantum = quantum;
  plan.empty_flagged = bits.empty();
  return plan;
}

Bits plan_bits(const WakePlan& plan) { return plan.slots; }

unsigned block_bits(std::uint32_t num_nodes) {
  if (num_nodes == 0)
    throw std::invalid_argument("num_nodes must be >= 1");
  unsigned bits = 0;
  // ceil(log2(n)): width of n-1, i.e. smallest b with 2^b >= n.
  while ((std::uint64_t{1} << bits) < num_nodes) ++bits;
  return bits == 0 ? 1 : bits;
}

std::vector<ToggleOrder> global_schedule(const Bits& bits,
                                         std::uint32_t num_nodes) {
  const unsigned width = block_bits(num_nodes);
  std::vector<ToggleOrder> orders;
  orders.reserve(bits.size() / width);
  std::uint64_t emitted = 0;
  for (std::size_t start = 0; start + width <= bits.size(); start += width) {
    std::uint32_t id = 0;
    for (unsigned j = 0; j < width; ++j)
      id = (id << 1) | bits[start + j];
    if (id >= num_nodes) continue;  // rejection keeps ids uniform
    orders.push_back(ToggleOrder{emitted++, id});
  }
  return orders;
}

double duty_cycle(const WakePlan& plan) { return plan.duty_cycle(); }

}  // namespace wsnsec::sched
