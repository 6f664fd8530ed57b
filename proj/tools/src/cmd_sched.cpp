#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "common.hpp"
#include "wsnsec/csv.hpp"
#include "wsnsec/distinguish.hpp"
#include "wsnsec/sched.hpp"

namespace wsnseccli {

namespace {

struct SchedOptions {
  std::string mode = "local";
  std::string bits_from = "bbs";
  std::string file;
  std::uint64_t length = 1024;
  double quantum = 1.0;
  std::uint32_t nodes = 128;
  std::uint32_t node_id = 0;
  unsigned bbs_bits = 512;
  std::string seed;
  std::string emit = "csv";
  std::string out;
};

wsnsec::Bits file_bits(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open bit file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  wsnsec::Bits bits;
  for (char c : buf.str()) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::runtime_error("bit file contains non-bit character");
    }
  }
  return bits;
}

wsnsec::Bits gather_bits(const wsnsec::config::KeyValues& kv) {
  namespace dist = wsnsec::distinguish;
  const std::string from = kv.get("bits_from");
  const std::uint64_t length = kv.get_u64("length");
  if (from == "file") {
    wsnsec::Bits bits = file_bits(kv.get("file"));
    if (bits.size() < length) {
      throw std::runtime_error("bit file shorter than requested length");
    }
    bits.resize(length);
    return bits;
  }
  dist::SourceSpec spec;
  spec.kind = dist::source_kind_from_string(from);
  spec.bbs_bits = static_cast<unsigned>(kv.get_u64("bbs_bits"));
  dist::SourceFactory factory(spec, seed_bytes(kv.get("seed")));
  return factory.make(0)->take(length);
}

}  // namespace

void run_sched(const wsnsec::config::KeyValues& kv,
               const std::string& redirect_dir) {
  namespace sched = wsnsec::sched;

  const wsnsec::Bits bits = gather_bits(kv);
  const std::string mode = kv.get("mode");

  wsnsec::csv::Writer w(mode == "local"
                            ? std::vector<std::string>{"slot", "awake"}
                            : std::vector<std::string>{"time_slot", "node_id"});
  if (mode == "local") {
    const sched::WakePlan plan = sched::local_schedule(
        bits, kv.get_double("quantum"), static_cast<std::uint32_t>(kv.get_u64("node_id")));
    for (std::size_t k = 0; k < plan.slots.size(); ++k) {
      w.add_row({wsnsec::csv::format_u64(k),
                 std::string(1, char('0' + plan.slots[k]))});
    }
  } else if (mode == "global") {
    const auto orders = sched::global_schedule(
        bits, static_cast<std::uint32_t>(kv.get_u64("nodes")));
    for (const auto& order : orders) {
      w.add_row({wsnsec::csv::format_u64(order.time_slot),
                 wsnsec::csv::format_u64(order.node_id)});
    }
  } else {
    throw std::runtime_error("unknown mode: " + mode);
  }

  const std::string out = redirect_path(kv.get("out"), redirect_dir);
  auto manifest = kv;
  manifest.set("out", out);
  emit_output(manifest, out, w.text());
}

void register_sched(CLI::App& app) {
  auto opts = std::make_shared<SchedOptions>();
  CLI::App* sub = app.add_subcommand(
      "sched", "Turn a bitstream into a wake plan (local) or wake orders "
               "(global)");
  sub->add_option("--mode", opts->mode, "Scheduling mode")
      ->default_val(std::string("local"))
      ->check(CLI::IsMember({"local", "global"}));
  sub->add_option("--bits-from", opts->bits_from, "Bitstream source")
      ->default_val(std::string("bbs"))
      ->check(CLI::IsMember({"bbs", "lcg", "file"}));
  sub->add_option("--file", opts->file, "Bit file for --bits-from file "
                                        "(0/1 characters, whitespace ignored)");
  sub->add_option("--length", opts->length, "Bits to draw from the source")
      ->default_val(std::uint64_t{1024});
  sub->add_option("--quantum", opts->quantum, "Seconds per slot")
      ->default_val(1.0);
  sub->add_option("--nodes", opts->nodes, "Node count (global mode)")
      ->default_val(std::uint32_t{128});
  sub->add_option("--node-id", opts->node_id, "Node id stamped on a local plan")
      ->default_val(std::uint32_t{0});
  sub->add_option("--bbs-bits", opts->bbs_bits, "BBS modulus bit length")
      ->default_val(512u);
  sub->add_option("--seed", opts->seed, "Seed text (default: WSNSEC_SEED or "
                                        "built-in)");
  sub->add_option("--emit", opts->emit, "Output format")
      ->default_val(std::string("csv"))
      ->check(CLI::IsMember({"csv"}));
  sub->add_option("--out", opts->out, "Output file (stdout when omitted)");

  sub->callback([opts]() {
    if (opts->bits_from == "file" && opts->file.empty()) {
      throw CLI::ValidationError("sched", "--bits-from file requires --file");
    }
    auto kv = manifest_skeleton("sched");
    kv.set("mode", opts->mode);
    kv.set("bits_from", opts->bits_from);
    if (!opts->file.empty()) kv.set("file", opts->file);
    kv.set_u64("length", opts->length);
    kv.set_double("quantum", opts->quantum);
    kv.set_u64("nodes", opts->nodes);
    kv.set_u64("node_id", opts->node_id);
    kv.set_u64("bbs_bits", opts->bbs_bits);
    kv.set("seed", resolve_seed(opts->seed));
    kv.set("emit", opts->emit);
    kv.set("out", opts->out);
    run_sched(kv, "");
  });
}

}  // namespace wsnseccli
