#include <memory>
#include <set>
#include <string>

#include "common.hpp"
#include "wsnsec/csv.hpp"
#include "wsnsec/sim.hpp"

namespace wsnseccli {

namespace {

struct SimulateOptions {
  std::string config;
  std::string emit;  // trace/comparison output path; stdout when empty
  bool compare = false;
  std::string seed;
};

// Manifest keys that are ours, not the simulator's.
const std::set<std::string>& cli_keys() {
  static const std::set<std::string> keys = {"subcommand", "tool_version",
                                             "out", "compare"};
  return keys;
}

wsnsec::sim::SimConfig config_from_manifest(const wsnsec::config::KeyValues& kv) {
  wsnsec::config::KeyValues cfg_kv;
  for (const auto& [key, value] : kv.items()) {
    if (!cli_keys().contains(key)) cfg_kv.set(key, value);
  }
  return wsnsec::sim::config_from_kv(cfg_kv);
}

}  // namespace

void run_simulate(const wsnsec::config::KeyValues& kv,
                  const std::string& redirect_dir) {
  namespace sim = wsnsec::sim;

  const sim::SimConfig cfg = config_from_manifest(kv);
  const bool compare = kv.get_bool("compare");
  const std::string out = redirect_path(kv.get("out"), redirect_dir);

  auto manifest = kv;
  manifest.set("out", out);

  if (!compare) {
    const sim::SimResult result = sim::run(cfg);
    emit_output(manifest, out, wsnsec::csv::to_text(sim::trace_table(result)));
    return;
  }

  const sim::Comparison comparison = sim::compare_schedulers(cfg);
  const std::string table_text =
      wsnsec::csv::to_text(sim::comparison_table(comparison));
  const std::string summary_text = sim::summary_kv(comparison.summary).to_text();
  if (out.empty()) {
    emit_output(manifest, out, table_text + "\n" + summary_text);
    return;
  }
  emit_output(manifest, out, table_text);
  wsnsec::config::KeyValues summary =
      wsnsec::config::KeyValues::parse(summary_text);
  summary.write_file(out + ".summary");
}

void register_simulate(CLI::App& app) {
  auto opts = std::make_shared<SimulateOptions>();
  CLI::App* sub = app.add_subcommand(
      "simulate", "Run the duty-cycled field simulation and emit its trace");
  sub->add_option("--config", opts->config,
                  "key = value simulation config (defaults used when omitted)");
  sub->add_option("--emit", opts->emit,
                  "Trace CSV path (stdout when omitted); --compare also "
                  "writes <path>.summary");
  sub->add_flag("--compare", opts->compare,
                "Run the bbs and lcg schedulers side by side on identical "
                "deployment and intrusion randomness");
  sub->add_option("--seed", opts->seed,
                  "Master seed override (beats the config file's master_seed)");

  sub->callback([opts]() {
    wsnsec::sim::SimConfig cfg;
    bool config_has_seed = false;
    if (!opts->config.empty()) {
      auto file_kv = wsnsec::config::KeyValues::parse_file(opts->config);
      config_has_seed = file_kv.has("master_seed");
      cfg = wsnsec::sim::config_from_kv(file_kv);
    }
    if (!opts->seed.empty()) {
      cfg.master_seed = opts->seed;
    } else if (!config_has_seed) {
      cfg.master_seed = resolve_seed("");
    }
    wsnsec::sim::validate(cfg);

    auto kv = manifest_skeleton("simulate");
    const auto cfg_kv = wsnsec::sim::config_to_kv(cfg);
    for (const auto& [key, value] : cfg_kv.items()) {
      kv.set(key, value);
    }
    kv.set_bool("compare", opts->compare);
    kv.set("out", opts->emit);
    run_simulate(kv, "");
  });
}

}  // namespace wsnseccli
