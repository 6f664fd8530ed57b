#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "wsnsec/csv.hpp"
#include "wsnsec/distinguish.hpp"

namespace wsnseccli {

namespace {

struct DistinguishOptions {
  std::string source = "bbs";
  unsigned bits = 512;
  std::uint64_t m = 128;
  std::uint64_t trials = 10000;
  std::string battery = "default";
  double alpha = 0.01;
  std::uint64_t budget_ns = 0;
  std::string file;
  std::string seed;
  std::string emit = "csv";
  std::string out;
};

}  // namespace

void run_distinguish(const wsnsec::config::KeyValues& kv,
                     const std::string& redirect_dir) {
  namespace dist = wsnsec::distinguish;

  if (kv.get("battery") != "default") {
    throw std::runtime_error("unknown battery: " + kv.get("battery"));
  }
  if (kv.get("emit") != "csv") {
    throw std::runtime_error("unknown emit format: " + kv.get("emit"));
  }

  dist::SourceSpec spec;
  spec.kind = dist::source_kind_from_string(kv.get("source"));
  spec.bbs_bits = static_cast<unsigned>(kv.get_u64("bits"));
  if (kv.has("file")) spec.file_path = kv.get("file");

  dist::SourceFactory factory(spec, seed_bytes(kv.get("seed")));
  const double alpha = kv.get_double("alpha");
  const std::uint64_t budget_ns = kv.get_u64("budget_ns");
  std::vector<dist::AdvantageEstimate> estimates;
  for (const char* name : {"monobit", "runs", "serial2", "longest_run8"}) {
    estimates.push_back(dist::run_distinguisher(
        dist::battery_decision(name, alpha), name, factory, kv.get_u64("m"),
        kv.get_u64("trials"), budget_ns));
  }

  wsnsec::csv::Writer w(
      {"test_name", "trials", "p1_hat", "p2_hat", "advantage", "ci95"});
  for (const auto& e : estimates) {
    w.add_row({e.test_name, wsnsec::csv::format_u64(e.trials),
               wsnsec::csv::format_double(e.p1_hat),
               wsnsec::csv::format_double(e.p2_hat),
               wsnsec::csv::format_double(e.advantage),
               wsnsec::csv::format_double(e.ci95)});
  }

  const std::string out = redirect_path(kv.get("out"), redirect_dir);
  auto manifest = kv;
  manifest.set("out", out);
  emit_output(manifest, out, w.text());
}

void register_distinguish(CLI::App& app) {
  auto opts = std::make_shared<DistinguishOptions>();
  CLI::App* sub = app.add_subcommand(
      "distinguish", "Estimate distinguishing advantage of the statistical "
                     "battery against a bit source");
  sub->add_option("--source", opts->source, "Source under test")
      ->default_val(std::string("bbs"))
      ->check(CLI::IsMember({"bbs", "lcg", "constant", "uniform", "file"}));
  sub->add_option("--bits", opts->bits, "BBS modulus bit length")
      ->default_val(512u);
  sub->add_option("--m", opts->m, "Sample length in bits per trial")
      ->default_val(std::uint64_t{128});
  sub->add_option("--trials", opts->trials, "Paired trials per test")
      ->default_val(std::uint64_t{10000});
  sub->add_option("--battery", opts->battery, "Test battery")
      ->default_val(std::string("default"))
      ->check(CLI::IsMember({"default"}));
  sub->add_option("--alpha", opts->alpha, "Rejection level per test")
      ->default_val(0.01);
  sub->add_option("--budget-ns", opts->budget_ns,
                  "Per-trial decision budget in nanoseconds (0 = unlimited)")
      ->default_val(std::uint64_t{0});
  sub->add_option("--file", opts->file, "Bit file for --source file");
  sub->add_option("--seed", opts->seed, "Seed text (default: WSNSEC_SEED or "
                                        "built-in)");
  sub->add_option("--emit", opts->emit, "Output format")
      ->default_val(std::string("csv"))
      ->check(CLI::IsMember({"csv"}));
  sub->add_option("--out", opts->out, "Output file (stdout when omitted)");

  sub->callback([opts]() {
    if (opts->source == "file" && opts->file.empty()) {
      throw CLI::ValidationError("distinguish",
                                 "--source file requires --file");
    }
    auto kv = manifest_skeleton("distinguish");
    kv.set("source", opts->source);
    kv.set_u64("bits", opts->bits);
    kv.set_u64("m", opts->m);
    kv.set_u64("trials", opts->trials);
    kv.set("battery", opts->battery);
    kv.set_double("alpha", opts->alpha);
    kv.set_u64("budget_ns", opts->budget_ns);
    if (!opts->file.empty()) kv.set("file", opts->file);
    kv.set("seed", resolve_seed(opts->seed));
    kv.set("emit", opts->emit);
    kv.set("out", opts->out);
    run_distinguish(kv, "");
  });
}

}  // namespace wsnseccli
