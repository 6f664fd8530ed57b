#include <memory>
#include <stdexcept>
#include <string>

#include "common.hpp"
#include "wsnsec/bbs.hpp"
#include "wsnsec/csv.hpp"

namespace wsnseccli {

namespace {

struct BbsOptions {
  unsigned bits = 512;
  std::string seed_hex;  // raw --seed value (hex)
  std::uint64_t length = 256;
  std::string emit = "hex";
  std::string out;
  std::string primes;  // "p,q" testing hook
  std::string s;       // explicit seed value s
};

// --seed takes hex seed material. When absent, the bytes of WSNSEC_SEED (or
// the built-in default string) are used, and the manifest records whichever
// bytes were actually consumed.
std::string resolve_seed_hex(const std::string& flag_hex) {
  if (!flag_hex.empty()) {
    wsnsec::bytes_from_hex(flag_hex);  // validate early
    return flag_hex;
  }
  return wsnsec::bytes_to_hex(seed_bytes(resolve_seed("")));
}

}  // namespace

void run_bbs(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir) {
  namespace bbs = wsnsec::bbs;

  const unsigned bits = static_cast<unsigned>(kv.get_u64("bits"));
  const std::uint64_t length = kv.get_u64("length");
  const std::string emit = kv.get("emit");
  const std::string out = redirect_path(kv.get("out"), redirect_dir);
  const wsnsec::Bytes seed = wsnsec::bytes_from_hex(kv.get("seed_hex"));

  bbs::BbsParams params;
  if (kv.has("primes")) {
    const std::string& pq = kv.get("primes");
    auto comma = pq.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("--unsafe-small-primes expects p,q");
    }
    params = bbs::BbsParams::from_primes(bbs::parse_bigint(pq.substr(0, comma)),
                                         bbs::parse_bigint(pq.substr(comma + 1)));
  } else {
    params = bbs::BbsParams::generate(bits, seed);
  }

  bbs::bigint s;
  if (kv.has("s")) {
    s = bbs::parse_bigint(kv.get("s"));
  } else {
    wsnsec::ByteExpander expander(wsnsec::derive_bytes(seed, "bbs-seed-s"));
    s = bbs::derive_seed_s(params.n, expander);
  }

  bbs::BbsGenerator gen(params, s);
  const wsnsec::Bits stream = gen.generate(length);

  std::string content;
  if (emit == "hex") {
    content = wsnsec::bits_to_hex(stream) + "\n";
  } else if (emit == "bits") {
    content = wsnsec::bits_to_string(stream) + "\n";
  } else if (emit == "csv") {
    wsnsec::csv::Writer w({"index", "bit"});
    for (std::size_t i = 0; i < stream.size(); ++i) {
      w.add_row({wsnsec::csv::format_u64(i), std::string(1, char('0' + stream[i]))});
    }
    content = w.text();
  } else {
    throw std::runtime_error("unknown emit format: " + emit);
  }

  auto manifest = kv;
  manifest.set("out", out);
  emit_output(manifest, out, content);
}

void register_bbs(CLI::App& app) {
  auto opts = std::make_shared<BbsOptions>();
  CLI::App* sub = app.add_subcommand(
      "bbs", "Generate a Blum-Blum-Shub keystream (LSB of each square)");
  sub->add_option("--bits", opts->bits, "Modulus bit length")
      ->default_val(512u)
      ->check(CLI::Range(16u, 16384u));
  sub->add_option("--seed", opts->seed_hex, "Hex seed material");
  sub->add_option("--length", opts->length, "Output length in bits")
      ->default_val(std::uint64_t{256});
  sub->add_option("--emit", opts->emit, "Output format")
      ->default_val(std::string("hex"))
      ->check(CLI::IsMember({"hex", "bits", "csv"}));
  sub->add_option("--out", opts->out, "Output file (stdout when omitted)");
  sub->add_option("--unsafe-small-primes", opts->primes,
                  "Explicit p,q — testing only, bypasses --bits");
  sub->add_option("--s", opts->s, "Explicit seed value s (decimal or 0x hex)");

  sub->callback([opts]() {
    auto kv = manifest_skeleton("bbs");
    kv.set_u64("bits", opts->bits);
    kv.set("seed_hex", resolve_seed_hex(opts->seed_hex));
    kv.set_u64("length", opts->length);
    kv.set("emit", opts->emit);
    kv.set("out", opts->out);
    if (!opts->primes.empty()) kv.set("primes", opts->primes);
    if (!opts->s.empty()) kv.set("s", opts->s);
    run_bbs(kv, "");
  });
}

}  // namespace wsnseccli
