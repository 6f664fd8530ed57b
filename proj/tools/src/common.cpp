#include "common.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace wsnseccli {

std::string resolve_seed(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    return env;
  }
  return kDefaultSeed;
}

wsnsec::Bytes seed_bytes(const std::string& seed_text) {
  return wsnsec::Bytes(seed_text.begin(), seed_text.end());
}

wsnsec::config::KeyValues manifest_skeleton(const std::string& subcommand) {
  wsnsec::config::KeyValues kv;
  kv.set("subcommand", subcommand);
  kv.set("tool_version", WSNSEC_VERSION);
  return kv;
}

void emit_output(const wsnsec::config::KeyValues& manifest,
                 const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + out_path);
  }
  manifest.write_file(out_path + ".manifest");
}

std::string redirect_path(const std::string& out, const std::string& redirect_dir) {
  if (redirect_dir.empty() || out.empty()) return out;
  std::filesystem::path base = std::filesystem::path(out).filename();
  return (std::filesystem::path(redirect_dir) / base).string();
}

void run_from_manifest(const wsnsec::config::KeyValues& kv,
                       const std::string& redirect_dir) {
  const std::string sub = kv.get("subcommand");
  if (sub == "bbs") return run_bbs(kv, redirect_dir);
  if (sub == "bound") return run_bound(kv, redirect_dir);
  if (sub == "sched") return run_sched(kv, redirect_dir);
  if (sub == "distinguish") return run_distinguish(kv, redirect_dir);
  if (sub == "simulate") return run_simulate(kv, redirect_dir);
  if (sub == "games") return run_games(kv, redirect_dir);
  if (sub == "plot") return run_plot(kv, redirect_dir);
  throw std::runtime_error("manifest names unknown subcommand: " + sub);
}

}  // namespace wsnseccli
