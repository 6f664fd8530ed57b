#pragma once

#include <string>

#include <CLI11.hpp>

#include "wsnsec/bits.hpp"
#include "wsnsec/config.hpp"

namespace wsnseccli {

inline constexpr const char* kSeedEnvVar = "WSNSEC_SEED";
inline constexpr const char* kDefaultSeed = "wsnsec-default-seed";

/// Seed precedence: explicit flag value, then WSNSEC_SEED, then the
/// built-in default.
std::string resolve_seed(const std::string& flag_value);

wsnsec::Bytes seed_bytes(const std::string& seed_text);

/// Starts a manifest: subcommand + tool version. Commands append their
/// fully resolved configuration and output paths.
wsnsec::config::KeyValues manifest_skeleton(const std::string& subcommand);

/// Writes `content` to `out_path` (binary, no translation) and the manifest
/// beside it as <out_path>.manifest. An empty out_path prints `content` to
/// stdout and skips the manifest.
void emit_output(const wsnsec::config::KeyValues& manifest,
                 const std::string& out_path, const std::string& content);

/// basename(out) placed into redirect_dir; returns out unchanged when
/// redirect_dir is empty.
std::string redirect_path(const std::string& out, const std::string& redirect_dir);

// Each command registers its CLI and exposes a manifest-driven entry point
// so `rerun` can replay it. redirect_dir moves outputs, nothing else.
void register_bbs(CLI::App& app);
void register_bound(CLI::App& app);
void register_sched(CLI::App& app);
void register_distinguish(CLI::App& app);
void register_simulate(CLI::App& app);
void register_games(CLI::App& app);
void register_plot(CLI::App& app);

void run_bbs(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);
void run_bound(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);
void run_sched(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);
void run_distinguish(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);
void run_simulate(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);
void run_games(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);
void run_plot(const wsnsec::config::KeyValues& kv, const std::string& redirect_dir);

/// Dispatch a parsed manifest to the command that wrote it.
void run_from_manifest(const wsnsec::config::KeyValues& kv,
                       const std::string& redirect_dir);

}  // namespace wsnseccli
