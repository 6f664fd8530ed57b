#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "wsnsec/csv.hpp"
#include "wsnsec/games.hpp"

namespace wsnseccli {

namespace {

namespace games = wsnsec::games;
namespace csv = wsnsec::csv;

struct GamesOptions {
  std::string game = "ind";
  std::string system = "xor";
  std::string oracle = "na";
  std::string visibility = "keyless";
  std::string adversary = "all";
  std::string relation = "identity";
  std::string message_hex;
  std::uint64_t trials = 1000;
  std::string seed;
  std::string emit = "csv";
  std::string out;
};

struct ImpliesOptions {
  std::string from;
  std::string to;
  bool all = false;
  std::string emit = "text";
  std::string out;
};

std::vector<std::string> adversary_list(const std::string& game,
                                        const std::string& requested) {
  std::vector<std::string> suite;
  if (game == "ind") suite = games::ind_adversary_names();
  else if (game == "nm") suite = games::nm_adversary_names();
  else if (game == "dr") suite = games::dr_adversary_names();
  else throw std::runtime_error("unknown game: " + game);
  if (requested == "all") return suite;
  for (const auto& name : suite) {
    if (name == requested) return {requested};
  }
  throw std::runtime_error("no such " + game + " adversary: " + requested);
}

void append_result(csv::Writer& w, const games::GameResult& r) {
  w.add_row({r.game, r.system, r.oracle, r.key_visibility, r.relation,
             r.adversary, csv::format_u64(r.trials),
             csv::format_u64(r.valid_trials), csv::format_double(r.success_prob),
             csv::format_double(r.normalized_advantage),
             csv::format_double(r.ci_halfwidth), csv::format_u64(r.violations)});
}

const std::vector<games::SecurityLevel>& all_levels() {
  static const std::vector<games::SecurityLevel> levels = {
      {games::Goal::IND, games::Attack::CIA},
      {games::Goal::IND, games::Attack::CDA1},
      {games::Goal::IND, games::Attack::CDA2},
      {games::Goal::NM, games::Attack::CIA},
      {games::Goal::NM, games::Attack::CDA1},
      {games::Goal::NM, games::Attack::CDA2},
  };
  return levels;
}

void run_games_play(const wsnsec::config::KeyValues& kv,
                    const std::string& redirect_dir) {
  const std::string game = kv.get("game");
  const auto system = games::make_system(kv.get("system"));
  const std::uint64_t trials = kv.get_u64("trials");
  const wsnsec::Bytes seed = seed_bytes(kv.get("seed"));
  const auto visibility =
      games::key_visibility_from_string(kv.get("key_visibility"));

  csv::Writer w({"game", "system", "oracle", "key_visibility", "relation",
                 "adversary", "trials", "valid_trials", "success_prob",
                 "normalized_advantage", "ci95", "violations"});
  for (const auto& name : adversary_list(game, kv.get("adversary"))) {
    if (game == "ind") {
      auto adv = games::make_ind_adversary(name);
      append_result(w, games::ind_game(*system, *adv,
                                       games::oracle_from_string(kv.get("oracle")),
                                       visibility, trials, seed));
    } else if (game == "nm") {
      auto adv = games::make_nm_adversary(name);
      append_result(w, games::nm_game(*system, *adv,
                                      games::named_relation(kv.get("relation")),
                                      kv.get("relation"),
                                      wsnsec::bytes_from_hex(kv.get("message_hex")),
                                      trials, seed));
    } else {
      auto adv = games::make_dr_adversary(name);
      append_result(w, games::dr_game(*system, *adv, visibility, trials, seed));
    }
  }

  const std::string out = redirect_path(kv.get("out"), redirect_dir);
  auto manifest = kv;
  manifest.set("out", out);
  emit_output(manifest, out, w.text());
}

void run_games_implies(const wsnsec::config::KeyValues& kv,
                       const std::string& redirect_dir) {
  std::string content;
  if (kv.get_bool("all")) {
    // Level names ("NM,CDA2") contain the CSV separator, so goal and attack
    // get a column each.
    csv::Writer w({"from_goal", "from_attack", "to_goal", "to_attack",
                   "implies"});
    for (const auto& a : all_levels()) {
      for (const auto& b : all_levels()) {
        w.add_row({games::to_string(a.goal), games::to_string(a.attack),
                   games::to_string(b.goal), games::to_string(b.attack),
                   games::implies(a, b) ? "true" : "false"});
      }
    }
    content = w.text();
  } else {
    const auto a = games::level_from_string(kv.get("from"));
    const auto b = games::level_from_string(kv.get("to"));
    content = games::to_string(a) + (games::implies(a, b) ? " => " : " =/=> ") +
              games::to_string(b) + "\n";
  }
  const std::string out = redirect_path(kv.get("out"), redirect_dir);
  auto manifest = kv;
  manifest.set("out", out);
  emit_output(manifest, out, content);
}

}  // namespace

void run_games(const wsnsec::config::KeyValues& kv,
               const std::string& redirect_dir) {
  if (kv.get_or("mode", "play") == "implies") {
    run_games_implies(kv, redirect_dir);
  } else {
    run_games_play(kv, redirect_dir);
  }
}

void register_games(CLI::App& app) {
  auto opts = std::make_shared<GamesOptions>();
  CLI::App* sub = app.add_subcommand(
      "games", "Monte Carlo security games over the shipped comm systems");
  sub->add_option("--game", opts->game, "Game to play")
      ->default_val(std::string("ind"))
      ->check(CLI::IsMember({"ind", "nm", "dr"}));
  sub->add_option("--system", opts->system, "Communication system")
      ->default_val(std::string("xor"))
      ->check(CLI::IsMember({"xor", "broken", "clear"}));
  sub->add_option("--oracle", opts->oracle, "Extraction-oracle model (ind)")
      ->default_val(std::string("na"))
      ->check(CLI::IsMember({"na", "ad1", "ad2"}));
  sub->add_option("--key-visibility", opts->visibility,
                  "Hand the adversary the key (literal) or withhold it "
                  "(keyless)")
      ->default_val(std::string("keyless"))
      ->check(CLI::IsMember({"literal", "keyless"}));
  sub->add_option("--adversary", opts->adversary,
                  "Adversary name, or 'all' for the registered suite")
      ->default_val(std::string("all"));
  sub->add_option("--relation", opts->relation, "Message relation R (nm)")
      ->default_val(std::string("identity"))
      ->check(CLI::IsMember({"identity", "flip_first_bit", "empty"}));
  sub->add_option("--message", opts->message_hex,
                  "Fixed nm message, hex (derived from the seed when omitted)");
  sub->add_option("--trials", opts->trials, "Trials per adversary")
      ->default_val(std::uint64_t{1000});
  sub->add_option("--seed", opts->seed, "Seed text (default: WSNSEC_SEED or "
                                        "built-in)");
  sub->add_option("--emit", opts->emit, "Output format")
      ->default_val(std::string("csv"))
      ->check(CLI::IsMember({"csv"}));
  sub->add_option("--out", opts->out, "Output file (stdout when omitted)");

  auto iopts = std::make_shared<ImpliesOptions>();
  CLI::App* imp = sub->add_subcommand(
      "implies", "Query the relation lattice between security levels");
  imp->add_option("--from", iopts->from, "Source level, e.g. NM,CDA2");
  imp->add_option("--to", iopts->to, "Target level, e.g. IND,CIA");
  imp->add_flag("--all", iopts->all, "Emit the full ordered-pair table as CSV");
  imp->add_option("--out", iopts->out, "Output file (stdout when omitted)");
  imp->callback([iopts]() {
    if (!iopts->all && (iopts->from.empty() || iopts->to.empty())) {
      throw CLI::ValidationError("implies",
                                 "--from and --to are required unless --all");
    }
    auto kv = manifest_skeleton("games");
    kv.set("mode", "implies");
    kv.set_bool("all", iopts->all);
    if (!iopts->from.empty()) kv.set("from", iopts->from);
    if (!iopts->to.empty()) kv.set("to", iopts->to);
    kv.set("out", iopts->out);
    run_games(kv, "");
  });

  sub->callback([opts, imp]() {
    if (imp->parsed()) return;  // `games implies ...` — nothing to play
    auto kv = manifest_skeleton("games");
    kv.set("mode", "play");
    kv.set("game", opts->game);
    kv.set("system", opts->system);
    kv.set("oracle", opts->oracle);
    kv.set("key_visibility", opts->visibility);
    kv.set("adversary", opts->adversary);
    kv.set("relation", opts->relation);
    kv.set_u64("trials", opts->trials);
    const std::string seed = resolve_seed(opts->seed);
    kv.set("seed", seed);
    if (opts->game == "nm") {
      std::string message_hex = opts->message_hex;
      if (message_hex.empty()) {
        const auto system = games::make_system(opts->system);
        wsnsec::ByteExpander rnd(
            wsnsec::derive_bytes(seed_bytes(seed), "games-nm-message"));
        message_hex = wsnsec::bytes_to_hex(system->sample_message(rnd));
      }
      kv.set("message_hex", message_hex);
    }
    kv.set("emit", opts->emit);
    kv.set("out", opts->out);
    run_games(kv, "");
  });
}

}  // namespace wsnseccli
