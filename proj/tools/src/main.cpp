#include <exception>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "common.hpp"
#include "wsnsec/config.hpp"

namespace {

void register_rerun(CLI::App& app) {
  auto opts = std::make_shared<std::pair<std::string, std::string>>();
  CLI::App* sub = app.add_subcommand(
      "rerun", "Replay a previous invocation from its manifest");
  sub->add_option("--manifest", opts->first, "Manifest written by a prior run")
      ->required();
  sub->add_option("--redirect", opts->second,
                  "Directory to place outputs in (basenames preserved)");
  sub->callback([opts]() {
    auto kv = wsnsec::config::KeyValues::parse_file(opts->first);
    wsnseccli::run_from_manifest(kv, opts->second);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wsnsec: sensor-network security toolkit", "wsnsec"};
  app.set_version_flag("--version", std::string(WSNSEC_VERSION));
  app.require_subcommand(1);

  wsnseccli::register_bbs(app);
  wsnseccli::register_bound(app);
  wsnseccli::register_sched(app);
  wsnseccli::register_distinguish(app);
  wsnseccli::register_simulate(app);
  wsnseccli::register_games(app);
  wsnseccli::register_plot(app);
  register_rerun(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
