#include <memory>
#include <string>

#include "common.hpp"
#include "wsnsec/csv.hpp"
#include "wsnsec/svg.hpp"

namespace wsnseccli {

namespace {

struct PlotOptions {
  std::string csv;
  std::string out;
  std::string title;
};

}  // namespace

void run_plot(const wsnsec::config::KeyValues& kv,
              const std::string& redirect_dir) {
  const wsnsec::csv::Table table = wsnsec::csv::read_file(kv.get("csv"));
  const std::string content = wsnsec::svg::line_chart(table, kv.get("title"));
  const std::string out = redirect_path(kv.get("out"), redirect_dir);
  auto manifest = kv;
  manifest.set("out", out);
  emit_output(manifest, out, content);
}

void register_plot(CLI::App& app) {
  auto opts = std::make_shared<PlotOptions>();
  CLI::App* sub = app.add_subcommand(
      "plot", "Render a CSV time series as a standalone SVG line chart");
  sub->add_option("--csv", opts->csv, "Input CSV (first column is the x axis)")
      ->required();
  sub->add_option("--out", opts->out, "SVG output file (stdout when omitted)");
  sub->add_option("--title", opts->title, "Chart title")
      ->default_val(std::string());

  sub->callback([opts]() {
    auto kv = manifest_skeleton("plot");
    kv.set("csv", opts->csv);
    kv.set("title", opts->title);
    kv.set("out", opts->out);
    run_plot(kv, "");
  });
}

}  // namespace wsnseccli
