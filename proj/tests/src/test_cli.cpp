// End-to-end tests that drive the installed `wsnsec` binary the way a user
// would. The binary path is injected at compile time by the build.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsnsec/config.hpp"

namespace fs = std::filesystem;

namespace {

struct RunOutcome {
  int code = -1;
  std::string output;  // stdout and stderr merged
};

// Runs `wsnsec <args>` with WSNSEC_SEED scrubbed from the environment unless
// the caller injects one explicitly via env_prefix.
RunOutcome run_cli(const std::string& args,
                   const std::string& env_prefix = "env -u WSNSEC_SEED ") {
  const std::string cmd =
      env_prefix + "\"" + WSNSEC_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunOutcome outcome;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) outcome.output.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) outcome.code = WEXITSTATUS(status);
  return outcome;
}

const fs::path& temp_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("wsnsec-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << content;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli: version and help exit cleanly") {
  auto version = run_cli("--version");
  CHECK(version.code == 0);
  CHECK(contains(version.output, "1.0.0"));

  auto help = run_cli("--help");
  CHECK(help.code == 0);
  for (const char* name :
       {"bbs", "bound", "sched", "distinguish", "simulate", "games", "plot",
        "rerun"}) {
    CAPTURE(name);
    CHECK(contains(help.output, name));
  }
}

TEST_CASE("cli: usage errors exit 1") {
  CHECK(run_cli("").code == 1);                 // a subcommand is required
  CHECK(run_cli("frobnicate").code == 1);       // unknown subcommand
  CHECK(run_cli("bbs --bits 8").code == 1);     // below the modulus floor
  CHECK(run_cli("bound --emit text").code == 1);  // --attacker is required
  CHECK(contains(run_cli("bound --emit text").output, "--attacker"));
  // file source demands --file at parse time
  CHECK(run_cli("sched --bits-from file --length 4").code == 1);
}

TEST_CASE("cli: runtime failures exit 2 with a message") {
  auto bad_primes = run_cli("bbs --unsafe-small-primes 8,11 --s 3 --length 4");
  CHECK(bad_primes.code == 2);
  CHECK(contains(bad_primes.output, "error:"));

  CHECK(run_cli("sched --bits-from file --file /no/such/bits --length 4").code ==
        2);
  CHECK(run_cli("plot --csv /no/such/table.csv").code == 2);
  CHECK(run_cli("rerun --manifest /no/such/manifest").code == 2);
}

TEST_CASE("cli: bbs reproduces the worked small-modulus example") {
  auto bits = run_cli("bbs --unsafe-small-primes 7,11 --s 3 --length 5 --emit bits");
  CHECK(bits.code == 0);
  CHECK(bits.output == "00110\n");

  auto csv = run_cli("bbs --unsafe-small-primes 7,11 --s 3 --length 5 --emit csv");
  CHECK(csv.code == 0);
  auto rows = lines_of(csv.output);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "index,bit");
  CHECK(rows[1] == "0,0");
  CHECK(rows[2] == "1,0");
  CHECK(rows[3] == "2,1");
  CHECK(rows[4] == "3,1");
  CHECK(rows[5] == "4,0");
}

TEST_CASE("cli: bbs output is seed-deterministic") {
  const std::string args = "bbs --bits 64 --length 64 --emit hex";
  auto a = run_cli(args + " --seed 00112233");
  auto b = run_cli(args + " --seed 00112233");
  auto c = run_cli(args + " --seed 00112234");
  CHECK(a.code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output != c.output);
  // 64 emitted bits, 4 bits per hex digit, plus the newline.
  CHECK(a.output.size() == 17);
}

TEST_CASE("cli: seed precedence is flag, then environment, then default") {
  const std::string args = "bbs --bits 64 --length 64 --emit hex";
  // "cliseed" as hex bytes
  const std::string hex_flag = " --seed 636c6973656564";
  auto via_env = run_cli(args, "env WSNSEC_SEED=cliseed ");
  auto via_flag = run_cli(args + hex_flag);
  auto flag_beats_env = run_cli(args + hex_flag, "env WSNSEC_SEED=something-else ");
  auto fallback = run_cli(args);
  CHECK(via_env.code == 0);
  CHECK(via_env.output == via_flag.output);
  CHECK(flag_beats_env.output == via_flag.output);
  CHECK(fallback.output != via_flag.output);
}

TEST_CASE("cli: --out writes the payload plus a manifest") {
  const fs::path out = temp_dir() / "bbs_stream.hex";
  auto direct = run_cli("bbs --bits 64 --length 64 --seed 0a0b --emit hex");
  auto filed =
      run_cli("bbs --bits 64 --length 64 --seed 0a0b --emit hex --out " +
              out.string());
  CHECK(filed.code == 0);
  CHECK(filed.output.empty());  // everything goes to the file
  CHECK(read_file(out) == direct.output);

  auto manifest = wsnsec::config::KeyValues::parse_file(out.string() + ".manifest");
  CHECK(manifest.get("subcommand") == "bbs");
  CHECK(manifest.get("tool_version") == "1.0.0");
  CHECK(manifest.get("out") == out.string());
  CHECK(manifest.get_u64("length") == 64);
  CHECK(manifest.get_u64("bits") == 64);
  CHECK(manifest.get("seed_hex") == "0a0b");
}

TEST_CASE("cli: rerun replays a manifest byte-for-byte") {
  const fs::path first = temp_dir() / "bound_first";
  const fs::path second = temp_dir() / "bound_second";
  fs::create_directories(first);
  fs::create_directories(second);
  const fs::path csv = first / "bound.csv";

  auto original = run_cli(
      "bound --attacker 1e12 --interpretation both --emit csv --out " +
      csv.string());
  REQUIRE(original.code == 0);
  const std::string first_bytes = read_file(csv);
  auto header = lines_of(first_bytes);
  REQUIRE(header.size() >= 3);  // header + grouped + literal
  CHECK(header[0] ==
        "interpretation,n_bits,m_len,epsilon,attacker_cycles,log10_l,t_sign,"
        "log10_t_abs,l,first_term,second_term,t_max,secure,"
        "time_success_ratio,rel_gap_l,rel_gap_first,rel_gap_second,rel_gap_t");

  auto replay = run_cli("rerun --manifest " + csv.string() + ".manifest" +
                        " --redirect " + second.string());
  REQUIRE(replay.code == 0);
  CHECK(read_file(second / "bound.csv") == first_bytes);
  auto manifest =
      wsnsec::config::KeyValues::parse_file((second / "bound.csv").string() +
                                            ".manifest");
  CHECK(manifest.get("out") == (second / "bound.csv").string());
  CHECK(manifest.get("subcommand") == "bound");
}

TEST_CASE("cli: rerun rejects a manifest with no subcommand") {
  const fs::path stray = temp_dir() / "stray.manifest";
  write_file(stray, "foo = bar\n");
  CHECK(run_cli("rerun --manifest " + stray.string()).code == 2);
}

TEST_CASE("cli: bound text report states its reading and verdict") {
  auto literal = run_cli("bound --attacker 1e12");
  CHECK(literal.code == 0);
  CHECK(contains(literal.output, "literal"));
  CHECK(contains(literal.output, "SECURE"));
  CHECK(contains(literal.output, "t_max"));

  auto grouped = run_cli("bound --attacker 1e12 --interpretation grouped");
  CHECK(grouped.code == 0);
  CHECK(contains(grouped.output, "INSECURE"));
}

TEST_CASE("cli: bound json emits one object per interpretation") {
  auto both = run_cli("bound --attacker 1e12 --interpretation both --emit json");
  REQUIRE(both.code == 0);
  auto parsed = nlohmann::json::parse(both.output);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0]["interpretation"] == "grouped");
  CHECK(parsed[1]["interpretation"] == "literal");
  CHECK(parsed[1]["secure"] == true);
  // grouped t_max is positive but far below the 1e12-cycle budget
  CHECK(parsed[0]["secure"] == false);
  CHECK(parsed[0]["t_sign"] == 1);

  auto single = run_cli("bound --attacker 1e12 --emit json");
  auto one = nlohmann::json::parse(single.output);
  CHECK(one.is_object());
  CHECK(one["interpretation"] == "literal");
}

TEST_CASE("cli: sched local plan mirrors a bit file") {
  const fs::path bits = temp_dir() / "plan.bits";
  write_file(bits, "0101 1100\n");
  auto local = run_cli("sched --mode local --bits-from file --file " +
                       bits.string() + " --length 8 --quantum 30");
  CHECK(local.code == 0);
  auto rows = lines_of(local.output);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "slot,awake");
  const std::string expected = "01011100";
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(rows[i + 1] == std::to_string(i) + "," + expected[i]);
}

TEST_CASE("cli: sched global plan decodes node ids big-endian") {
  const fs::path bits = temp_dir() / "orders.bits";
  write_file(bits, "00011011");
  auto global = run_cli("sched --mode global --bits-from file --file " +
                        bits.string() + " --length 8 --nodes 4");
  CHECK(global.code == 0);
  auto rows = lines_of(global.output);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "time_slot,node_id");
  CHECK(rows[1] == "0,0");
  CHECK(rows[2] == "1,1");
  CHECK(rows[3] == "2,2");
  CHECK(rows[4] == "3,3");
}

TEST_CASE("cli: sched lcg source produces the alternating pathology") {
  auto plan = run_cli(
      "sched --mode local --bits-from lcg --length 16 --quantum 30 --seed ab");
  CHECK(plan.code == 0);
  auto rows = lines_of(plan.output);
  REQUIRE(rows.size() == 17);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    // awake column strictly alternates
    CHECK(rows[i].back() != rows[i - 1].back());
  }
}

TEST_CASE("cli: distinguish flags the low-bit LCG through the runs test") {
  auto report = run_cli(
      "distinguish --source lcg --m 64 --trials 40 --seed dseed --emit csv");
  REQUIRE(report.code == 0);
  auto rows = lines_of(report.output);
  REQUIRE(rows.size() == 5);  // header + four battery tests
  CHECK(rows[0] == "test_name,trials,p1_hat,p2_hat,advantage,ci95");
  bool saw_runs = false;
  for (const auto& row : rows) {
    if (row.rfind("runs,", 0) != 0) continue;
    saw_runs = true;
    // advantage is the fifth field
    std::istringstream in(row);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(in, field, ',');
    CHECK(std::stod(field) > 0.5);
  }
  CHECK(saw_runs);
}

TEST_CASE("cli: simulate runs from a config file and reruns byte-for-byte") {
  const fs::path cfg_path = temp_dir() / "field.cfg";
  wsnsec::config::KeyValues cfg;
  cfg.set_double("area_width", 40);
  cfg.set_double("area_height", 40);
  cfg.set_u64("node_count", 8);
  cfg.set_double("initial_energy", 200);
  cfg.set_double("horizon", 120);
  cfg.set_double("quantum", 1);
  cfg.set_double("sample_period", 10);
  cfg.set_double("intrusion_rate", 0.05);
  cfg.set("scheduler", "bbs");
  cfg.set("sched_mode", "local");
  cfg.set_u64("bbs_bits", 64);
  cfg.set("master_seed", "cli-sim-seed");
  cfg.write_file(cfg_path.string());

  auto trace = run_cli("simulate --config " + cfg_path.string());
  REQUIRE(trace.code == 0);
  auto rows = lines_of(trace.output);
  REQUIRE(rows.size() == 14);  // header + t=0 + 12 samples
  CHECK(rows[0] ==
        "time,active_fraction,alive_fraction,energy_mean,energy_stddev,"
        "detections_cum,intrusions_cum");
  CHECK(rows[1].rfind("0,", 0) == 0);

  const fs::path cmp = temp_dir() / "compare.csv";
  auto compared = run_cli("simulate --config " + cfg_path.string() +
                          " --compare --emit " + cmp.string());
  REQUIRE(compared.code == 0);
  auto table = lines_of(read_file(cmp));
  REQUIRE(table.size() >= 2);
  CHECK(table[0] ==
        "time,active_fraction_bbs,alive_fraction_bbs,energy_mean_bbs,"
        "energy_stddev_bbs,detections_cum_bbs,intrusions_cum_bbs,"
        "active_fraction_lcg,alive_fraction_lcg,energy_mean_lcg,"
        "energy_stddev_lcg,detections_cum_lcg,intrusions_cum_lcg");
  auto summary =
      wsnsec::config::KeyValues::parse_file(cmp.string() + ".summary");
  CHECK(summary.get("scheduler_a") == "bbs");
  CHECK(summary.get("scheduler_b") == "lcg");
  const double p_a = summary.get_double("wake_chi2_p_a");
  CHECK(p_a >= 0.0);
  CHECK(p_a <= 1.0);
  CHECK(summary.has("stddev_diff_a_minus_b"));

  const fs::path replay_dir = temp_dir() / "sim_replay";
  fs::create_directories(replay_dir);
  auto replay = run_cli("rerun --manifest " + cmp.string() + ".manifest" +
                        " --redirect " + replay_dir.string());
  REQUIRE(replay.code == 0);
  CHECK(read_file(replay_dir / "compare.csv") == read_file(cmp));
  CHECK(read_file(replay_dir / "compare.csv.summary") ==
        read_file(cmp.string() + ".summary"));
}

TEST_CASE("cli: games plays a single adversary or a whole suite") {
  auto copy = run_cli(
      "games --game nm --system xor --adversary copy --relation identity "
      "--trials 50 --seed gseed");
  REQUIRE(copy.code == 0);
  auto rows = lines_of(copy.output);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        "game,system,oracle,key_visibility,relation,adversary,trials,"
        "valid_trials,success_prob,normalized_advantage,ci95,violations");
  CHECK(rows[1] == "nm,xor,-,-,identity,copy,50,50,1,1,0,0");

  auto suite = run_cli(
      "games --game ind --system broken --oracle na --key-visibility literal "
      "--trials 60 --seed gseed");
  REQUIRE(suite.code == 0);
  auto suite_rows = lines_of(suite.output);
  REQUIRE(suite_rows.size() == 5);  // header + four IND adversaries
  bool re_embed_wins = false;
  for (const auto& row : suite_rows)
    if (contains(row, ",re_embed,") && contains(row, ",60,60,1,1,0,0"))
      re_embed_wins = true;
  CHECK(re_embed_wins);
}

TEST_CASE("cli: games implies answers only the lattice question") {
  auto yes = run_cli("games implies --from nm,cda2 --to ind,cia");
  CHECK(yes.code == 0);
  CHECK(yes.output == "NM,CDA2 => IND,CIA\n");

  auto no = run_cli("games implies --from IND,CIA --to NM,CIA");
  CHECK(no.code == 0);
  CHECK(no.output == "IND,CIA =/=> NM,CIA\n");

  auto all = run_cli("games implies --all");
  REQUIRE(all.code == 0);
  auto rows = lines_of(all.output);
  REQUIRE(rows.size() == 37);
  CHECK(rows[0] == "from_goal,from_attack,to_goal,to_attack,implies");
  int holds = 0;
  for (const auto& row : rows)
    if (contains(row, ",true")) ++holds;
  CHECK(holds == 21);
  CHECK(contains(all.output, "NM,CDA2,IND,CIA,true"));
}

TEST_CASE("cli: plot renders a line chart from csv") {
  const fs::path csv = temp_dir() / "series.csv";
  write_file(csv, "x,low,high\n0,1,2\n1,3,1\n2,2,4\n3,5,3\n");
  const fs::path svg = temp_dir() / "series.svg";
  auto plot = run_cli("plot --csv " + csv.string() + " --title demo --out " +
                      svg.string());
  REQUIRE(plot.code == 0);
  const std::string body = read_file(svg);
  CHECK(body.rfind("<svg", 0) == 0);
  CHECK(contains(body, "</svg>"));
  CHECK(contains(body, "demo"));
  CHECK(fs::exists(svg.string() + ".manifest"));
}
