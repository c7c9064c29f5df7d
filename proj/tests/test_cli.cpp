#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RSR_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("rsr_cli_tests_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file_in_work_dir(const std::string& name) { return (work_dir() / name).string(); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

long long line_value(const std::string& text, const std::string& key) {
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (line.rfind(key + " ", 0) == 0) return std::stoll(line.substr(key.size() + 1));
  FAIL("no line starting with '" << key << "' in output:\n" << text);
  return -1;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

// 6x4 map, open except (2,0); splits into three rectangles.
const std::string kSplitMap = "type octile\nheight 4\nwidth 6\nmap\n..@...\n......\n......\n......\n";

}  // namespace

TEST_CASE("cli binary exists") { REQUIRE(fs::exists(RSR_CLI_BIN)); }

TEST_CASE("gen writes deterministic maps") {
  const std::string f1 = file_in_work_dir("gen_a.map");
  const std::string f2 = file_in_work_dir("gen_b.map");
  REQUIRE(run_cli("gen --kind rooms --size 31 --room 7 --door-p 0.4 --seed 6 --out " + f1).code == 0);
  REQUIRE(run_cli("gen --kind rooms --size 31 --room 7 --door-p 0.4 --seed 6 --out " + f2).code == 0);
  CHECK(read_file(f1) == read_file(f2));

  const auto stdout_run = run_cli("gen --size 6 --seed 1");
  CHECK(stdout_run.code == 0);
  CHECK_THAT(stdout_run.out,
             Catch::Matchers::StartsWith("type octile\nheight 6\nwidth 6\nmap\n......"));
}

TEST_CASE("gen rejects bad parameters with a parse error") {
  CHECK(run_cli("gen --size -3").code != 0);
  CHECK(run_cli("gen --kind marble").code != 0);
}

TEST_CASE("preprocess prints decomposition statistics") {
  const std::string map = file_in_work_dir("empty64.map");
  REQUIRE(run_cli("gen --size 64 --out " + map).code == 0);
  const auto r = run_cli("preprocess --map " + map + " --conn 8");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "size 64x64"));
  CHECK(contains(r.out, "conn 8"));
  CHECK(line_value(r.out, "rectangles") == 1);
  CHECK(line_value(r.out, "interior_nodes") == 3844);
  CHECK(line_value(r.out, "pruned_nodes") == 252);
  CHECK(line_value(r.out, "active_nodes") == 0);
  CHECK(contains(r.out, "preprocess_ms "));
  CHECK(!contains(r.out, "rect 0"));

  const auto s = run_cli("preprocess --map " + map + " --stats");
  CHECK(s.code == 0);
  CHECK(contains(s.out, "rect 0 0 0 64 64"));
  CHECK(contains(s.out, "pruned 0 252"));
}

TEST_CASE("preprocess reports missing maps on the io exit code") {
  CHECK(run_cli("preprocess --map /nonexistent/nowhere.map").code == 2);
}

TEST_CASE("solve answers same-rectangle queries without expanding") {
  const std::string map = file_in_work_dir("empty10.map");
  REQUIRE(run_cli("gen --size 10 --out " + map).code == 0);
  const auto r = run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 9 --gy 9");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "cost 12.727922"));
  CHECK(line_value(r.out, "expanded") == 0);
  CHECK(line_value(r.out, "generated") == 0);
  CHECK(contains(r.out, "elapsed_us "));

  const auto refined = run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 9 --gy 9 --refine");
  CHECK(refined.code == 0);
  CHECK(contains(refined.out, "path 0,0 1,1 2,2 3,3 4,4 5,5 6,6 7,7 8,8 9,9"));
}

TEST_CASE("solve searches across rectangles") {
  const std::string map = file_in_work_dir("split.map");
  write_file(map, kSplitMap);
  const auto r = run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 5 --gy 0 --refine");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "cost 5.828427"));
  CHECK(line_value(r.out, "expanded") > 0);
  CHECK(contains(r.out, "path 0,0 "));
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring(" 5,0\n"));

  const auto flags =
      run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 5 --gy 0 --no-pr --no-op");
  CHECK(flags.code == 0);
  CHECK(contains(flags.out, "cost 5.828427"));

  const auto four = run_cli("solve --map " + map + " --conn 4 --sx 0 --sy 0 --gx 5 --gy 0");
  CHECK(four.code == 0);
  CHECK(contains(four.out, "cost 7.000000"));
}

TEST_CASE("solve reports unsolvable and invalid queries distinctly") {
  const std::string map = file_in_work_dir("wall.map");
  write_file(map, "type octile\nheight 3\nwidth 5\nmap\n..@..\n..@..\n..@..\n");
  const auto blocked_goal = run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 2 --gy 1");
  CHECK(blocked_goal.code == 3);
  const auto oob = run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 50 --gy 0");
  CHECK(oob.code == 3);
  const auto unreachable = run_cli("solve --map " + map + " --sx 0 --sy 0 --gx 4 --gy 0");
  CHECK(unreachable.code == 0);
  CHECK(contains(unreachable.out, "no path"));
  CHECK(run_cli("solve --map " + map + " --sx 0 --sy 0").code != 0);
}

TEST_CASE("bench emits csv with the standard header") {
  const std::string map = file_in_work_dir("rooms31.map");
  REQUIRE(run_cli("gen --kind rooms --size 31 --room 7 --door-p 0.4 --seed 6 --out " + map).code ==
          0);

  const std::string csv = file_in_work_dir("bench.csv");
  const auto r = run_cli("bench --map " + map + " --instances 15 --seed 3 --out " + csv);
  CHECK(r.code == 0);
  CHECK(line_value(r.out, "rows") == 15);
  CHECK(contains(r.out, "speedup "));
  const std::string body = read_file(csv);
  CHECK_THAT(body, Catch::Matchers::StartsWith(
                       "map,conn,sx,sy,gx,gy,cost_rsr,cost_plain,expanded_rsr,expanded_plain,"
                       "time_rsr_us,time_plain_us,same_rect,speedup\n"));
  CHECK(count_lines(body) == 16);
  CHECK(contains(body, "rooms31.map,8,"));

  const auto to_stdout = run_cli("bench --map " + map + " --instances 5 --seed 3 --threads 2");
  CHECK(to_stdout.code == 0);
  CHECK_THAT(to_stdout.out, Catch::Matchers::StartsWith("map,conn,"));
  CHECK(count_lines(to_stdout.out) == 6);
}

TEST_CASE("bench takes instances from a scenario file") {
  const std::string map = file_in_work_dir("empty24.map");
  REQUIRE(run_cli("gen --size 24 --out " + map).code == 0);
  const std::string scen = file_in_work_dir("two.scen");
  write_file(scen,
             "version 1\n"
             "0 ignored.map 24 24 1 1 20 20 0\n"
             "0 ignored.map 24 24 2 2 9 21 0\n");
  const auto r = run_cli("bench --map " + map + " --scen " + scen);
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 3);

  const std::string bad = file_in_work_dir("bad.scen");
  write_file(bad, "version 1\n0 ignored.map 24 24 1 1 99 99 0\n");
  CHECK(run_cli("bench --map " + map + " --scen " + bad).code == 3);
}

TEST_CASE("verify passes on generated maps and fails on injected corruption") {
  const std::string args = "verify --kind random --size 20 --p 0.25 --instances 30 --seed 7";
  const auto ok = run_cli(args);
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "conn 8"));
  CHECK(contains(ok.out, "conn 4"));
  CHECK(contains(ok.out, "validate ok"));
  CHECK(contains(ok.out, "flags pr=on op=on ok (30 instances)"));
  CHECK(contains(ok.out, "flags pr=off op=off ok (30 instances)"));
  CHECK(contains(ok.out, "verify ok"));

  const auto fault = run_cli(args + " --inject-fault");
  CHECK(fault.code == 1);
  CHECK(contains(fault.out, "validate FAILED"));

  const auto eight_only = run_cli(args + " --conn 8");
  CHECK(eight_only.code == 0);
  CHECK(!contains(eight_only.out, "conn 4"));
}

TEST_CASE("mutate applies change scripts and re-verifies") {
  const std::string map = file_in_work_dir("mutate.map");
  write_file(map, kSplitMap);
  const std::string script = file_in_work_dir("changes.txt");
  write_file(script, "add 4 1\ndel 4 1\ndel 2 0\n");
  const auto r = run_cli("mutate --map " + map + " --script " + script + " --queries 40");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "change 0 add 4 1 repair_us "));
  CHECK(contains(r.out, "change 2 del 2 0 repair_us "));
  CHECK(line_value(r.out, "changes") == 3);
  CHECK(contains(r.out, "queries 40 consistent"));
}

TEST_CASE("mutate rejects malformed and impossible scripts") {
  const std::string map = file_in_work_dir("mutate2.map");
  write_file(map, kSplitMap);

  const std::string bad_word = file_in_work_dir("bad_word.txt");
  write_file(bad_word, "explode 1 1\n");
  CHECK(run_cli("mutate --map " + map + " --script " + bad_word).code == 4);

  const std::string bad_fields = file_in_work_dir("bad_fields.txt");
  write_file(bad_fields, "add 1\n");
  CHECK(run_cli("mutate --map " + map + " --script " + bad_fields).code == 4);

  const std::string noop = file_in_work_dir("noop.txt");
  write_file(noop, "add 2 0\n");  // (2,0) is already blocked
  const auto r = run_cli("mutate --map " + map + " --script " + noop);
  CHECK(r.code == 4);
  CHECK(contains(r.out, "script line rejected"));

  const std::string oob = file_in_work_dir("oob.txt");
  write_file(oob, "add 99 99\n");
  CHECK(run_cli("mutate --map " + map + " --script " + oob).code == 4);

  CHECK(run_cli("mutate --map " + map + " --script /nonexistent/script.txt").code == 2);
}
