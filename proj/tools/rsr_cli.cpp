// Command-line front end: preprocess, solve, bench, gen, verify, mutate.
//
// Exit codes: 0 ok, 1 verification failure, 2 I/O or parse error,
// 3 bad query, 4 bad change script.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsr/rsr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitIo = 2;
constexpr int kExitQuery = 3;
constexpr int kExitScript = 4;

rsr::Conn conn_of(int c) { return c == 4 ? rsr::Conn::Four : rsr::Conn::Eight; }

struct GenArgs {
  std::string kind = "empty";
  int size = 64;
  double p = 0.3;
  int room = 7;
  double door_p = 0.2;
  int scale = 1;
};

void add_gen_options(CLI::App* cmd, GenArgs& a) {
  cmd->add_option("--kind", a.kind, "map kind")
      ->check(CLI::IsMember({"empty", "random", "rooms"}));
  cmd->add_option("--size", a.size, "map side length")->check(CLI::PositiveNumber);
  cmd->add_option("--p", a.p, "obstacle density (random kind)")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--room", a.room, "room side length (rooms kind)")
      ->check(CLI::Range(3, 1 << 20));
  cmd->add_option("--door-p", a.door_p, "door probability per wall segment (rooms kind)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--scale", a.scale, "block scale factor")->check(CLI::PositiveNumber);
}

rsr::GenSpec to_spec(const GenArgs& a, std::uint64_t seed) {
  rsr::GenSpec spec;
  spec.kind = a.kind == "random"  ? rsr::GenSpec::Kind::Random
              : a.kind == "rooms" ? rsr::GenSpec::Kind::Rooms
                                  : rsr::GenSpec::Kind::Empty;
  spec.size = a.size;
  spec.obstacle_p = a.p;
  spec.room = a.room;
  spec.door_p = a.door_p;
  spec.seed = seed;
  spec.scale = a.scale;
  return spec;
}

std::string base_name(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

int cmd_preprocess(const std::string& map_path, int conn, bool stats) {
  std::optional<rsr::GridMap> map;
  try {
    map.emplace(rsr::load_map(map_path, conn_of(conn)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const rsr::Decomposition d = rsr::decompose(*map);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::size_t interior = 0, pruned = 0, active = 0;
  for (int y = 0; y < map->height(); ++y)
    for (int x = 0; x < map->width(); ++x) {
      const rsr::Cell c{x, y};
      if (!map->traversable(c)) continue;
      switch (d.node_class(c)) {
        case rsr::NodeClass::Interior: ++interior; break;
        case rsr::NodeClass::Pruned: ++pruned; break;
        case rsr::NodeClass::Active: ++active; break;
      }
    }

  std::cout << "map " << base_name(map_path) << '\n'
            << "size " << map->width() << 'x' << map->height() << '\n'
            << "conn " << conn << '\n'
            << "rectangles " << d.alive_rect_count() << '\n'
            << "interior_nodes " << interior << '\n'
            << "pruned_nodes " << pruned << '\n'
            << "active_nodes " << active << '\n';
  std::printf("preprocess_ms %.3f\n", ms);

  if (stats) {
    for (const rsr::Rectangle& r : d.rects)
      if (r.alive())
        std::cout << "rect " << r.id << ' ' << r.x0 << ' ' << r.y0 << ' ' << r.w << ' ' << r.h
                  << '\n';
    for (const rsr::Rectangle& r : d.rects) {
      if (!r.alive()) continue;
      std::size_t count = 0;
      for (const auto& members : d.comps[r.id].members) count += members.size();
      std::cout << "pruned " << r.id << ' ' << count << '\n';
    }
  }
  return kExitOk;
}

int cmd_solve(const std::string& map_path, int conn, int sx, int sy, int gx, int gy, bool no_pr,
              bool no_op, bool refine) {
  std::optional<rsr::GridMap> map;
  try {
    map.emplace(rsr::load_map(map_path, conn_of(conn)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  const rsr::Decomposition d = rsr::decompose(*map);
  const rsr::SearchOptions opt{!no_pr, !no_op};

  std::optional<rsr::Path> path;
  try {
    path = rsr::astar_rsr(*map, d, {sx, sy}, {gx, gy}, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitQuery;
  }
  if (!path) {
    std::cout << "no path\n";
    return kExitOk;
  }

  std::printf("cost %.6f\n", path->cost);
  std::cout << "expanded " << path->stats.expanded << '\n'
            << "generated " << path->stats.generated << '\n'
            << "elapsed_us "
            << std::chrono::duration_cast<std::chrono::microseconds>(path->stats.elapsed).count()
            << '\n';
  if (refine) {
    const rsr::Path steps = rsr::refine_path(*path, *map);
    std::cout << "path";
    for (const rsr::Cell c : steps.nodes) std::cout << ' ' << c.x << ',' << c.y;
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_bench(const std::string& map_path, const std::string& scen_path, int conn, int instances,
              std::uint64_t seed, const std::string& out_path, bool no_pr, bool no_op,
              int threads) {
  std::optional<rsr::GridMap> map;
  std::vector<rsr::Instance> work;
  try {
    map.emplace(rsr::load_map(map_path, conn_of(conn)));
    if (!scen_path.empty()) {
      for (const rsr::ScenarioEntry& e : rsr::load_scenario(scen_path))
        work.push_back({e.start, e.goal});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  const rsr::Decomposition d = rsr::decompose(*map);

  if (scen_path.empty()) {
    try {
      work = rsr::sample_instances(*map, instances, seed);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitIo;
    }
  }

  std::vector<rsr::BenchRecord> records;
  try {
    records = rsr::run_bench(*map, d, work, base_name(map_path), {!no_pr, !no_op}, threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitQuery;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerify;
  }

  if (out_path.empty()) {
    rsr::write_bench_csv(std::cout, records);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot open output file: " << out_path << '\n';
      return kExitIo;
    }
    rsr::write_bench_csv(out, records);
    std::cout << "rows " << records.size() << '\n';
    std::printf("speedup %.4f\n", rsr::aggregate_speedup(records));
  }
  return kExitOk;
}

int cmd_gen(const GenArgs& a, std::uint64_t seed, const std::string& out_path) {
  std::optional<rsr::GridMap> map;
  try {
    map.emplace(rsr::generate_map(to_spec(a, seed), rsr::Conn::Eight));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  if (out_path.empty()) {
    std::cout << rsr::write_map(*map);
    return kExitOk;
  }
  try {
    rsr::save_map(out_path, *map);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int verify_one_conn(const rsr::GridMap& map, int conn, int instances, std::uint64_t seed,
                    bool inject_fault) {
  std::cout << "conn " << conn << '\n';
  rsr::Decomposition d = rsr::decompose(map);

  if (inject_fault) {
    for (std::size_t i = 0; i < d.class_of.size(); ++i)
      if (map.traversable({static_cast<int>(i) % map.width(),
                           static_cast<int>(i) / map.width()}) &&
          d.class_of[i] == rsr::NodeClass::Active) {
        d.class_of[i] = rsr::NodeClass::Pruned;
        break;
      }
  }

  const rsr::ValidationReport report = rsr::validate(d, map);
  if (!report.ok) {
    std::cout << "validate FAILED: " << report.message << '\n';
    return kExitVerify;
  }
  std::cout << "validate ok\n";

  std::vector<rsr::Instance> work;
  try {
    work = rsr::sample_instances(map, instances, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }

  for (const bool pr : {true, false}) {
    for (const bool op : {true, false}) {
      const rsr::SearchOptions opt{pr, op};
      for (std::size_t i = 0; i < work.size(); ++i) {
        const rsr::Instance& in = work[i];
        const std::optional<rsr::Path> plain = rsr::astar_plain(map, in.start, in.goal);
        std::optional<rsr::Path> fast;
        try {
          fast = rsr::astar_rsr(map, d, in.start, in.goal, opt);
        } catch (const std::exception& e) {
          std::cout << "verify FAILED conn " << conn << " pr=" << pr << " op=" << op << " ("
                    << in.start.x << ',' << in.start.y << ")->(" << in.goal.x << ',' << in.goal.y
                    << "): " << e.what() << '\n';
          return kExitVerify;
        }
        const bool mismatch = !plain || !fast || std::abs(plain->cost - fast->cost) > 1e-6;
        bool dijkstra_bad = false;
        if (!mismatch && plain && i % 50 == 0) {
          const std::vector<rsr::Cost> field = rsr::dijkstra_plain(map, in.start);
          dijkstra_bad = std::abs(field[map.index(in.goal)] - plain->cost) > 1e-6;
        }
        if (mismatch || dijkstra_bad) {
          std::cout << "verify FAILED conn " << conn << " pr=" << pr << " op=" << op << " ("
                    << in.start.x << ',' << in.start.y << ")->(" << in.goal.x << ',' << in.goal.y
                    << ") cost_rsr=" << (fast ? std::to_string(fast->cost) : "absent")
                    << " cost_plain=" << (plain ? std::to_string(plain->cost) : "absent") << '\n';
          return kExitVerify;
        }
      }
      std::cout << "flags pr=" << (pr ? "on" : "off") << " op=" << (op ? "on" : "off") << " ok ("
                << work.size() << " instances)\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const std::string& map_path, const GenArgs& gen, int conn, int instances,
               std::uint64_t seed, bool inject_fault) {
  const std::vector<int> conns = conn == 0 ? std::vector<int>{8, 4} : std::vector<int>{conn};
  for (const int c : conns) {
    std::optional<rsr::GridMap> map;
    try {
      if (map_path.empty())
        map.emplace(rsr::generate_map(to_spec(gen, seed), conn_of(c)));
      else
        map.emplace(rsr::load_map(map_path, conn_of(c)));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitIo;
    }
    const int rc = verify_one_conn(*map, c, instances, seed, inject_fault);
    if (rc != kExitOk) return rc;
  }
  std::cout << "verify ok\n";
  return kExitOk;
}

int cmd_mutate(const std::string& map_path, const std::string& script_path, int conn, int queries,
               std::uint64_t seed) {
  std::optional<rsr::GridMap> map;
  std::ifstream script(script_path);
  try {
    map.emplace(rsr::load_map(map_path, conn_of(conn)));
    if (!script) throw std::runtime_error("cannot open change script: " + script_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }

  struct Parsed {
    rsr::CellChange change;
    std::string text;
  };
  std::vector<Parsed> changes;
  std::string line;
  int line_no = 0;
  while (std::getline(script, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string op;
    int x = 0, y = 0;
    if (!(ss >> op >> x >> y) || (op != "add" && op != "del")) {
      std::cerr << "error: bad script line " << line_no << ": " << line << '\n';
      return kExitScript;
    }
    changes.push_back({{{x, y}, op == "del"}, line});
  }

  rsr::GridMap cur = *map;
  rsr::Decomposition d = rsr::decompose(cur);
  for (std::size_t i = 0; i < changes.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [nm, nd] = rsr::apply_change(cur, d, changes[i].change);
      cur = std::move(nm);
      d = std::move(nd);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: script line rejected (" << changes[i].text << "): " << e.what() << '\n';
      return kExitScript;
    }
    const auto us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << "change " << i << ' ' << changes[i].text << " repair_us " << us << '\n';
    const rsr::ValidationReport rep = rsr::validate(d, cur);
    if (!rep.ok) {
      std::cout << "validate FAILED after change " << i << ": " << rep.message << '\n';
      return kExitVerify;
    }
  }

  std::vector<std::pair<rsr::Cell, rsr::Cell>> pairs;
  if (queries > 0 && cur.free_count() > 1) {
    try {
      for (const rsr::Instance& in : rsr::sample_instances(cur, queries, seed))
        pairs.emplace_back(in.start, in.goal);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitIo;
    }
  }
  const rsr::ConsistencyReport rep = rsr::repair_consistency_check(cur, d, pairs);
  if (!rep.ok) {
    std::cout << "consistency FAILED: " << rep.detail << '\n';
    return kExitVerify;
  }
  std::cout << "changes " << changes.size() << '\n'
            << "queries " << rep.checked << " consistent\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rectangular symmetry reduction for grid pathfinding"};
  app.require_subcommand(1);

  std::string map_path, scen_path, out_path, script_path;
  int conn = 8;
  std::uint64_t seed = 1;
  int instances = 100;
  int threads = 1;
  int queries = 200;
  int sx = 0, sy = 0, gx = 0, gy = 0;
  bool no_pr = false, no_op = false, refine = false, stats = false, inject_fault = false;
  GenArgs gen;

  CLI::App* pre = app.add_subcommand("preprocess", "decompose a map and print statistics");
  pre->add_option("--map", map_path, "map file")->required();
  pre->add_option("--conn", conn, "connectivity")->check(CLI::IsMember({4, 8}));
  pre->add_flag("--stats", stats, "dump rectangles and pruned counts");

  CLI::App* solve = app.add_subcommand("solve", "answer a single query");
  solve->add_option("--map", map_path, "map file")->required();
  solve->add_option("--conn", conn, "connectivity")->check(CLI::IsMember({4, 8}));
  solve->add_option("--sx", sx, "start x")->required();
  solve->add_option("--sy", sy, "start y")->required();
  solve->add_option("--gx", gx, "goal x")->required();
  solve->add_option("--gy", gy, "goal y")->required();
  solve->add_flag("--no-pr", no_pr, "disable perimeter reduction");
  solve->add_flag("--no-op", no_op, "disable online pruning");
  solve->add_flag("--refine", refine, "print the cell-by-cell path");

  CLI::App* bench = app.add_subcommand("bench", "run paired searches and emit CSV");
  bench->add_option("--map", map_path, "map file")->required();
  bench->add_option("--scen", scen_path, "scenario file with instances");
  bench->add_option("--conn", conn, "connectivity")->check(CLI::IsMember({4, 8}));
  bench->add_option("--instances", instances, "sampled instance count")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "sampling seed");
  bench->add_option("--out", out_path, "CSV output path (stdout when absent)");
  bench->add_option("--threads", threads, "parallel workers")->check(CLI::PositiveNumber);
  bench->add_flag("--no-pr", no_pr, "disable perimeter reduction");
  bench->add_flag("--no-op", no_op, "disable online pruning");

  CLI::App* genc = app.add_subcommand("gen", "generate a synthetic map");
  add_gen_options(genc, gen);
  genc->add_option("--seed", seed, "generation seed");
  genc->add_option("--out", out_path, "map output path (stdout when absent)");

  CLI::App* verify = app.add_subcommand("verify", "cross-check the flag matrix against oracles");
  verify->add_option("--map", map_path, "map file (generated when absent)");
  add_gen_options(verify, gen);
  verify->add_option("--conn", conn, "connectivity (default: both)")
      ->check(CLI::IsMember({4, 8}));
  verify->add_option("--instances", instances, "instances per connectivity")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "sampling seed");
  verify->add_flag("--inject-fault", inject_fault, "corrupt the decomposition (self-test)")
      ->group("");
  int verify_conn_default = 0;

  CLI::App* mutate = app.add_subcommand("mutate", "apply a change script and re-verify");
  mutate->add_option("--map", map_path, "map file")->required();
  mutate->add_option("--script", script_path, "change script (add x y / del x y)")->required();
  mutate->add_option("--conn", conn, "connectivity")->check(CLI::IsMember({4, 8}));
  mutate->add_option("--queries", queries, "consistency queries after the script")
      ->check(CLI::NonNegativeNumber);
  mutate->add_option("--seed", seed, "query sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (pre->parsed()) return cmd_preprocess(map_path, conn, stats);
  if (solve->parsed()) return cmd_solve(map_path, conn, sx, sy, gx, gy, no_pr, no_op, refine);
  if (bench->parsed())
    return cmd_bench(map_path, scen_path, conn, instances, seed, out_path, no_pr, no_op, threads);
  if (genc->parsed()) return cmd_gen(gen, seed, out_path);
  if (verify->parsed()) {
    const int vc = verify->count("--conn") ? conn : verify_conn_default;
    const int n = verify->count("--instances") ? instances : 500;
    return cmd_verify(map_path, gen, vc, n, seed, inject_fault);
  }
  if (mutate->parsed()) return cmd_mutate(map_path, script_path, conn, queries, seed);
  return kExitOk;
}
