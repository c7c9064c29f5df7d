#pragma once
// Benchmark harness: solvable instance sampling, paired plain/reduced runs,
// and CSV reporting.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rsr/decomposition.hpp"
#include "rsr/gen.hpp"
#include "rsr/grid.hpp"
#include "rsr/search.hpp"

namespace rsr {

struct Instance {
  Cell start;
  Cell goal;
};

// Uniform rejection sampling over free cells: endpoints must share a grid
// connectivity component and lie at least min_sep_frac of the map diagonal
// apart, so sampled queries are solvable and non-trivial.
inline std::vector<Instance> sample_instances(const GridMap& map, int count, std::uint64_t seed,
                                              double min_sep_frac = 0.1) {
  std::vector<Cell> free;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (map.traversable({x, y})) free.push_back({x, y});
  if (free.empty()) throw std::runtime_error("map has no free cells to sample from");

  std::vector<std::int32_t> comp(static_cast<std::size_t>(map.width()) * map.height(), -1);
  std::int32_t comps = 0;
  std::vector<Cell> stack;
  std::vector<std::pair<Cell, Cost>> nbs;
  for (Cell c : free) {
    if (comp[map.index(c)] != -1) continue;
    const std::int32_t id = comps++;
    comp[map.index(c)] = id;
    stack.push_back(c);
    while (!stack.empty()) {
      const Cell u = stack.back();
      stack.pop_back();
      nbs.clear();
      grid_neighbours(map, u, nbs);
      for (const auto& [nb, cost] : nbs)
        if (comp[map.index(nb)] == -1) {
          comp[map.index(nb)] = id;
          stack.push_back(nb);
        }
    }
  }

  const Cost min_sep =
      min_sep_frac * metric_distance(map.conn(), {0, 0}, {map.width() - 1, map.height() - 1});
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  long long attempts = 0;
  const long long cap = 10000LL * count + 10000;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > cap)
      throw std::runtime_error("unable to sample solvable instances with the required separation");
    const Cell s = free[detail::rand_below(rng, free.size())];
    const Cell g = free[detail::rand_below(rng, free.size())];
    if (comp[map.index(s)] != comp[map.index(g)]) continue;
    if (metric_distance(map.conn(), s, g) < min_sep) continue;
    out.push_back({s, g});
  }
  return out;
}

struct BenchRecord {
  std::string map_id;
  Conn conn = Conn::Eight;
  Cell s;
  Cell g;
  Cost cost_rsr = 0;
  Cost cost_plain = 0;
  std::uint64_t expanded_rsr = 0;
  std::uint64_t expanded_plain = 0;
  std::int64_t time_rsr_ns = 0;
  std::int64_t time_plain_ns = 0;
  bool same_rect = false;
};

inline constexpr const char* kBenchCsvHeader =
    "map,conn,sx,sy,gx,gy,cost_rsr,cost_plain,expanded_rsr,expanded_plain,time_rsr_us,"
    "time_plain_us,same_rect,speedup";

// Runs every instance through both searchers. Rows keep instance order no
// matter how many workers execute them, and a cost disagreement aborts the
// whole run: a mismatch is a correctness bug, not a data point.
inline std::vector<BenchRecord> run_bench(const GridMap& map, const Decomposition& d,
                                          const std::vector<Instance>& instances,
                                          const std::string& map_id, const SearchOptions& opt = {},
                                          int threads = 1) {
  std::vector<BenchRecord> records(instances.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::string> errors(instances.size());

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size() || failed.load()) break;
      const Instance& in = instances[i];
      BenchRecord& rec = records[i];
      rec.map_id = map_id;
      rec.conn = map.conn();
      rec.s = in.start;
      rec.g = in.goal;
      const std::optional<Path> plain = astar_plain(map, in.start, in.goal);
      const std::optional<Path> fast = astar_rsr(map, d, in.start, in.goal, opt);
      if (!plain || !fast) {
        errors[i] = "instance unexpectedly unsolvable";
        failed.store(true);
        break;
      }
      if (std::abs(plain->cost - fast->cost) > 1e-6) {
        errors[i] = "cost mismatch: plain " + std::to_string(plain->cost) + " vs reduced " +
                    std::to_string(fast->cost);
        failed.store(true);
        break;
      }
      rec.cost_rsr = fast->cost;
      rec.cost_plain = plain->cost;
      rec.expanded_rsr = fast->stats.expanded;
      rec.expanded_plain = plain->stats.expanded;
      rec.time_rsr_ns = fast->stats.elapsed.count();
      rec.time_plain_ns = plain->stats.elapsed.count();
      rec.same_rect = d.rect_id_at(in.start) == d.rect_id_at(in.goal);
    }
  };

  const int n = std::max(1, std::min<int>(threads, static_cast<int>(instances.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < instances.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("benchmark aborted on instance " + std::to_string(i) + " (" +
                               std::to_string(instances[i].start.x) + "," +
                               std::to_string(instances[i].start.y) + ")->(" +
                               std::to_string(instances[i].goal.x) + "," +
                               std::to_string(instances[i].goal.y) + "): " + errors[i]);
  return records;
}

inline std::int64_t ns_to_us(std::int64_t ns) { return ns / 1000; }

inline double record_speedup(const BenchRecord& r) {
  const double rsr = static_cast<double>(std::max<std::int64_t>(r.time_rsr_ns, 1));
  const double plain = static_cast<double>(std::max<std::int64_t>(r.time_plain_ns, 1));
  return plain / rsr;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  char buf[64];
  for (const BenchRecord& r : records) {
    out << r.map_id << ',' << static_cast<int>(r.conn) << ',' << r.s.x << ',' << r.s.y << ','
        << r.g.x << ',' << r.g.y << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,", r.cost_rsr, r.cost_plain);
    out << buf << r.expanded_rsr << ',' << r.expanded_plain << ',' << ns_to_us(r.time_rsr_ns)
        << ',' << ns_to_us(r.time_plain_ns) << ',' << (r.same_rect ? 1 : 0) << ',';
    std::snprintf(buf, sizeof buf, "%.4f", record_speedup(r));
    out << buf << '\n';
  }
}

// Summed-time speedup over the rows that actually searched; same-rectangle
// instances are answered without search and would distort the average.
inline double aggregate_speedup(const std::vector<BenchRecord>& records) {
  std::int64_t rsr = 0, plain = 0;
  for (const BenchRecord& r : records) {
    if (r.same_rect) continue;
    rsr += r.time_rsr_ns;
    plain += r.time_plain_ns;
  }
  if (rsr <= 0) return 1.0;
  return static_cast<double>(plain) / static_cast<double>(rsr);
}

}  // namespace rsr
