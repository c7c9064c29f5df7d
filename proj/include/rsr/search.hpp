#pragma once
// A* over the reduced graph, plus plain grid A* and a plain Dijkstra used as
// independent ground truth.

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rsr/decomposition.hpp"
#include "rsr/grid.hpp"
#include "rsr/macro_graph.hpp"
#include "rsr/path.hpp"

namespace rsr {

inline constexpr Cost kUnreached = std::numeric_limits<Cost>::infinity();

namespace detail {

struct HeapEntry {
  Cost f = 0;
  Cost g = 0;
  Cell cell;
};

// Min-heap on f; ties prefer the larger g, then the smaller cell, so runs are
// reproducible across platforms.
struct HeapOrder {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return b.cell < a.cell;
  }
};

using Heap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder>;

inline void require_endpoint(const GridMap& map, Cell c, const char* what) {
  if (!map.traversable(c))
    throw std::invalid_argument(std::string(what) + " is out of bounds or blocked");
}

inline Path reconstruct(const GridMap& map, const std::vector<std::int32_t>& parent, Cell goal) {
  Path p;
  std::int32_t i = static_cast<std::int32_t>(map.index(goal));
  while (i != -1) {
    p.nodes.push_back({i % map.width(), i / map.width()});
    i = parent[i];
  }
  std::reverse(p.nodes.begin(), p.nodes.end());
  return p;
}

// Per-thread search state, reset by epoch stamp instead of refilling whole
// arrays, so query cost scales with the explored region and not the map size.
struct SearchArena {
  std::vector<std::uint32_t> stamp;
  std::vector<Cost> dist;
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> parent_rect;
  std::vector<std::uint8_t> closed;
  std::uint32_t epoch = 0;

  void begin(std::size_t cells) {
    if (stamp.size() < cells) {
      stamp.assign(cells, 0);
      dist.resize(cells);
      parent.resize(cells);
      parent_rect.resize(cells);
      closed.resize(cells);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
  }

  void touch(std::size_t i) {
    if (stamp[i] != epoch) {
      stamp[i] = epoch;
      dist[i] = kUnreached;
      parent[i] = -1;
      parent_rect[i] = -1;
      closed[i] = 0;
    }
  }
};

inline SearchArena& arena() {
  static thread_local SearchArena a;
  return a;
}

}  // namespace detail

inline std::optional<Path> astar_plain(const GridMap& map, Cell s, Cell g) {
  detail::require_endpoint(map, s, "start");
  detail::require_endpoint(map, g, "goal");
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t cells = static_cast<std::size_t>(map.width()) * map.height();
  detail::SearchArena& ar = detail::arena();
  ar.begin(cells);
  detail::Heap open;
  SearchStats stats;

  ar.touch(map.index(s));
  ar.dist[map.index(s)] = 0;
  open.push({metric_distance(map.conn(), s, g), 0, s});
  ++stats.generated;

  bool found = false;
  std::vector<std::pair<Cell, Cost>> nbs;
  while (!open.empty()) {
    const detail::HeapEntry e = open.top();
    open.pop();
    const std::size_t ei = map.index(e.cell);
    if (ar.closed[ei]) continue;
    ar.closed[ei] = 1;
    if (e.cell == g) {
      found = true;
      break;
    }
    ++stats.expanded;
    nbs.clear();
    grid_neighbours(map, e.cell, nbs);
    for (const auto& [nb, cost] : nbs) {
      const std::size_t ni = map.index(nb);
      ar.touch(ni);
      if (ar.closed[ni]) continue;
      const Cost nd = ar.dist[ei] + cost;
      if (nd < ar.dist[ni]) {
        ar.dist[ni] = nd;
        ar.parent[ni] = static_cast<std::int32_t>(ei);
        open.push({nd + metric_distance(map.conn(), nb, g), nd, nb});
        ++stats.generated;
      }
    }
  }

  stats.elapsed = std::chrono::steady_clock::now() - t0;
  if (!found) return std::nullopt;
  Path p = detail::reconstruct(map, ar.parent, g);
  p.cost = ar.dist[map.index(g)];
  p.stats = stats;
  return p;
}

inline std::optional<Path> astar_rsr(const GridMap& map, const Decomposition& d, Cell s, Cell g,
                                     const SearchOptions& opt = {}) {
  detail::require_endpoint(map, s, "start");
  detail::require_endpoint(map, g, "goal");
  if (d.width != map.width() || d.height != map.height() || d.conn != map.conn())
    throw std::invalid_argument("decomposition does not match map");
  const auto t0 = std::chrono::steady_clock::now();

  if (std::optional<Path> sc = same_rectangle_shortcut(d, s, g)) {
    sc->stats.elapsed = std::chrono::steady_clock::now() - t0;
    return sc;
  }

  const InsertionOverlay overlay = build_overlay(map, d, s, g, opt);
  const std::size_t cells = static_cast<std::size_t>(map.width()) * map.height();
  detail::SearchArena& ar = detail::arena();
  ar.begin(cells);
  detail::Heap open;
  SearchStats stats;

  ar.touch(map.index(s));
  ar.dist[map.index(s)] = 0;
  open.push({metric_distance(d.conn, s, g), 0, s});
  ++stats.generated;

  SuccessorSet succ;
  SuccessorScratch scratch;
  bool found = false;
  while (!open.empty()) {
    const detail::HeapEntry e = open.top();
    open.pop();
    const std::size_t ei = map.index(e.cell);
    if (ar.closed[ei]) continue;
    ar.closed[ei] = 1;
    if (e.cell == g) {
      found = true;
      break;
    }
    ++stats.expanded;

    std::optional<std::int32_t> from_rect;
    if (ar.parent_rect[ei] != -1) from_rect = ar.parent_rect[ei];
    successors(map, d, &overlay, e.cell, from_rect, opt, succ, scratch);
    const std::int32_t my_rect = d.rect_id_at(e.cell);
    auto relax = [&](const MacroEdge& edge) {
      assert(metric_distance(d.conn, edge.from, g) <=
             edge.cost + metric_distance(d.conn, edge.to, g) + 1e-9);
      const std::size_t ni = map.index(edge.to);
      ar.touch(ni);
      if (ar.closed[ni]) {
        assert(ar.dist[ei] + edge.cost >= ar.dist[ni] - 1e-9);
        return;
      }
      const Cost nd = ar.dist[ei] + edge.cost;
      if (nd < ar.dist[ni]) {
        ar.dist[ni] = nd;
        ar.parent[ni] = static_cast<std::int32_t>(ei);
        ar.parent_rect[ni] = my_rect;
        open.push({nd + metric_distance(d.conn, edge.to, g), nd, edge.to});
        ++stats.generated;
      }
    };
    for (const MacroEdge& edge : succ.primary) relax(edge);
    for (const MacroEdge& edge : succ.secondary) relax(edge);
  }

  stats.elapsed = std::chrono::steady_clock::now() - t0;
  if (!found) return std::nullopt;
  Path p = detail::reconstruct(map, ar.parent, g);
  p.cost = ar.dist[map.index(g)];
  p.stats = stats;
  return p;
}

// Exhaustive single-source distances by uniform-cost search. Written as its
// own loop on purpose: it is the ground truth the A* variants are tested
// against, and shares no search code with them.
inline std::vector<Cost> dijkstra_plain(const GridMap& map, Cell s) {
  detail::require_endpoint(map, s, "source");
  const std::size_t cells = static_cast<std::size_t>(map.width()) * map.height();
  std::vector<Cost> dist(cells, kUnreached);
  std::vector<std::uint8_t> done(cells, 0);

  struct Item {
    Cost g;
    Cell cell;
  };
  struct Order {
    bool operator()(const Item& a, const Item& b) const {
      if (a.g != b.g) return a.g > b.g;
      return b.cell < a.cell;
    }
  };
  std::priority_queue<Item, std::vector<Item>, Order> open;
  dist[map.index(s)] = 0;
  open.push({0, s});

  std::vector<std::pair<Cell, Cost>> nbs;
  while (!open.empty()) {
    const Item it = open.top();
    open.pop();
    const std::size_t i = map.index(it.cell);
    if (done[i]) continue;
    done[i] = 1;
    nbs.clear();
    grid_neighbours(map, it.cell, nbs);
    for (const auto& [nb, cost] : nbs) {
      const std::size_t ni = map.index(nb);
      if (!done[ni] && dist[i] + cost < dist[ni]) {
        dist[ni] = dist[i] + cost;
        open.push({dist[ni], nb});
      }
    }
  }
  return dist;
}

}  // namespace rsr
