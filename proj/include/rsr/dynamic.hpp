#pragma once
// Incremental decomposition repair under obstacle insertion and removal.
//
// A change invalidates a small set of rectangles, re-tiles their free cells
// with the same greedy scheme used offline, and recomputes classes and pruned
// components for every new rectangle plus the survivors bordering the region.
// Inputs are taken by value semantics: the returned (map, decomposition) pair
// is a fresh snapshot and the originals stay untouched, so concurrent readers
// of the old snapshot are never disturbed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rsr/decomposition.hpp"
#include "rsr/grid.hpp"
#include "rsr/search.hpp"

namespace rsr {

struct CellChange {
  Cell cell;
  bool new_state = false;  // true: cell becomes traversable
};

namespace detail {

inline void reclassify_rect(const GridMap& map, Decomposition& d, const Rectangle& r) {
  std::vector<std::pair<Cell, Cost>> nbs;
  for (int y = r.y0; y <= r.y1(); ++y) {
    for (int x = r.x0; x <= r.x1(); ++x) {
      const Cell c{x, y};
      const std::size_t i = d.index(c);
      if (r.is_interior(c)) {
        d.class_of[i] = NodeClass::Interior;
        continue;
      }
      nbs.clear();
      grid_neighbours(map, c, nbs);
      bool external = false;
      for (const auto& [nb, cost] : nbs)
        if (d.rect_of[d.index(nb)] != r.id) {
          external = true;
          break;
        }
      d.class_of[i] = external ? NodeClass::Active : NodeClass::Pruned;
    }
  }
}

}  // namespace detail

inline std::pair<GridMap, Decomposition> apply_change(const GridMap& map, const Decomposition& d,
                                                      CellChange ch) {
  if (!map.in_bounds(ch.cell)) throw std::invalid_argument("change cell is out of bounds");
  if (map.traversable(ch.cell) == ch.new_state)
    throw std::invalid_argument("no-op change: cell already in the requested state");

  GridMap out_map = map;
  out_map.set_cell(ch.cell, ch.new_state ? '.' : '@');
  Decomposition out = d;

  // Cells whose free space must be re-tiled, and the rectangles that die.
  std::unordered_set<std::int64_t> region;
  std::vector<std::int32_t> invalidated;
  auto invalidate = [&](std::int32_t id) {
    if (std::find(invalidated.begin(), invalidated.end(), id) != invalidated.end()) return;
    invalidated.push_back(id);
    const Rectangle& r = out.rects[id];
    for (int y = r.y0; y <= r.y1(); ++y)
      for (int x = r.x0; x <= r.x1(); ++x) region.insert(cell_key({x, y}));
  };

  if (!ch.new_state) {
    invalidate(out.rect_of[out.index(ch.cell)]);
    region.erase(cell_key(ch.cell));
  } else {
    region.insert(cell_key(ch.cell));
    const int steps = out.conn == Conn::Eight ? 8 : 4;
    for (int i = 0; i < steps; ++i) {
      const Cell nb{ch.cell.x + kStepDx[i], ch.cell.y + kStepDy[i]};
      const std::int32_t id = out.rect_id_at(nb);
      if (id >= 0) invalidate(id);
    }
  }

  int bx0 = out.width, by0 = out.height, bx1 = -1, by1 = -1;
  for (std::int64_t key : region) {
    const int x = static_cast<int>(key & 0xffffffff);
    const int y = static_cast<int>(key >> 32);
    bx0 = std::min(bx0, x);
    bx1 = std::max(bx1, x);
    by0 = std::min(by0, y);
    by1 = std::max(by1, y);
    out.rect_of[out.index({x, y})] = -1;
  }
  for (std::int32_t id : invalidated) {
    out.rects[id] = Rectangle{id, 0, 0, 0, 0};
    out.comps[id] = PrunedComponents{};
  }
  if (!ch.new_state) out.rect_of[out.index(ch.cell)] = -1;

  // Re-tile the region, reusing dead id slots smallest-first.
  std::vector<std::int32_t> free_slots;
  for (const Rectangle& r : out.rects)
    if (!r.alive()) free_slots.push_back(r.id);
  std::sort(free_slots.begin(), free_slots.end());
  std::size_t next_slot = 0;

  std::vector<std::int32_t> fresh_ids;
  if (bx1 >= bx0) {
    auto open = [&](Cell c) {
      return region.contains(cell_key(c)) && out.rect_of[out.index(c)] == -1;
    };
    auto emit = [&](int x, int y, int w, int h) {
      std::int32_t id;
      if (next_slot < free_slots.size()) {
        id = free_slots[next_slot++];
      } else {
        id = static_cast<std::int32_t>(out.rects.size());
        out.rects.push_back({});
        out.comps.push_back({});
      }
      out.rects[id] = Rectangle{id, x, y, w, h};
      fresh_ids.push_back(id);
      for (int yy = y; yy < y + h; ++yy)
        for (int xx = x; xx < x + w; ++xx) out.rect_of[out.index({xx, yy})] = id;
    };
    detail::greedy_tile(bx0, by0, bx1, by1, open, emit);
  }

  // Classes and components must be refreshed for the new rectangles and for
  // survivors with a cell bordering the region (their externals changed).
  std::unordered_set<std::int32_t> affected(fresh_ids.begin(), fresh_ids.end());
  auto touch_ring = [&](Cell c) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const std::int32_t id = out.rect_id_at({c.x + dx, c.y + dy});
        if (id >= 0) affected.insert(id);
      }
  };
  for (std::int64_t key : region)
    touch_ring({static_cast<int>(key & 0xffffffff), static_cast<int>(key >> 32)});
  touch_ring(ch.cell);

  std::vector<std::int32_t> order(affected.begin(), affected.end());
  std::sort(order.begin(), order.end());
  for (std::int32_t id : order) detail::reclassify_rect(out_map, out, out.rects[id]);
  for (std::int32_t id : order)
    out.comps[id] = build_pruned_components(out.rects[id], out.conn, out.class_of, out.width);

  return {std::move(out_map), std::move(out)};
}

struct ConsistencyReport {
  bool ok = true;
  int checked = 0;
  std::string detail;
};

// Triple oracle over sampled queries: the repaired decomposition, a fresh
// decomposition of the same map, and plain grid A* must agree on every cost
// (and on unreachability).
inline ConsistencyReport repair_consistency_check(const GridMap& map, const Decomposition& repaired,
                                                  std::span<const std::pair<Cell, Cell>> queries) {
  ConsistencyReport rep;
  const Decomposition fresh = decompose(map);
  for (const auto& [s, g] : queries) {
    const std::optional<Path> a = astar_rsr(map, repaired, s, g);
    const std::optional<Path> b = astar_rsr(map, fresh, s, g);
    const std::optional<Path> c = astar_plain(map, s, g);
    ++rep.checked;
    auto describe = [&](const char* what) {
      rep.ok = false;
      rep.detail = std::string(what) + " for query (" + std::to_string(s.x) + "," +
                   std::to_string(s.y) + ")->(" + std::to_string(g.x) + "," + std::to_string(g.y) +
                   ")";
    };
    if (a.has_value() != c.has_value() || b.has_value() != c.has_value()) {
      describe("reachability disagreement");
      return rep;
    }
    if (!a) continue;
    const double da = std::abs(a->cost - c->cost);
    const double db = std::abs(b->cost - c->cost);
    if (da > 1e-6 || db > 1e-6) {
      describe("cost disagreement");
      return rep;
    }
  }
  return rep;
}

}  // namespace rsr
