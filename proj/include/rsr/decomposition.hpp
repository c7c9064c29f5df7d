#pragma once
// Empty-rectangle decomposition of a grid map.
//
// Every free cell belongs to exactly one obstacle-free rectangle. Perimeter
// nodes that have no grid neighbour in another rectangle are pruned; pruned
// nodes form components under the in-rectangle macro adjacency, and each
// component is contracted into direct edges between the active nodes that
// border it.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rsr/grid.hpp"
#include "rsr/macro_edges.hpp"
#include "rsr/rect.hpp"

namespace rsr {

enum class NodeClass : std::uint8_t { Interior, Pruned, Active };

struct PrunedComponents {
  int comp_count = 0;
  std::unordered_map<std::int64_t, std::int32_t> comp_of;  // pruned cell -> component
  std::vector<std::vector<Cell>> members;                  // per component, sorted
  std::vector<std::vector<Cell>> actives;                  // active nodes bordering each component
  std::unordered_map<std::int64_t, std::vector<std::int32_t>> comps_of_active;
};

struct Decomposition {
  int width = 0;
  int height = 0;
  Conn conn = Conn::Four;
  std::vector<std::int32_t> rect_of;  // per cell; -1 when blocked
  std::vector<Rectangle> rects;       // slot index == id; dead slots have w == 0
  std::vector<NodeClass> class_of;    // meaningful for free cells only
  std::vector<PrunedComponents> comps;  // parallel to rects

  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y) * width + c.x; }
  bool in_bounds(Cell c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }

  std::int32_t rect_id_at(Cell c) const { return in_bounds(c) ? rect_of[index(c)] : -1; }

  const Rectangle& rect_at(Cell c) const {
    const std::int32_t id = rect_id_at(c);
    if (id < 0) throw std::invalid_argument("cell has no rectangle");
    return rects[id];
  }

  NodeClass node_class(Cell c) const { return class_of[index(c)]; }

  int alive_rect_count() const {
    int n = 0;
    for (const Rectangle& r : rects) n += r.alive();
    return n;
  }
};

namespace detail {

// Greedy maximal-run tiling. Scans row-major; from each open cell it takes the
// widest open run rightward, then extends that span downward while every row
// in it is fully open. emit must mark the emitted block as no longer open.
template <typename OpenFn, typename EmitFn>
inline void greedy_tile(int x_lo, int y_lo, int x_hi, int y_hi, OpenFn open, EmitFn emit) {
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      if (!open(Cell{x, y})) continue;
      int xe = x;
      while (xe + 1 <= x_hi && open(Cell{xe + 1, y})) ++xe;
      int ye = y;
      while (ye + 1 <= y_hi) {
        bool full = true;
        for (int xi = x; xi <= xe && full; ++xi) full = open(Cell{xi, ye + 1});
        if (!full) break;
        ++ye;
      }
      emit(x, y, xe - x + 1, ye - y + 1);
    }
  }
}

}  // namespace detail

inline std::vector<NodeClass> classify(const GridMap& map, const std::vector<Rectangle>& rects,
                                       const std::vector<std::int32_t>& rect_of) {
  std::vector<NodeClass> classes(rect_of.size(), NodeClass::Interior);
  std::vector<std::pair<Cell, Cost>> nbs;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const Cell c{x, y};
      const std::size_t i = map.index(c);
      if (!map.traversable(c)) continue;
      const Rectangle& r = rects[rect_of[i]];
      if (r.is_interior(c)) continue;
      nbs.clear();
      grid_neighbours(map, c, nbs);
      bool external = false;
      for (const auto& [nb, cost] : nbs)
        if (rect_of[map.index(nb)] != r.id) {
          external = true;
          break;
        }
      classes[i] = external ? NodeClass::Active : NodeClass::Pruned;
    }
  }
  return classes;
}

inline PrunedComponents build_pruned_components(const Rectangle& r, Conn conn,
                                                const std::vector<NodeClass>& class_of,
                                                int map_width) {
  PrunedComponents pc;
  if (!r.alive()) return pc;
  auto cls = [&](Cell c) {
    return class_of[static_cast<std::size_t>(c.y) * map_width + c.x];
  };
  const std::vector<Cell> perimeter = perimeter_cells(r);
  std::vector<MacroEdge> buf;

  for (Cell seed : perimeter) {
    if (cls(seed) != NodeClass::Pruned || pc.comp_of.contains(cell_key(seed))) continue;
    const std::int32_t id = pc.comp_count++;
    pc.members.emplace_back();
    std::vector<Cell> stack{seed};
    pc.comp_of[cell_key(seed)] = id;
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      pc.members[id].push_back(c);
      constructive_neighbours(r, c, conn, buf);
      for (const MacroEdge& e : buf) {
        if (cls(e.to) != NodeClass::Pruned) continue;
        if (pc.comp_of.emplace(cell_key(e.to), id).second) stack.push_back(e.to);
      }
    }
    std::sort(pc.members[id].begin(), pc.members[id].end());
  }

  pc.actives.resize(pc.comp_count);
  for (Cell c : perimeter) {
    if (cls(c) != NodeClass::Active) continue;
    constructive_neighbours(r, c, conn, buf);
    std::vector<std::int32_t> ids;
    for (const MacroEdge& e : buf)
      if (cls(e.to) == NodeClass::Pruned) ids.push_back(pc.comp_of.at(cell_key(e.to)));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) continue;
    for (std::int32_t id : ids) pc.actives[id].push_back(c);
    pc.comps_of_active.emplace(cell_key(c), std::move(ids));
  }
  for (auto& v : pc.actives) std::sort(v.begin(), v.end());
  return pc;
}

inline Decomposition decompose(const GridMap& map) {
  Decomposition d;
  d.width = map.width();
  d.height = map.height();
  d.conn = map.conn();
  d.rect_of.assign(static_cast<std::size_t>(d.width) * d.height, -1);

  auto open = [&](Cell c) { return map.traversable(c) && d.rect_of[d.index(c)] == -1; };
  auto emit = [&](int x, int y, int w, int h) {
    const std::int32_t id = static_cast<std::int32_t>(d.rects.size());
    d.rects.push_back({id, x, y, w, h});
    for (int yy = y; yy < y + h; ++yy)
      for (int xx = x; xx < x + w; ++xx) d.rect_of[d.index({xx, yy})] = id;
  };
  detail::greedy_tile(0, 0, d.width - 1, d.height - 1, open, emit);

  d.class_of = classify(map, d.rects, d.rect_of);
  d.comps.resize(d.rects.size());
  for (const Rectangle& r : d.rects)
    if (r.alive()) d.comps[r.id] = build_pruned_components(r, d.conn, d.class_of, d.width);
  return d;
}

// Contraction of the pruned components around an active node: direct edges to
// every other active node bordering a shared component, at metric cost. Inside
// an empty rectangle the metric distance is always realizable, so these edges
// stand in exactly for the removed pruned paths.
inline void contracted_active_edges(const Decomposition& d, const Rectangle& r, Cell n,
                                    std::vector<MacroEdge>& out) {
  if (!r.alive()) throw std::invalid_argument("rectangle is not alive");
  if (d.rect_id_at(n) != r.id) throw std::invalid_argument("node is not in the rectangle");
  if (d.node_class(n) != NodeClass::Active) throw std::invalid_argument("node is not active");

  const PrunedComponents& pc = d.comps[r.id];
  const auto it = pc.comps_of_active.find(cell_key(n));
  if (it == pc.comps_of_active.end()) return;
  for (std::int32_t comp : it->second)
    for (Cell a : pc.actives[comp])
      if (a != n) out.push_back({n, a, metric_distance(d.conn, n, a), EdgeKind::Contracted});
}

inline std::vector<MacroEdge> contracted_active_edges(const Decomposition& d, const Rectangle& r,
                                                      Cell n) {
  std::vector<MacroEdge> out;
  contracted_active_edges(d, r, n, out);
  std::sort(out.begin(), out.end(), [](const MacroEdge& a, const MacroEdge& b) { return a.to < b.to; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MacroEdge& a, const MacroEdge& b) { return a.to == b.to; }),
            out.end());
  return out;
}

struct ValidationReport {
  bool ok = true;
  std::string message;
};

namespace detail {

inline std::string cell_str(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

// Components compared up to label order: lists of (members, actives) sorted by
// the first member cell.
inline std::vector<std::pair<std::vector<Cell>, std::vector<Cell>>> canonical_components(
    const PrunedComponents& pc) {
  std::vector<std::pair<std::vector<Cell>, std::vector<Cell>>> out;
  for (int i = 0; i < pc.comp_count; ++i) out.emplace_back(pc.members[i], pc.actives[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline ValidationReport validate(const Decomposition& d, const GridMap& map) {
  auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
  const std::size_t cells = static_cast<std::size_t>(map.width()) * map.height();
  if (d.width != map.width() || d.height != map.height())
    return fail("dimension mismatch between decomposition and map");
  if (d.conn != map.conn()) return fail("connectivity mismatch between decomposition and map");
  if (d.rect_of.size() != cells || d.class_of.size() != cells)
    return fail("per-cell table size mismatch");
  if (d.comps.size() != d.rects.size()) return fail("component table size mismatch");

  for (std::size_t i = 0; i < d.rects.size(); ++i)
    if (d.rects[i].id != static_cast<std::int32_t>(i))
      return fail("rectangle slot " + std::to_string(i) + " holds id " +
                  std::to_string(d.rects[i].id));

  std::vector<std::int32_t> cover(cells, -1);
  for (const Rectangle& r : d.rects) {
    if (!r.alive()) continue;
    if (r.x0 < 0 || r.y0 < 0 || r.x1() >= map.width() || r.y1() >= map.height())
      return fail("rectangle " + std::to_string(r.id) + " exceeds map bounds");
    for (int y = r.y0; y <= r.y1(); ++y) {
      for (int x = r.x0; x <= r.x1(); ++x) {
        const Cell c{x, y};
        if (!map.traversable(c))
          return fail("rectangle " + std::to_string(r.id) + " covers blocked cell " +
                      detail::cell_str(c));
        std::int32_t& slot = cover[map.index(c)];
        if (slot != -1)
          return fail("rectangles " + std::to_string(slot) + " and " + std::to_string(r.id) +
                      " overlap at " + detail::cell_str(c));
        slot = r.id;
      }
    }
  }

  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const Cell c{x, y};
      const std::size_t i = map.index(c);
      if (map.traversable(c)) {
        if (cover[i] == -1) return fail("free cell " + detail::cell_str(c) + " is uncovered");
        if (d.rect_of[i] != cover[i])
          return fail("cell " + detail::cell_str(c) + " not covered by its rectangle (maps to " +
                      std::to_string(d.rect_of[i]) + ", lies in " + std::to_string(cover[i]) + ")");
      } else if (d.rect_of[i] != -1) {
        return fail("blocked cell " + detail::cell_str(c) + " has a rectangle id");
      }
    }
  }

  const std::vector<NodeClass> fresh = classify(map, d.rects, d.rect_of);
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x) {
      const Cell c{x, y};
      if (map.traversable(c) && fresh[map.index(c)] != d.class_of[map.index(c)])
        return fail("node class mismatch at " + detail::cell_str(c));
    }

  for (const Rectangle& r : d.rects) {
    if (!r.alive()) continue;
    const PrunedComponents fresh_pc = build_pruned_components(r, d.conn, d.class_of, d.width);
    if (detail::canonical_components(fresh_pc) != detail::canonical_components(d.comps[r.id]))
      return fail("pruned components mismatch in rectangle " + std::to_string(r.id));
  }
  return {};
}

}  // namespace rsr
