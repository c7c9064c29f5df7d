#pragma once
// Paths, search statistics, and refinement of macro paths into grid steps.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "rsr/grid.hpp"

namespace rsr {

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct Path {
  std::vector<Cell> nodes;
  Cost cost = 0;
  SearchStats stats;
};

// Canonical unit-step expansion of a straight or macro move: diagonal steps
// first, then the straight remainder (x before y on 4-connected grids).
// Cells a and b are both included.
inline std::vector<Cell> canonical_segment(Cell a, Cell b, Conn conn) {
  std::vector<Cell> out{a};
  Cell c = a;
  const int sx = b.x > c.x ? 1 : -1;
  const int sy = b.y > c.y ? 1 : -1;
  if (conn == Conn::Eight) {
    while (c.x != b.x && c.y != b.y) {
      c.x += sx;
      c.y += sy;
      out.push_back(c);
    }
  }
  while (c.x != b.x) {
    c.x += sx;
    out.push_back(c);
  }
  while (c.y != b.y) {
    c.y += sy;
    out.push_back(c);
  }
  return out;
}

// Expands every macro step of p into unit grid moves. Macro edges stay inside
// one empty rectangle, so the canonical segment never meets an obstacle; the
// walk is still checked, and an illegal step reports a defective input path.
inline Path refine_path(const Path& p, const GridMap& map) {
  Path out;
  out.cost = p.cost;
  out.stats = p.stats;
  if (p.nodes.empty()) return out;
  out.nodes.push_back(p.nodes.front());
  for (std::size_t i = 1; i < p.nodes.size(); ++i) {
    const std::vector<Cell> seg = canonical_segment(p.nodes[i - 1], p.nodes[i], map.conn());
    out.nodes.insert(out.nodes.end(), seg.begin() + 1, seg.end());
  }
  for (std::size_t i = 1; i < out.nodes.size(); ++i) {
    const Cell u = out.nodes[i - 1];
    const Cell v = out.nodes[i];
    const int dx = v.x - u.x;
    const int dy = v.y - u.y;
    const bool unit = std::abs(dx) <= 1 && std::abs(dy) <= 1 && (dx != 0 || dy != 0);
    bool legal = unit && map.traversable(v);
    if (legal && dx != 0 && dy != 0)
      legal = map.conn() == Conn::Eight && map.traversable({u.x + dx, u.y}) &&
              map.traversable({u.x, u.y + dy});
    if (!legal) throw std::logic_error("refined path contains an illegal grid move");
  }
  return out;
}

inline Cost path_step_cost(const Path& p, Conn conn) {
  Cost total = 0;
  for (std::size_t i = 1; i < p.nodes.size(); ++i)
    total += metric_distance(conn, p.nodes[i - 1], p.nodes[i]);
  return total;
}

}  // namespace rsr
