#pragma once
// Macro edges across a single empty rectangle.
//
// Perimeter nodes of an empty rectangle connect to each other through three
// constructions that together preserve all shortest distances:
//   - steps to adjacent nodes on the same side,
//   - 45-degree diagonal runs that land on an orthogonal side,
//   - fans to the opposite side, covering offsets up to the crossing
//     distance d (one straight edge instead, for 4-connected grids).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rsr/grid.hpp"
#include "rsr/rect.hpp"

namespace rsr {

enum class EdgeKind : std::uint8_t {
  SameSide,
  Orthogonal,
  Fan,
  Contracted,
  Insertion,
  Grid,
};

struct MacroEdge {
  Cell from;
  Cell to;
  Cost cost = 0;
  EdgeKind kind = EdgeKind::Grid;

  friend constexpr bool operator==(const MacroEdge&, const MacroEdge&) = default;
};

namespace detail {

inline void require_perimeter(const Rectangle& r, Cell n) {
  if (!r.alive()) throw std::invalid_argument("rectangle is not alive");
  if (!r.on_perimeter(n)) throw std::invalid_argument("node is not on the rectangle perimeter");
}

}  // namespace detail

inline void same_side_neighbours(const Rectangle& r, Cell n, std::vector<MacroEdge>& out) {
  detail::require_perimeter(r, n);
  const unsigned sides = sides_of(r, n);
  const std::size_t base = out.size();
  auto add = [&](Cell t) {
    for (std::size_t i = base; i < out.size(); ++i)
      if (out[i].to == t) return;
    out.push_back({n, t, 1.0, EdgeKind::SameSide});
  };
  if (sides & (kSideTop | kSideBottom)) {
    if (n.x - 1 >= r.x0) add({n.x - 1, n.y});
    if (n.x + 1 <= r.x1()) add({n.x + 1, n.y});
  }
  if (sides & (kSideLeft | kSideRight)) {
    if (n.y - 1 >= r.y0) add({n.x, n.y - 1});
    if (n.y + 1 <= r.y1()) add({n.x, n.y + 1});
  }
}

inline std::vector<MacroEdge> same_side_neighbours(const Rectangle& r, Cell n) {
  std::vector<MacroEdge> out;
  same_side_neighbours(r, n, out);
  return out;
}

// Diagonal runs from n to the furthest in-rectangle cell in each of the four
// diagonal directions. A run is kept when it lands on a side orthogonal to one
// of n's sides; landings on the strictly opposite side belong to the fan.
inline void orthogonal_neighbours(const Rectangle& r, Cell n, std::vector<MacroEdge>& out) {
  detail::require_perimeter(r, n);
  const unsigned sides = sides_of(r, n);
  unsigned wanted = 0;
  if (sides & (kSideTop | kSideBottom)) wanted |= kSideLeft | kSideRight;
  if (sides & (kSideLeft | kSideRight)) wanted |= kSideTop | kSideBottom;

  for (int dx : {-1, 1}) {
    for (int dy : {-1, 1}) {
      const int tx = dx > 0 ? r.x1() - n.x : n.x - r.x0;
      const int ty = dy > 0 ? r.y1() - n.y : n.y - r.y0;
      const int t = tx < ty ? tx : ty;
      if (t < 1) continue;
      const Cell land{n.x + dx * t, n.y + dy * t};
      if ((sides_of(r, land) & wanted) == 0) continue;
      out.push_back({n, land, kSqrt2 * t, EdgeKind::Orthogonal});
    }
  }
}

inline std::vector<MacroEdge> orthogonal_neighbours(const Rectangle& r, Cell n) {
  std::vector<MacroEdge> out;
  orthogonal_neighbours(r, n, out);
  return out;
}

namespace detail {

struct FanSpan {
  Cell proj;     // projection of n onto the opposite side
  int d = 0;     // crossing distance in cells
  bool horizontal = false;  // true when the opposite side runs along x
};

struct FanSpans {
  FanSpan item[4];
  int count = 0;

  const FanSpan* begin() const { return item; }
  const FanSpan* end() const { return item + count; }
};

inline FanSpans fan_spans(const Rectangle& r, Cell n) {
  const unsigned sides = sides_of(r, n);
  FanSpans spans;
  if ((sides & kSideTop) && r.h > 1) spans.item[spans.count++] = {{n.x, r.y1()}, r.h - 1, true};
  if ((sides & kSideBottom) && r.h > 1) spans.item[spans.count++] = {{n.x, r.y0}, r.h - 1, true};
  if ((sides & kSideLeft) && r.w > 1) spans.item[spans.count++] = {{r.x1(), n.y}, r.w - 1, false};
  if ((sides & kSideRight) && r.w > 1) spans.item[spans.count++] = {{r.x0, n.y}, r.w - 1, false};
  return spans;
}

}  // namespace detail

// Fan to the opposite side: every node within offset d of the projection of n,
// where d is the crossing distance. Offsets past the corner are clipped.
inline void fan_neighbours(const Rectangle& r, Cell n, std::vector<MacroEdge>& out) {
  detail::require_perimeter(r, n);
  for (const auto& span : detail::fan_spans(r, n)) {
    if (span.horizontal) {
      const int lo = std::max(r.x0, span.proj.x - span.d);
      const int hi = std::min(r.x1(), span.proj.x + span.d);
      for (int x = lo; x <= hi; ++x) {
        const Cell t{x, span.proj.y};
        out.push_back({n, t, metric_distance(Conn::Eight, n, t), EdgeKind::Fan});
      }
    } else {
      const int lo = std::max(r.y0, span.proj.y - span.d);
      const int hi = std::min(r.y1(), span.proj.y + span.d);
      for (int y = lo; y <= hi; ++y) {
        const Cell t{span.proj.x, y};
        out.push_back({n, t, metric_distance(Conn::Eight, n, t), EdgeKind::Fan});
      }
    }
  }
}

inline std::vector<MacroEdge> fan_neighbours(const Rectangle& r, Cell n) {
  std::vector<MacroEdge> out;
  fan_neighbours(r, n, out);
  return out;
}

// 4-connected crossing: one edge straight across to the nearest opposite node.
inline void fan_neighbours_four(const Rectangle& r, Cell n, std::vector<MacroEdge>& out) {
  detail::require_perimeter(r, n);
  for (const auto& span : detail::fan_spans(r, n))
    out.push_back({n, span.proj, static_cast<Cost>(span.d), EdgeKind::Fan});
}

inline std::vector<MacroEdge> fan_neighbours_four(const Rectangle& r, Cell n) {
  std::vector<MacroEdge> out;
  fan_neighbours_four(r, n, out);
  return out;
}

// Union of the constructions above, deduplicated by target and sorted by
// target cell. Every edge cost equals the metric distance of its endpoints.
inline void constructive_neighbours(const Rectangle& r, Cell n, Conn conn,
                                    std::vector<MacroEdge>& out) {
  out.clear();
  same_side_neighbours(r, n, out);
  if (conn == Conn::Eight) {
    orthogonal_neighbours(r, n, out);
    fan_neighbours(r, n, out);
  } else {
    fan_neighbours_four(r, n, out);
  }
  std::sort(out.begin(), out.end(), [](const MacroEdge& a, const MacroEdge& b) {
    if (a.to != b.to) return a.to < b.to;
    return a.cost < b.cost;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MacroEdge& a, const MacroEdge& b) { return a.to == b.to; }),
            out.end());
}

inline std::vector<MacroEdge> constructive_neighbours(const Rectangle& r, Cell n, Conn conn) {
  std::vector<MacroEdge> out;
  constructive_neighbours(r, n, conn, out);
  return out;
}

}  // namespace rsr
