#pragma once
// The reduced search graph: successor generation over active perimeter nodes,
// search-local endpoint insertion, the same-rectangle shortcut, and an exact
// clique oracle used to check edge coverage on small rectangles.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rsr/decomposition.hpp"
#include "rsr/grid.hpp"
#include "rsr/macro_edges.hpp"
#include "rsr/path.hpp"
#include "rsr/rect.hpp"

namespace rsr {

struct SearchOptions {
  bool perimeter_reduction = true;
  bool online_pruning = true;
};

struct SuccessorSet {
  std::vector<MacroEdge> primary;
  std::vector<MacroEdge> secondary;
};

// Search-local edges for start and goal cells that are not part of the
// reduced graph. Entries are never persisted into the decomposition.
struct InsertionOverlay {
  struct Entry {
    Cell cell;
    std::int32_t rect_id = -1;
    std::vector<MacroEdge> edges;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::int64_t, std::vector<MacroEdge>> incoming;

  const Entry* find(Cell c) const {
    for (const Entry& e : entries)
      if (e.cell == c) return &e;
    return nullptr;
  }
};

namespace detail {

// Fan edges from an arbitrary in-rectangle cell toward all four sides,
// deduplicated by target. Used for endpoint insertion.
inline std::vector<MacroEdge> insertion_fans(const Rectangle& r, Cell c, Conn conn) {
  std::vector<MacroEdge> out;
  struct Span {
    Cell proj;
    int d;
    bool horizontal;
  };
  const Span spans[4] = {
      {{c.x, r.y0}, c.y - r.y0, true},
      {{c.x, r.y1()}, r.y1() - c.y, true},
      {{r.x0, c.y}, c.x - r.x0, false},
      {{r.x1(), c.y}, r.x1() - c.x, false},
  };
  for (const Span& s : spans) {
    if (s.d < 1) continue;
    if (conn == Conn::Four) {
      out.push_back({c, s.proj, static_cast<Cost>(s.d), EdgeKind::Insertion});
      continue;
    }
    if (s.horizontal) {
      for (int x = std::max(r.x0, s.proj.x - s.d); x <= std::min(r.x1(), s.proj.x + s.d); ++x) {
        const Cell t{x, s.proj.y};
        out.push_back({c, t, metric_distance(conn, c, t), EdgeKind::Insertion});
      }
    } else {
      for (int y = std::max(r.y0, s.proj.y - s.d); y <= std::min(r.y1(), s.proj.y + s.d); ++y) {
        const Cell t{s.proj.x, y};
        out.push_back({c, t, metric_distance(conn, c, t), EdgeKind::Insertion});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MacroEdge& a, const MacroEdge& b) { return a.to < b.to; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MacroEdge& a, const MacroEdge& b) { return a.to == b.to; }),
            out.end());
  return out;
}

}  // namespace detail

// Builds the overlay entry for one endpoint. Cells already present in the
// graph get an empty edge list. Interior cells of an unpruned rectangle fan
// out to the four sides; once the rectangle has pruned perimeter nodes, the
// endpoint connects to every active node instead, which keeps the overlay
// correct without resurrecting pruned nodes.
inline InsertionOverlay::Entry insert_endpoint(const GridMap& map, const Decomposition& d, Cell c,
                                               const SearchOptions& opt) {
  if (!map.traversable(c)) throw std::invalid_argument("endpoint is blocked");
  const Rectangle& r = d.rect_at(c);
  const NodeClass cls = d.node_class(c);
  InsertionOverlay::Entry entry{c, r.id, {}};

  const bool in_graph =
      cls != NodeClass::Interior && (!opt.perimeter_reduction || cls == NodeClass::Active);
  if (in_graph) return entry;

  const bool has_pruned = opt.perimeter_reduction && d.comps[r.id].comp_count > 0;
  if (has_pruned) {
    for (Cell p : perimeter_cells(r))
      if (d.node_class(p) == NodeClass::Active && p != c)
        entry.edges.push_back({c, p, metric_distance(d.conn, c, p), EdgeKind::Insertion});
  } else {
    entry.edges = detail::insertion_fans(r, c, d.conn);
  }
  return entry;
}

inline InsertionOverlay build_overlay(const GridMap& map, const Decomposition& d, Cell s, Cell g,
                                      const SearchOptions& opt) {
  InsertionOverlay overlay;
  overlay.entries.push_back(insert_endpoint(map, d, s, opt));
  if (g != s) overlay.entries.push_back(insert_endpoint(map, d, g, opt));
  for (const InsertionOverlay::Entry& e : overlay.entries)
    for (const MacroEdge& edge : e.edges)
      overlay.incoming[cell_key(edge.to)].push_back({edge.to, e.cell, edge.cost, EdgeKind::Insertion});
  return overlay;
}

// Successors of n in the reduced graph, split into primary and secondary
// edges. Secondary edges target non-corner nodes on the side strictly
// opposite one of n's sides; when online pruning is on and the search reached
// n from inside the same rectangle, the secondary set is dropped, because any
// such continuation re-crosses the rectangle suboptimally. In one-wide strips
// the opposite side is the same cell row or column, so nothing qualifies and
// pruning leaves strip traversal alone.
struct SuccessorScratch {
  std::vector<MacroEdge> intra;
  std::vector<std::pair<Cell, Cost>> steps;
};

inline void successors(const GridMap& map, const Decomposition& d,
                       const InsertionOverlay* overlay, Cell n,
                       std::optional<std::int32_t> parent_rect, const SearchOptions& opt,
                       SuccessorSet& out, SuccessorScratch& scratch) {
  out.primary.clear();
  out.secondary.clear();
  if (!map.traversable(n)) throw std::invalid_argument("node is blocked");
  const Rectangle& r = d.rect_at(n);
  const NodeClass cls = d.node_class(n);
  const bool in_graph =
      cls != NodeClass::Interior && (!opt.perimeter_reduction || cls == NodeClass::Active);
  const InsertionOverlay::Entry* entry = overlay ? overlay->find(n) : nullptr;
  if (!in_graph && !entry)
    throw std::invalid_argument("node is outside the reduced graph and has no overlay entry");

  if (in_graph) {
    std::vector<MacroEdge>& intra = scratch.intra;
    constructive_neighbours(r, n, d.conn, intra);
    if (opt.perimeter_reduction) {
      intra.erase(std::remove_if(intra.begin(), intra.end(),
                                 [&](const MacroEdge& e) {
                                   return d.node_class(e.to) == NodeClass::Pruned;
                                 }),
                  intra.end());
      if (cls == NodeClass::Active) {
        const std::size_t plain_edges = intra.size();
        contracted_active_edges(d, r, n, intra);
        if (intra.size() > plain_edges) {
          std::sort(intra.begin(), intra.end(), [](const MacroEdge& a, const MacroEdge& b) {
            if (a.to != b.to) return a.to < b.to;
            return a.cost < b.cost;
          });
          intra.erase(
              std::unique(intra.begin(), intra.end(),
                          [](const MacroEdge& a, const MacroEdge& b) { return a.to == b.to; }),
              intra.end());
        }
      }
    }

    const bool corner = is_corner(r, n);
    const unsigned own = sides_of(r, n);
    const unsigned opp = opposite_sides(own);
    for (const MacroEdge& e : intra) {
      const unsigned to_sides = sides_of(r, e.to);
      const bool secondary = !corner && !is_corner(r, e.to) && (to_sides & opp) != 0 &&
                             (to_sides & own) == 0;
      (secondary ? out.secondary : out.primary).push_back(e);
    }

    scratch.steps.clear();
    grid_neighbours(map, n, scratch.steps);
    for (const auto& [nb, cost] : scratch.steps)
      if (d.rect_id_at(nb) != r.id) out.primary.push_back({n, nb, cost, EdgeKind::Grid});
  }

  if (entry)
    out.primary.insert(out.primary.end(), entry->edges.begin(), entry->edges.end());
  if (overlay) {
    const auto it = overlay->incoming.find(cell_key(n));
    if (it != overlay->incoming.end())
      out.primary.insert(out.primary.end(), it->second.begin(), it->second.end());
  }

  if (opt.online_pruning && parent_rect && *parent_rect == r.id) out.secondary.clear();
}

inline SuccessorSet successors(const GridMap& map, const Decomposition& d,
                               const InsertionOverlay* overlay, Cell n,
                               std::optional<std::int32_t> parent_rect,
                               const SearchOptions& opt) {
  SuccessorSet out;
  SuccessorScratch scratch;
  successors(map, d, overlay, n, parent_rect, opt, out, scratch);
  return out;
}

// Start and goal in one rectangle: the answer is the metric distance, walked
// as a canonical diagonal-then-straight segment, with no search at all.
inline std::optional<Path> same_rectangle_shortcut(const Decomposition& d, Cell s, Cell g) {
  const std::int32_t rs = d.rect_id_at(s);
  if (rs < 0 || rs != d.rect_id_at(g)) return std::nullopt;
  Path p;
  p.nodes = canonical_segment(s, g, d.conn);
  p.cost = metric_distance(d.conn, s, g);
  return p;
}

// Exact clique oracle. Costs are kept as integer (straight, diagonal) step
// counts so dominance is decided without floating arithmetic.
struct ExactCost {
  long long straight = 0;
  long long diag = 0;
};

inline ExactCost exact_metric(Conn conn, Cell a, Cell b) {
  const long long dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const long long dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  if (conn == Conn::Four) return {dx + dy, 0};
  return {dx > dy ? dx - dy : dy - dx, dx < dy ? dx : dy};
}

// Sign of (a - b) where each value is straight + diag * sqrt(2).
inline int exact_compare(ExactCost a, ExactCost b) {
  const long long ds = a.straight - b.straight;
  const long long dd = a.diag - b.diag;
  if (ds >= 0 && dd >= 0) return (ds == 0 && dd == 0) ? 0 : 1;
  if (ds <= 0 && dd <= 0) return -1;
  // Signs differ and both are nonzero; ds^2 == 2*dd^2 has no integer solution,
  // so squaring decides the sign exactly.
  const long long lhs = ds * ds;
  const long long rhs = 2 * dd * dd;
  if (ds > 0) return lhs > rhs ? 1 : -1;
  return lhs > rhs ? -1 : 1;
}

struct CliqueEdge {
  Cell a;
  Cell b;
  Cost cost = 0;
  bool non_dominated = false;
};

// All perimeter pairs of r with an exact strict-dominance verdict: an edge is
// dominated when some third perimeter node lies on a path of equal or smaller
// metric cost. Guarded to small rectangles; the check is cubic.
inline std::vector<CliqueEdge> clique_oracle(const Rectangle& r, Conn conn) {
  const std::vector<Cell> nodes = perimeter_cells(r);
  if (nodes.size() > 40) throw std::length_error("clique oracle limited to perimeters of 40 nodes");
  std::vector<CliqueEdge> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const ExactCost direct = exact_metric(conn, nodes[i], nodes[j]);
      bool dominated = false;
      for (std::size_t k = 0; k < nodes.size() && !dominated; ++k) {
        if (k == i || k == j) continue;
        const ExactCost via_a = exact_metric(conn, nodes[i], nodes[k]);
        const ExactCost via_b = exact_metric(conn, nodes[k], nodes[j]);
        const ExactCost via{via_a.straight + via_b.straight, via_a.diag + via_b.diag};
        dominated = exact_compare(via, direct) <= 0;
      }
      out.push_back({nodes[i], nodes[j],
                     metric_distance(conn, nodes[i], nodes[j]), !dominated});
    }
  }
  return out;
}

}  // namespace rsr
