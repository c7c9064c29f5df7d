#pragma once
// Test-only oracles and fixtures. Everything here is deliberately written
// from first principles (small graph Dijkstra, step-by-step contraction) so
// the library is checked against independent machinery, not against itself.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "rsr/decomposition.hpp"
#include "rsr/grid.hpp"
#include "rsr/macro_edges.hpp"
#include "rsr/rect.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Adjacency-map graph over cells with min-weight multi-edge collapsing.
struct CellGraph {
  std::map<std::int64_t, std::map<std::int64_t, double>> adj;

  void add_node(rsr::Cell c) { adj[rsr::cell_key(c)]; }

  void add_edge(rsr::Cell a, rsr::Cell b, double w) {
    auto& ab = adj[rsr::cell_key(a)][rsr::cell_key(b)];
    auto& ba = adj[rsr::cell_key(b)][rsr::cell_key(a)];
    if (ab == 0 || w < ab) ab = w;
    if (ba == 0 || w < ba) ba = w;
  }

  bool has_node(rsr::Cell c) const { return adj.contains(rsr::cell_key(c)); }

  std::map<std::int64_t, double> dijkstra(rsr::Cell s) const {
    std::map<std::int64_t, double> dist;
    using Item = std::pair<double, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist[rsr::cell_key(s)] = 0;
    open.push({0, rsr::cell_key(s)});
    while (!open.empty()) {
      const auto [d, u] = open.top();
      open.pop();
      const auto du = dist.find(u);
      if (du != dist.end() && d > du->second) continue;
      const auto row = adj.find(u);
      if (row == adj.end()) continue;
      for (const auto& [v, w] : row->second) {
        const auto dv = dist.find(v);
        if (dv == dist.end() || d + w < dv->second) {
          dist[v] = d + w;
          open.push({d + w, v});
        }
      }
    }
    return dist;
  }

  double distance(rsr::Cell s, rsr::Cell g) const {
    const auto dist = dijkstra(s);
    const auto it = dist.find(rsr::cell_key(g));
    return it == dist.end() ? kInf : it->second;
  }
};

// Full constructive macro graph of one rectangle (all perimeter nodes).
inline CellGraph constructive_graph(const rsr::Rectangle& r, rsr::Conn conn) {
  CellGraph g;
  for (rsr::Cell n : rsr::perimeter_cells(r)) {
    g.add_node(n);
    for (const rsr::MacroEdge& e : rsr::constructive_neighbours(r, n, conn))
      g.add_edge(n, e.to, e.cost);
  }
  return g;
}

// The contraction oracle: starting from the constructive graph, remove pruned
// nodes one at a time; each removal wires the removed node's current
// neighbours pairwise at the metric distance of the pair. What remains is a
// graph over active nodes whose distances the closed-form contraction must
// reproduce.
inline CellGraph iterative_contraction(const rsr::Rectangle& r, rsr::Conn conn,
                                       const std::vector<rsr::Cell>& pruned) {
  CellGraph g = constructive_graph(r, conn);
  for (rsr::Cell p : pruned) {
    const std::int64_t pk = rsr::cell_key(p);
    const auto row = g.adj.find(pk);
    if (row == g.adj.end()) continue;
    std::vector<std::int64_t> nbs;
    for (const auto& [v, w] : row->second) nbs.push_back(v);
    for (std::size_t i = 0; i < nbs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbs.size(); ++j) {
        const rsr::Cell a{static_cast<int>(nbs[i] & 0xffffffff), static_cast<int>(nbs[i] >> 32)};
        const rsr::Cell b{static_cast<int>(nbs[j] & 0xffffffff), static_cast<int>(nbs[j] >> 32)};
        g.add_edge(a, b, rsr::metric_distance(conn, a, b));
      }
    }
    for (const std::int64_t v : nbs) g.adj[v].erase(pk);
    g.adj.erase(pk);
  }
  return g;
}

// Reduced active-node graph as the library defines it: constructive edges
// whose endpoints are both active, plus the closed-form contracted edges.
inline CellGraph closed_form_graph(const rsr::Decomposition& d, const rsr::Rectangle& r) {
  CellGraph g;
  for (rsr::Cell n : rsr::perimeter_cells(r)) {
    if (d.node_class(n) != rsr::NodeClass::Active) continue;
    g.add_node(n);
    for (const rsr::MacroEdge& e : rsr::constructive_neighbours(r, n, d.conn))
      if (d.node_class(e.to) == rsr::NodeClass::Active) g.add_edge(n, e.to, e.cost);
    for (const rsr::MacroEdge& e : rsr::contracted_active_edges(d, r, n))
      g.add_edge(n, e.to, e.cost);
  }
  return g;
}

inline rsr::GridMap make_map(const std::vector<std::string>& rows, rsr::Conn conn) {
  std::string terrain;
  for (const std::string& row : rows) terrain += row;
  return rsr::GridMap(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), terrain,
                      conn);
}

// 9x9 walled room: interior is free at (1..7)x(1..7) plus the listed door
// cells punched into the outer wall.
inline rsr::GridMap walled_room(const std::vector<rsr::Cell>& doors, rsr::Conn conn) {
  std::vector<std::string> rows(9, std::string(9, '@'));
  for (int y = 1; y <= 7; ++y)
    for (int x = 1; x <= 7; ++x) rows[y][x] = '.';
  for (rsr::Cell d : doors) rows[d.y][d.x] = '.';
  return make_map(rows, conn);
}

}  // namespace oracle
