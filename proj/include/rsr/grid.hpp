#pragma once
// Uniform-cost grid model: cells, 4/8 connectivity, movement metrics.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rsr {

inline constexpr double kSqrt2 = 1.4142135623730951;

enum class Conn : std::uint8_t { Four = 4, Eight = 8 };

struct Cell {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(Cell, Cell) = default;
  friend constexpr auto operator<=>(Cell, Cell) = default;
};

using Cost = double;

// Packs a cell into one hashable key. Valid for coordinates >= 0.
inline std::int64_t cell_key(Cell c) {
  return (static_cast<std::int64_t>(c.y) << 32) | static_cast<std::uint32_t>(c.x);
}

class GridMap {
 public:
  GridMap(int width, int height, std::string terrain, Conn conn)
      : width_(width), height_(height), conn_(conn), terrain_(std::move(terrain)) {
    if (width_ < 1 || height_ < 1)
      throw std::invalid_argument("map dimensions must be positive");
    if (terrain_.size() != static_cast<std::size_t>(width_) * height_)
      throw std::invalid_argument("terrain size does not match dimensions");
    free_.resize(terrain_.size());
    for (std::size_t i = 0; i < terrain_.size(); ++i) {
      if (!known_char(terrain_[i]))
        throw std::invalid_argument(std::string("unknown terrain character '") + terrain_[i] + "'");
      free_[i] = traversable_char(terrain_[i]);
    }
  }

  static bool traversable_char(char t) { return t == '.' || t == 'G'; }
  static bool known_char(char t) {
    return t == '.' || t == 'G' || t == '@' || t == 'O' || t == 'T' || t == 'S' || t == 'W';
  }

  int width() const { return width_; }
  int height() const { return height_; }
  Conn conn() const { return conn_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  }
  bool traversable(Cell c) const { return in_bounds(c) && free_[index(c)]; }
  char terrain_at(Cell c) const { return terrain_[index(c)]; }
  const std::string& terrain() const { return terrain_; }

  int free_count() const {
    int n = 0;
    for (bool f : free_) n += f;
    return n;
  }

  void set_cell(Cell c, char t) {
    if (!in_bounds(c)) throw std::out_of_range("set_cell out of bounds");
    if (!known_char(t)) throw std::invalid_argument("unknown terrain character");
    terrain_[index(c)] = t;
    free_[index(c)] = traversable_char(t);
  }

 private:
  int width_;
  int height_;
  Conn conn_;
  std::string terrain_;
  std::vector<bool> free_;
};

// Step order is fixed so every traversal of the same map is deterministic.
inline constexpr int kStepDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
inline constexpr int kStepDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

// Appends the traversable neighbours of c. Diagonal steps are forbidden when
// either flanking cardinal cell is blocked, so paths never cut corners.
inline void grid_neighbours(const GridMap& map, Cell c,
                            std::vector<std::pair<Cell, Cost>>& out) {
  const int steps = map.conn() == Conn::Eight ? 8 : 4;
  for (int i = 0; i < steps; ++i) {
    const Cell n{c.x + kStepDx[i], c.y + kStepDy[i]};
    if (!map.traversable(n)) continue;
    if (i >= 4) {
      if (!map.traversable({c.x + kStepDx[i], c.y}) ||
          !map.traversable({c.x, c.y + kStepDy[i]}))
        continue;
      out.emplace_back(n, kSqrt2);
    } else {
      out.emplace_back(n, 1.0);
    }
  }
}

inline std::vector<std::pair<Cell, Cost>> grid_neighbours(const GridMap& map, Cell c) {
  std::vector<std::pair<Cell, Cost>> out;
  grid_neighbours(map, c, out);
  return out;
}

// Obstacle-free distance: Manhattan for 4-connected, octile for 8-connected.
inline Cost metric_distance(Conn conn, Cell a, Cell b) {
  const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
  const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
  if (conn == Conn::Four) return static_cast<Cost>(dx + dy);
  const int lo = dx < dy ? dx : dy;
  const int hi = dx < dy ? dy : dx;
  return static_cast<Cost>(hi - lo) + kSqrt2 * static_cast<Cost>(lo);
}

// Replaces every cell by a k-by-k block of the same terrain.
inline GridMap scale_map(const GridMap& map, int k) {
  if (k < 1) throw std::invalid_argument("scale factor must be positive");
  const int w = map.width() * k;
  const int h = map.height() * k;
  std::string terrain(static_cast<std::size_t>(w) * h, '.');
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      terrain[static_cast<std::size_t>(y) * w + x] = map.terrain_at({x / k, y / k});
  return GridMap(w, h, std::move(terrain), map.conn());
}

}  // namespace rsr
