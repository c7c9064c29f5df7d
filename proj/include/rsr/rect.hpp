#pragma once
// Axis-aligned rectangles and perimeter side geometry.

#include <cstdint>
#include <vector>

#include "rsr/grid.hpp"

namespace rsr {

struct Rectangle {
  std::int32_t id = -1;
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;

  // Dead slots keep their id but have zero width; see dynamic repair.
  bool alive() const { return w > 0 && h > 0; }
  int x1() const { return x0 + w - 1; }
  int y1() const { return y0 + h - 1; }
  long long area() const { return static_cast<long long>(w) * h; }

  bool contains(Cell c) const {
    return c.x >= x0 && c.x <= x1() && c.y >= y0 && c.y <= y1();
  }
  bool on_perimeter(Cell c) const {
    return contains(c) && (c.x == x0 || c.x == x1() || c.y == y0 || c.y == y1());
  }
  bool is_interior(Cell c) const { return contains(c) && !on_perimeter(c); }

  friend constexpr bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Side bitmask. A cell on a 1-wide rectangle sits on both opposing sides,
// and corners carry two (or more) bits.
inline constexpr unsigned kSideTop = 1u;
inline constexpr unsigned kSideBottom = 2u;
inline constexpr unsigned kSideLeft = 4u;
inline constexpr unsigned kSideRight = 8u;

inline unsigned sides_of(const Rectangle& r, Cell c) {
  unsigned m = 0;
  if (c.y == r.y0) m |= kSideTop;
  if (c.y == r.y1()) m |= kSideBottom;
  if (c.x == r.x0) m |= kSideLeft;
  if (c.x == r.x1()) m |= kSideRight;
  return m;
}

inline unsigned opposite_sides(unsigned m) {
  unsigned o = 0;
  if (m & kSideTop) o |= kSideBottom;
  if (m & kSideBottom) o |= kSideTop;
  if (m & kSideLeft) o |= kSideRight;
  if (m & kSideRight) o |= kSideLeft;
  return o;
}

// A corner touches both a horizontal and a vertical side.
inline bool is_corner(const Rectangle& r, Cell c) {
  const unsigned m = sides_of(r, c);
  return (m & (kSideTop | kSideBottom)) && (m & (kSideLeft | kSideRight));
}

// Perimeter cells in a fixed walk: top row left to right, then the two
// vertical edges top to bottom, then the bottom row left to right.
inline std::vector<Cell> perimeter_cells(const Rectangle& r) {
  std::vector<Cell> out;
  if (!r.alive()) return out;
  for (int x = r.x0; x <= r.x1(); ++x) out.push_back({x, r.y0});
  for (int y = r.y0 + 1; y < r.y1(); ++y) {
    out.push_back({r.x0, y});
    if (r.w > 1) out.push_back({r.x1(), y});
  }
  if (r.h > 1)
    for (int x = r.x0; x <= r.x1(); ++x) out.push_back({x, r.y1()});
  return out;
}

}  // namespace rsr
