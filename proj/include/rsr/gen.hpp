#pragma once
// Deterministic synthetic map generation: empty grids, uniform random
// obstacles, and room lattices with door-pierced walls.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsr/grid.hpp"

namespace rsr {

struct GenSpec {
  enum class Kind { Empty, Random, Rooms };
  Kind kind = Kind::Empty;
  int size = 8;
  double obstacle_p = 0.2;  // random kind
  int room = 7;             // rooms kind: open side length between walls
  double door_p = 0.2;      // rooms kind: per wall segment
  std::uint64_t seed = 1;
  int scale = 1;
};

namespace detail {

// mt19937_64 output is pinned by the standard; drawing bits directly (instead
// of std::uniform_*_distribution, which varies by library) keeps generated
// maps byte-identical across toolchains.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
inline double rand_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline std::string gen_rooms(int size, int room, double door_p, std::mt19937_64& rng) {
  const int pitch = room + 1;
  std::string t(static_cast<std::size_t>(size) * size, '.');
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      if (x % pitch == room || y % pitch == room) t[static_cast<std::size_t>(y) * size + x] = '@';

  const int n = (size + room) / pitch;  // rooms per axis
  auto room_span = [&](int i) {
    const int lo = i * pitch;
    const int hi = std::min(lo + room - 1, size - 1);
    return std::pair<int, int>{lo, hi};
  };
  auto open = [&](int x, int y) { t[static_cast<std::size_t>(y) * size + x] = '.'; };

  // A wall segment separates two horizontally or vertically adjacent rooms.
  struct Segment {
    int ra, rb;       // flat room indices
    bool vertical;    // true: wall column between left/right rooms
    int wall, lo, hi; // wall coordinate and open span alongside it
  };
  std::vector<Segment> segments;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const auto [ylo, yhi] = room_span(j);
      const auto [xlo, xhi] = room_span(i);
      if (i + 1 < n && xhi + 1 < size)
        segments.push_back({j * n + i, j * n + i + 1, true, xhi + 1, ylo, yhi});
      if (j + 1 < n && yhi + 1 < size)
        segments.push_back({j * n + i, (j + 1) * n + i, false, yhi + 1, xlo, xhi});
    }
  }

  std::vector<int> doors(static_cast<std::size_t>(n) * n, 0);
  auto pierce = [&](const Segment& s) {
    const int at = s.lo + static_cast<int>(rand_below(rng, s.hi - s.lo + 1));
    if (s.vertical)
      open(s.wall, at);
    else
      open(at, s.wall);
    ++doors[s.ra];
    ++doors[s.rb];
  };
  for (const Segment& s : segments)
    if (rand_unit(rng) < door_p) pierce(s);

  // Every room with at least one neighbour must get a door.
  for (int r = 0; r < n * n; ++r) {
    if (doors[r] > 0) continue;
    std::vector<const Segment*> mine;
    for (const Segment& s : segments)
      if (s.ra == r || s.rb == r) mine.push_back(&s);
    if (mine.empty()) continue;
    pierce(*mine[rand_below(rng, mine.size())]);
  }
  return t;
}

}  // namespace detail

inline GridMap generate_map(const GenSpec& spec, Conn conn) {
  if (spec.size < 1) throw std::invalid_argument("map size must be positive");
  if (spec.scale < 1) throw std::invalid_argument("scale factor must be positive");
  if (spec.kind == GenSpec::Kind::Random &&
      (spec.obstacle_p < 0 || spec.obstacle_p >= 1))
    throw std::invalid_argument("obstacle density must be in [0,1)");
  if (spec.kind == GenSpec::Kind::Rooms) {
    if (spec.room < 3) throw std::invalid_argument("room side must be at least 3");
    if (spec.door_p < 0 || spec.door_p > 1)
      throw std::invalid_argument("door probability must be in [0,1]");
  }

  std::mt19937_64 rng(spec.seed);
  std::string t;
  switch (spec.kind) {
    case GenSpec::Kind::Empty:
      t.assign(static_cast<std::size_t>(spec.size) * spec.size, '.');
      break;
    case GenSpec::Kind::Random: {
      t.resize(static_cast<std::size_t>(spec.size) * spec.size);
      for (char& c : t) c = detail::rand_unit(rng) < spec.obstacle_p ? '@' : '.';
      break;
    }
    case GenSpec::Kind::Rooms:
      t = detail::gen_rooms(spec.size, spec.room, spec.door_p, rng);
      break;
  }
  GridMap map(spec.size, spec.size, std::move(t), conn);
  return spec.scale > 1 ? scale_map(map, spec.scale) : map;
}

}  // namespace rsr
