#pragma once
// Map and scenario file formats (MovingAI-style text).

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsr/grid.hpp"

namespace rsr {

namespace detail {

inline std::string read_line(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline int parse_header_int(const std::string& line, const std::string& keyword) {
  std::istringstream ss(line);
  std::string word;
  long long value = -1;
  if (!(ss >> word >> value) || word != keyword || value < 1)
    throw std::runtime_error("malformed map header: expected '" + keyword + " <n>', got '" + line + "'");
  return static_cast<int>(value);
}

}  // namespace detail

inline GridMap parse_map(std::istream& in, Conn conn) {
  std::string type_line = detail::read_line(in);
  std::istringstream ts(type_line);
  std::string word;
  if (!(ts >> word) || word != "type")
    throw std::runtime_error("malformed map header: missing type line");
  const int height = detail::parse_header_int(detail::read_line(in), "height");
  const int width = detail::parse_header_int(detail::read_line(in), "width");
  if (detail::read_line(in) != "map")
    throw std::runtime_error("malformed map header: missing map line");

  std::string terrain;
  terrain.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    std::string row = detail::read_line(in);
    if (row.empty() && !in)
      throw std::runtime_error("row count mismatch: expected " + std::to_string(height) +
                               " rows, got " + std::to_string(y));
    if (static_cast<int>(row.size()) != width)
      throw std::runtime_error("row length mismatch at row " + std::to_string(y) + ": expected " +
                               std::to_string(width) + " characters, got " + std::to_string(row.size()));
    for (int x = 0; x < width; ++x)
      if (!GridMap::known_char(row[x]))
        throw std::runtime_error(std::string("unknown terrain character '") + row[x] + "' at (" +
                                 std::to_string(x) + "," + std::to_string(y) + ")");
    terrain += row;
  }
  return GridMap(width, height, std::move(terrain), conn);
}

inline std::string write_map(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  for (int y = 0; y < map.height(); ++y) {
    out.append(map.terrain(), static_cast<std::size_t>(y) * map.width(),
               static_cast<std::size_t>(map.width()));
    out += '\n';
  }
  return out;
}

inline GridMap load_map(const std::string& path, Conn conn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  return parse_map(in, conn);
}

inline void save_map(const std::string& path, const GridMap& map) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << write_map(map);
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct ScenarioEntry {
  int bucket = 0;
  std::string map;
  int width = 0;
  int height = 0;
  Cell start;
  Cell goal;
  double optimal = 0;
};

inline std::vector<ScenarioEntry> parse_scenario(std::istream& in) {
  std::string header = detail::read_line(in);
  std::istringstream hs(header);
  std::string word;
  if (!(hs >> word) || word != "version")
    throw std::runtime_error("malformed scenario header: missing version line");
  std::vector<ScenarioEntry> entries;
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    ScenarioEntry e;
    if (!(ss >> e.bucket >> e.map >> e.width >> e.height >> e.start.x >> e.start.y >> e.goal.x >>
          e.goal.y >> e.optimal))
      throw std::runtime_error("malformed scenario entry at line " + std::to_string(line_no));
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::vector<ScenarioEntry> load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  return parse_scenario(in);
}

}  // namespace rsr
