// 3-row bit/real grids for the 3-adjacent-down-track group, plus the grid
// text format (one row per line, bits space-separated).
#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace loco {

struct BitGrid {
  std::array<std::vector<std::uint8_t>, 3> row;

  BitGrid() = default;
  explicit BitGrid(int cols) {
    for (auto& r : row) r.assign(static_cast<std::size_t>(cols), 0);
  }

  int cols() const { return static_cast<int>(row[0].size()); }
  std::uint8_t& at(int r, int c) { return row[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  std::uint8_t at(int r, int c) const { return row[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  bool in_range(int r, int c) const { return r >= 0 && r < 3 && c >= 0 && c < cols(); }

  friend bool operator==(const BitGrid&, const BitGrid&) = default;
};

struct RealGrid {
  std::array<std::vector<double>, 3> row;

  RealGrid() = default;
  explicit RealGrid(int cols) {
    for (auto& r : row) r.assign(static_cast<std::size_t>(cols), 0.0);
  }

  int cols() const { return static_cast<int>(row[0].size()); }
  double& at(int r, int c) { return row[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
  double at(int r, int c) const { return row[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
};

inline void write_grid(std::ostream& os, const BitGrid& g) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      if (c) os << ' ';
      os << static_cast<int>(g.at(r, c));
    }
    os << '\n';
  }
}

inline std::string grid_to_text(const BitGrid& g) {
  std::ostringstream os;
  write_grid(os, g);
  return os.str();
}

inline BitGrid read_grid(std::istream& is) {
  std::array<std::vector<std::uint8_t>, 3> rows;
  std::string line;
  int r = 0;
  while (r < 3 && std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int bit;
    while (ls >> bit) {
      if (bit != 0 && bit != 1) throw std::invalid_argument("grid bits must be 0 or 1");
      rows[static_cast<std::size_t>(r)].push_back(static_cast<std::uint8_t>(bit));
    }
    ++r;
  }
  if (r != 3) throw std::invalid_argument("grid requires 3 rows");
  if (rows[0].size() != rows[1].size() || rows[1].size() != rows[2].size())
    throw std::invalid_argument("grid rows must have equal length");
  BitGrid g;
  g.row = std::move(rows);
  return g;
}

inline BitGrid grid_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_grid(is);
}

}  // namespace loco
