#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace amoebot {

// Axial lattice coordinate. Basis: ENE = (1,0), N = (0,1).
struct GridCoord {
  int q = 0;
  int r = 0;
  auto operator<=>(const GridCoord&) const = default;
  GridCoord operator+(GridCoord o) const { return {q + o.q, r + o.r}; }
  GridCoord operator-(GridCoord o) const { return {q - o.q, r - o.r}; }
};

std::string to_string(GridCoord c);
inline std::ostream& operator<<(std::ostream& o, GridCoord c) { return o << to_string(c); }

// The twelve cardinal directions on a counterclockwise 30 degree ring.
// Even indices lie along grid axes, odd ones are perpendicular to them.
enum class Dir : uint8_t { N, NNW, WNW, W, WSW, SSW, S, SSE, ESE, E, ENE, NNE };

enum class Sign : int8_t { Plus = 1, Minus = -1 };

constexpr int kDirs = 12;

constexpr int index(Dir d) { return static_cast<int>(d); }
constexpr Dir dir_at(int i) { return static_cast<Dir>(((i % kDirs) + kDirs) % kDirs); }
constexpr bool is_axis(Dir d) { return index(d) % 2 == 0; }

std::string_view name(Dir d);
Dir parse_dir(std::string_view s);  // throws InvalidArgument
const std::array<Dir, 12>& all_dirs();
const std::array<Dir, 6>& axis_dirs();  // N, WNW, WSW, S, ESE, ENE (ccw)

// Rotation by a multiple of 30 degrees; Plus is counterclockwise.
Dir rotate(Dir d, int degrees, Sign s = Sign::Plus);
Dir opposite(Dir d);

// Axis directions as 0..5 in ccw order starting at N; used for pin sides.
constexpr int side_of(Dir d) { return index(d) / 2; }
constexpr Dir side_dir(int side) { return dir_at(2 * (((side % 6) + 6) % 6)); }

GridCoord offset(Dir d);  // axis directions only
GridCoord neighbor(GridCoord v, Dir d);
inline GridCoord neighbor_side(GridCoord v, int side) { return neighbor(v, side_dir(side)); }

// Integer projection onto d: strictly increasing along d, constant across it.
int proj(GridCoord v, Dir d);

struct Axis {
  GridCoord anchor;
  Dir dir = Dir::N;
};

bool on_axis(GridCoord v, const Axis& a);

// Lattice automorphisms used by oracles and equivariance tests.
GridCoord rotate60(GridCoord v);        // 60 degrees counterclockwise about the origin
GridCoord rotate60(GridCoord v, int times);
GridCoord mirror(GridCoord v);          // reflection across the N axis through the origin
Dir mirror(Dir d);

// Cartesian embedding, layout only.
struct Point {
  double x = 0, y = 0;
};
Point embed(GridCoord v);

}  // namespace amoebot

template <>
struct std::hash<amoebot::GridCoord> {
  size_t operator()(const amoebot::GridCoord& c) const noexcept {
    return std::hash<uint64_t>{}((static_cast<uint64_t>(static_cast<uint32_t>(c.q)) << 32) ^
                                 static_cast<uint32_t>(c.r));
  }
};
