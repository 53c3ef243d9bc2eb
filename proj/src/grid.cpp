#include "amoebot/grid.hpp"

#include <cmath>

#include "amoebot/errors.hpp"

namespace amoebot {

namespace {

constexpr std::array<std::string_view, 12> kNames = {"N",   "NNW", "WNW", "W",   "WSW", "SSW",
                                                     "S",   "SSE", "ESE", "E",   "ENE", "NNE"};

// ring index / 2 -> offset; ring order N, WNW, WSW, S, ESE, ENE
constexpr std::array<GridCoord, 6> kOffsets = {
    GridCoord{0, 1}, GridCoord{-1, 1}, GridCoord{-1, 0},
    GridCoord{0, -1}, GridCoord{1, -1}, GridCoord{1, 0}};

}  // namespace

std::string to_string(GridCoord c) {
  return "(" + std::to_string(c.q) + "," + std::to_string(c.r) + ")";
}

std::string_view name(Dir d) { return kNames[index(d)]; }

Dir parse_dir(std::string_view s) {
  for (int i = 0; i < kDirs; ++i)
    if (kNames[i] == s) return dir_at(i);
  throw InvalidArgument("unknown direction '" + std::string(s) + "'");
}

const std::array<Dir, 12>& all_dirs() {
  static const std::array<Dir, 12> dirs = [] {
    std::array<Dir, 12> a{};
    for (int i = 0; i < 12; ++i) a[i] = dir_at(i);
    return a;
  }();
  return dirs;
}

const std::array<Dir, 6>& axis_dirs() {
  static const std::array<Dir, 6> dirs = {Dir::N, Dir::WNW, Dir::WSW, Dir::S, Dir::ESE, Dir::ENE};
  return dirs;
}

Dir rotate(Dir d, int degrees, Sign s) {
  if (degrees % 30 != 0)
    throw InvalidArgument("rotation by " + std::to_string(degrees) + " is not a multiple of 30");
  int steps = (degrees / 30) % kDirs;
  if (s == Sign::Minus) steps = -steps;
  return dir_at(index(d) + steps);
}

Dir opposite(Dir d) { return dir_at(index(d) + 6); }

GridCoord offset(Dir d) {
  if (!is_axis(d)) throw InvalidArgument(std::string(name(d)) + " has no grid edge");
  return kOffsets[side_of(d)];
}

GridCoord neighbor(GridCoord v, Dir d) { return v + offset(d); }

int proj(GridCoord v, Dir d) {
  const int q = v.q, r = v.r;
  switch (d) {
    case Dir::E: return q;
    case Dir::W: return -q;
    case Dir::NNE: return q + r;
    case Dir::SSW: return -(q + r);
    case Dir::NNW: return r;
    case Dir::SSE: return -r;
    case Dir::N: return q + 2 * r;
    case Dir::S: return -(q + 2 * r);
    case Dir::ENE: return 2 * q + r;
    case Dir::WSW: return -(2 * q + r);
    case Dir::ESE: return q - r;
    case Dir::WNW: return r - q;
  }
  return 0;
}

bool on_axis(GridCoord v, const Axis& a) {
  Dir perp = rotate(a.dir, 90);
  return proj(v, perp) == proj(a.anchor, perp);
}

// ENE -> N -> WNW: (q,r) -> (-r, q+r)
GridCoord rotate60(GridCoord v) { return {-v.r, v.q + v.r}; }

GridCoord rotate60(GridCoord v, int times) {
  times = ((times % 6) + 6) % 6;
  for (int i = 0; i < times; ++i) v = rotate60(v);
  return v;
}

// fixes N=(0,1), swaps ENE=(1,0) with WNW=(-1,1)
GridCoord mirror(GridCoord v) { return {-v.q, v.q + v.r}; }

Dir mirror(Dir d) { return dir_at(-index(d)); }

Point embed(GridCoord v) {
  static const double h = std::sqrt(3.0) / 2.0;
  return {v.q * h, v.q * 0.5 + v.r};
}

}  // namespace amoebot
