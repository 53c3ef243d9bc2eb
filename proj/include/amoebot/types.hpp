#pragma once

#include <array>
#include <optional>
#include <vector>

#include "amoebot/grid.hpp"

namespace amoebot {

using Structure = std::vector<GridCoord>;

// Ordered amoebot sequence; an amoebot may appear several times.
struct ChainRef {
  std::vector<GridCoord> positions;
  int ref = 0;
  bool closed = false;  // last position links back to the first
  int size() const { return static_cast<int>(positions.size()); }
};

// One visit of a cycle at an amoebot.
struct Occurrence {
  GridCoord node;
  std::optional<GridCoord> pred, succ;
  auto operator<=>(const Occurrence&) const = default;
};

struct BoundaryCycle {
  std::vector<Occurrence> cycle;
  bool outer = false;
  int turn_sum = 0;  // in 60 degree steps, +6 outer / -6 inner
};

struct Skeleton {
  Dir d = Dir::N;
  Sign s = Sign::Plus;
  std::vector<Occurrence> cycle;  // starts at the splitting occurrence
  GridCoord split;
};

struct Edge {
  GridCoord a, b;  // a < b
  auto operator<=>(const Edge&) const = default;
};
inline Edge make_edge(GridCoord x, GridCoord y) { return x < y ? Edge{x, y} : Edge{y, x}; }

struct SpanningTree {
  GridCoord root;
  std::vector<Edge> edges;  // sorted
  std::vector<Edge> path_edges;  // the part chosen along the skeleton path
};

struct SymmetryReport {
  bool rot2 = false, rot3 = false, rot6 = false;
  std::array<bool, 12> reflect{};  // indexed by direction; d and opposite(d) agree
  long rounds = 0;
  int axes() const {
    int c = 0;
    for (int i = 0; i < 6; ++i) c += reflect[i];
    return c;
  }
  bool operator==(const SymmetryReport& o) const {
    return rot2 == o.rot2 && rot3 == o.rot3 && rot6 == o.rot6 && reflect == o.reflect;
  }
};

// Skeleton cycle cut open at its first occurrence, as a chain.
ChainRef skeleton_path(const Skeleton& sk);

}  // namespace amoebot
