#pragma once

#include <vector>

#include "amoebot/types.hpp"

// Full-knowledge reference answers. Slow and simple on purpose.
namespace amoebot::oracle {

Structure stripe(const Structure& S, GridCoord u, Dir d);
int f_d(const Structure& R, GridCoord w, Dir d);
Structure maxima(const Structure& R, Dir d);

// Empty-region labels over the bounding box grown by one; region 0 is the outer one.
struct Regions {
  int qmin = 0, rmin = 0, width = 0, height = 0;
  std::vector<int> label;  // -1 occupied
  int count = 0;
  int at(GridCoord c) const;  // -1 when occupied; cells outside the box belong to region 0
};
Regions regions(const Structure& S);

// Boundary cycles, each rotated to start at its smallest occurrence.
std::vector<BoundaryCycle> boundaries(const Structure& S);

Skeleton skeleton(const Structure& S, Dir d, Sign s);

// Tree check: n-1 edges, all bonds of S, connected.
bool spanning_check(const Structure& S, const std::vector<Edge>& edges);
// Edges picked by first occurrences along a skeleton path.
std::vector<Edge> first_occurrence_edges(const ChainRef& path);
SpanningTree spanning_tree(const Structure& S, const ChainRef& path);

SymmetryReport symmetry(const Structure& S);

}  // namespace amoebot::oracle
