#pragma once

#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/primitives.hpp"
#include "amoebot/types.hpp"

namespace amoebot {

// A visit of the fused cycle as stored by its amoebot.
struct SkeletonVisit {
  int pred = -1, succ = -1;  // sides
  int mask = 0;              // empty sides of the originating run, 0 on fusion paths
  bool spliced = false;
};

struct SkeletonRun {
  Skeleton skeleton;
  std::vector<std::vector<SkeletonVisit>> visits;  // per amoebot
  std::vector<GridCoord> starts;                   // u_B per inner boundary
  std::vector<std::vector<GridCoord>> paths;       // u_B .. v_B
  long rounds = 0;
};

SkeletonRun canonical_skeleton(World& world, Dir d, Sign s, int confirm);

// Members of R with maximal projection onto d, per closed chain of the overlay.
// refs marks one member of R per chain used as reference; all chains in parallel.
std::vector<std::vector<uint8_t>> cycle_maxima(World& world, const Overlay& ov,
                                               const std::vector<std::vector<uint8_t>>& R,
                                               const std::vector<std::vector<uint8_t>>& refs, Dir d);

struct TreeRun {
  SpanningTree tree;
  long rounds = 0;
};
// First-occurrence edges along the path, northern edges for amoebots off the path.
TreeRun spanning_tree(World& world, const ChainRef& path);

}  // namespace amoebot
