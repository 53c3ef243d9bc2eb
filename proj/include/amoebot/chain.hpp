#pragma once

#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/types.hpp"

namespace amoebot {

// One chain position as seen by the amoebot holding it.
struct Visit {
  int chain = 0, pos = 0;
  int pred_side = -1, succ_side = -1;
  int pred_slot = 0, succ_slot = 0;  // first pin slot of the lane used on that link
};

// Pins for chains laid over the structure. With k >= 4 every bond carries two lanes,
// one per traversal direction, each k/2 wide; with fewer pins a bond may carry one
// chain link only.
class Overlay {
 public:
  Overlay(const World& world, std::vector<ChainRef> chains);

  const std::vector<ChainRef>& chains() const { return chains_; }
  const std::vector<Visit>& at(int amoebot) const { return visits_[amoebot]; }
  int wires() const { return wires_; }
  // (amoebot, local visit index) of a chain position
  std::pair<int, int> locate(int chain, int pos) const { return where_[chain][pos]; }

 private:
  std::vector<ChainRef> chains_;
  std::vector<std::vector<Visit>> visits_;
  std::vector<std::vector<std::pair<int, int>>> where_;
  int wires_ = 1;
};

// Side index from a to an adjacent b, or -1.
int side_towards(GridCoord a, GridCoord b);

// Maximal runs of empty neighbour sides, from the amoebot's own view.
struct LocalRun {
  int mask = 0;             // empty sides
  int pred = -1, succ = -1;  // occupied sides just clockwise before / counterclockwise after
};
std::vector<LocalRun> local_runs(const World& world, int amoebot);
// Turn at a boundary visit in 60 degree steps: -2..3, 6 for a lone amoebot.
int run_turn(const LocalRun& r);

}  // namespace amoebot
