#pragma once

#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/pasc.hpp"

namespace amoebot {

// PASC visits for stripes of S perpendicular to d: one width-1 visit per amoebot,
// a port to every neighbour at its stripe offset. Stripes between two neighbours
// that hold no amoebot are tracked by both of them.
std::vector<std::vector<PascVisit>> stripe_visits(const World& world, Dir d, int reference);

struct StripeResult {
  std::vector<Identifier> ids;  // per amoebot
  int iterations = 0;
  long rounds = 0;
};
StripeResult stripe_identifiers(World& world, Dir d, GridCoord reference);

// Members of the axis through u in direction d.
std::vector<uint8_t> stripe_algorithm(World& world, GridCoord u, Dir d, long* rounds = nullptr);

struct MaximaResult {
  std::vector<uint8_t> flags;  // per amoebot
  GridCoord reference;
  int bits = 0;
  long rounds = 0;
};
// Members of R with the largest projection onto d.
MaximaResult global_maxima(World& world, const std::vector<uint8_t>& R, Dir d, int confirm);

int f_d_oracle_hook(const World& world, const std::vector<uint8_t>& R, GridCoord w, Dir d);

}  // namespace amoebot
