#include "amoebot/types.hpp"

namespace amoebot {

ChainRef skeleton_path(const Skeleton& sk) {
  ChainRef c;
  for (const auto& o : sk.cycle) c.positions.push_back(o.node);
  c.ref = 0;
  return c;
}

}  // namespace amoebot
