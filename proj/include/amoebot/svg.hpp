#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amoebot/types.hpp"

namespace amoebot {

struct SvgScene {
  Structure structure;
  std::vector<GridCoord> highlighted;
  std::vector<Occurrence> skeleton;                 // drawn as boundary arcs
  std::vector<std::vector<GridCoord>> paths;        // fusion paths
  std::optional<GridCoord> split;
  std::vector<Edge> edges;                          // tree edges
  std::string title;
};

// Hexagon per amoebot; output depends only on the scene.
std::string render_svg(const SvgScene& scene);

}  // namespace amoebot
