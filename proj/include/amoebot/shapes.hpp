#pragma once

#include <cstdint>
#include <string>

#include "amoebot/types.hpp"

namespace amoebot {

Structure line_shape(int n, Dir d = Dir::ENE);
Structure triangle_shape(int side);  // side=2 is the 3-node triangle
Structure hexagon_ring(int radius = 1);
Structure filled_hexagon(int radius);
// Seeded blob growth; `holes` interior nodes are then punched out where connectivity allows.
Structure random_structure(int n, int holes, uint64_t seed);

Structure rotated(const Structure& S, int times60);
Structure mirrored(const Structure& S);
Structure translated(const Structure& S, GridCoord by);
Structure normalized(Structure S);  // sorted

// One "q r" pair per line; '#' starts a comment.
Structure parse_structure(const std::string& text);
Structure read_structure_file(const std::string& path);
std::string format_structure(const Structure& S);

bool connected(const Structure& S);

}  // namespace amoebot
