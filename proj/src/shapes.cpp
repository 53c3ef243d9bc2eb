#include "amoebot/shapes.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "amoebot/errors.hpp"

namespace amoebot {

Structure line_shape(int n, Dir d) {
  Structure out;
  GridCoord c{0, 0};
  for (int i = 0; i < n; ++i) {
    out.push_back(c);
    c = neighbor(c, d);
  }
  return out;
}

Structure triangle_shape(int side) {
  Structure out;
  for (int q = 0; q < side; ++q)
    for (int r = 0; q + r < side; ++r) out.push_back({q, r});
  return out;
}

namespace {
int hex_dist(GridCoord c) { return std::max({std::abs(c.q), std::abs(c.r), std::abs(c.q + c.r)}); }
}  // namespace

Structure hexagon_ring(int radius) {
  Structure out;
  for (int q = -radius; q <= radius; ++q)
    for (int r = -radius; r <= radius; ++r)
      if (hex_dist({q, r}) == radius) out.push_back({q, r});
  return out;
}

Structure filled_hexagon(int radius) {
  Structure out;
  for (int q = -radius; q <= radius; ++q)
    for (int r = -radius; r <= radius; ++r)
      if (hex_dist({q, r}) <= radius) out.push_back({q, r});
  return out;
}

bool connected(const Structure& S) {
  if (S.empty()) return false;
  std::unordered_set<GridCoord> occ(S.begin(), S.end()), seen{S[0]};
  std::deque<GridCoord> q{S[0]};
  while (!q.empty()) {
    GridCoord c = q.front();
    q.pop_front();
    for (int s = 0; s < 6; ++s) {
      GridCoord n = neighbor_side(c, s);
      if (occ.count(n) && seen.insert(n).second) q.push_back(n);
    }
  }
  return seen.size() == occ.size();
}

Structure random_structure(int n, int holes, uint64_t seed) {
  if (n < 1) throw InvalidArgument("structure size must be positive");
  std::mt19937_64 rng(seed);
  std::unordered_set<GridCoord> occ{{0, 0}};
  std::vector<GridCoord> cells{{0, 0}};
  const int target = n + holes;
  while (static_cast<int>(cells.size()) < target) {
    GridCoord base = cells[rng() % cells.size()];
    GridCoord c = neighbor_side(base, static_cast<int>(rng() % 6));
    if (occ.insert(c).second) cells.push_back(c);
  }
  int punched = 0;
  std::vector<GridCoord> order = cells;
  std::shuffle(order.begin(), order.end(), rng);
  for (GridCoord c : order) {
    if (punched == holes) break;
    bool interior = true;
    for (int s = 0; s < 6; ++s) interior &= occ.count(neighbor_side(c, s)) > 0;
    if (!interior) continue;
    occ.erase(c);
    ++punched;
  }
  Structure out(occ.begin(), occ.end());
  std::sort(out.begin(), out.end());
  // when too few interior nodes exist, trim boundary leaves so that |S| stays n
  while (static_cast<int>(out.size()) > n) {
    bool removed = false;
    for (size_t i = out.size(); i-- > 0;) {
      Structure trial = out;
      trial.erase(trial.begin() + static_cast<long>(i));
      if (connected(trial)) {
        out = std::move(trial);
        removed = true;
        break;
      }
    }
    if (!removed) break;
  }
  return out;
}

Structure rotated(const Structure& S, int times60) {
  Structure out;
  for (auto c : S) out.push_back(rotate60(c, times60));
  return out;
}

Structure mirrored(const Structure& S) {
  Structure out;
  for (auto c : S) out.push_back(mirror(c));
  return out;
}

Structure translated(const Structure& S, GridCoord by) {
  Structure out;
  for (auto c : S) out.push_back(c + by);
  return out;
}

Structure normalized(Structure S) {
  std::sort(S.begin(), S.end());
  return S;
}

Structure parse_structure(const std::string& text) {
  Structure out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    long q, r;
    if (!(ls >> q)) {
      std::string rest;
      if (std::istringstream(line) >> rest)
        throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
      continue;
    }
    std::string extra;
    if (!(ls >> r) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected two integers");
    out.push_back({static_cast<int>(q), static_cast<int>(r)});
  }
  return out;
}

Structure read_structure_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_structure(ss.str());
}

std::string format_structure(const Structure& S) {
  std::string out;
  for (auto c : S) out += std::to_string(c.q) + " " + std::to_string(c.r) + "\n";
  return out;
}

}  // namespace amoebot
