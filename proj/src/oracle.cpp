#include "amoebot/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "amoebot/errors.hpp"

namespace amoebot::oracle {

namespace {

using Occupancy = std::unordered_set<GridCoord>;

Occupancy occupancy(const Structure& S) { return Occupancy(S.begin(), S.end()); }

int mod6(int x) { return ((x % 6) + 6) % 6; }

struct Run {
  int mask = 0;  // empty sides
  int pred = -1, succ = -1;
};

std::vector<Run> runs_of(const Occupancy& occ, GridCoord u) {
  int empty = 0;
  for (int s = 0; s < 6; ++s)
    if (!occ.count(neighbor_side(u, s))) empty |= 1 << s;
  if (empty == 0) return {};
  if (empty == 0x3F) return {Run{0x3F, -1, -1}};
  int start = 0;
  while (empty >> start & 1) ++start;  // an occupied side
  std::vector<Run> out;
  for (int i = 1; i <= 6; ++i) {
    int s = mod6(start + i);
    if (!(empty >> s & 1)) continue;
    if (empty >> mod6(s - 1) & 1) continue;  // not the first side of its run
    Run r;
    r.pred = mod6(s - 1);
    int t = s;
    while (empty >> t & 1) {
      r.mask |= 1 << t;
      t = mod6(t + 1);
    }
    r.succ = t;
    out.push_back(r);
  }
  return out;
}

int turn_of(const Run& r) {
  if (r.pred < 0) return 6;
  int t = mod6(r.succ - mod6(r.pred + 3));
  return t >= 4 ? t - 6 : t;
}

struct Rec {
  GridCoord node;
  int pred = -1, succ = -1;  // sides
  int mask = 0;              // empty sides of the originating run, 0 for path pieces
  int region = -1;
  bool touched = false;
};

Occurrence to_occ(const Rec& r) {
  Occurrence o{r.node, {}, {}};
  if (r.pred >= 0) o.pred = neighbor_side(r.node, r.pred);
  if (r.succ >= 0) o.succ = neighbor_side(r.node, r.succ);
  return o;
}

// Follows successor links from rec `first`; every rec must be reached exactly once.
std::vector<Occurrence> trace(const std::vector<Rec>& recs, size_t first) {
  std::map<std::pair<GridCoord, GridCoord>, size_t> by_pred;
  for (size_t i = 0; i < recs.size(); ++i) {
    if (recs[i].pred < 0) continue;
    auto key = std::make_pair(recs[i].node, neighbor_side(recs[i].node, recs[i].pred));
    if (!by_pred.emplace(key, i).second)
      throw OracleMismatch("two visits of " + to_string(recs[i].node) + " share a predecessor");
  }
  std::vector<Occurrence> out;
  size_t cur = first;
  std::vector<char> seen(recs.size(), 0);
  while (true) {
    if (seen[cur]) break;
    seen[cur] = 1;
    out.push_back(to_occ(recs[cur]));
    if (recs[cur].succ < 0) break;
    GridCoord nxt = neighbor_side(recs[cur].node, recs[cur].succ);
    auto it = by_pred.find({nxt, recs[cur].node});
    if (it == by_pred.end()) throw OracleMismatch("dangling successor at " + to_string(nxt));
    cur = it->second;
  }
  if (cur != first) throw OracleMismatch("successor walk does not close");
  return out;
}

}  // namespace

Structure stripe(const Structure& S, GridCoord u, Dir d) {
  Structure out;
  for (auto v : S)
    if (on_axis(v, {u, d})) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

int f_d(const Structure& R, GridCoord w, Dir d) {
  int c = 0;
  for (auto x : R) c += proj(x, d) > proj(w, d);
  return c;
}

Structure maxima(const Structure& R, Dir d) {
  if (R.empty()) throw EmptySubset("maxima of an empty set");
  int best = proj(R[0], d);
  for (auto x : R) best = std::max(best, proj(x, d));
  Structure out;
  for (auto x : R)
    if (proj(x, d) == best) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

int Regions::at(GridCoord c) const {
  int x = c.q - qmin, y = c.r - rmin;
  if (x < 0 || y < 0 || x >= width || y >= height) return 0;
  return label[y * width + x];
}

Regions regions(const Structure& S) {
  Regions g;
  int qmax = S[0].q, rmax = S[0].r;
  g.qmin = S[0].q;
  g.rmin = S[0].r;
  for (auto c : S) {
    g.qmin = std::min(g.qmin, c.q);
    g.rmin = std::min(g.rmin, c.r);
    qmax = std::max(qmax, c.q);
    rmax = std::max(rmax, c.r);
  }
  --g.qmin;
  --g.rmin;
  g.width = qmax + 2 - g.qmin;
  g.height = rmax + 2 - g.rmin;
  const int unset = -2;
  g.label.assign(g.width * g.height, unset);
  for (auto c : S) g.label[(c.r - g.rmin) * g.width + (c.q - g.qmin)] = -1;
  auto flood = [&](int start, int id) {
    std::deque<int> q{start};
    g.label[start] = id;
    while (!q.empty()) {
      int cell = q.front();
      q.pop_front();
      GridCoord c{cell % g.width + g.qmin, cell / g.width + g.rmin};
      for (int s = 0; s < 6; ++s) {
        GridCoord n = neighbor_side(c, s);
        int x = n.q - g.qmin, y = n.r - g.rmin;
        if (x < 0 || y < 0 || x >= g.width || y >= g.height) continue;
        int idx = y * g.width + x;
        if (g.label[idx] != unset) continue;
        g.label[idx] = id;
        q.push_back(idx);
      }
    }
  };
  flood(0, 0);  // the box corner is outside
  g.count = 1;
  for (int i = 0; i < g.width * g.height; ++i)
    if (g.label[i] == unset) flood(i, g.count++);
  return g;
}

namespace {

struct BoundaryData {
  Regions reg;
  std::vector<Rec> recs;
};

BoundaryData boundary_recs(const Structure& S) {
  BoundaryData b{regions(S), {}};
  Occupancy occ = occupancy(S);
  Structure sorted = S;
  std::sort(sorted.begin(), sorted.end());
  for (auto u : sorted)
    for (const Run& r : runs_of(occ, u)) {
      int side = __builtin_ctz(r.mask);
      b.recs.push_back({u, r.pred, r.succ, r.mask, b.reg.at(neighbor_side(u, side)), false});
    }
  return b;
}

}  // namespace

std::vector<BoundaryCycle> boundaries(const Structure& S) {
  BoundaryData b = boundary_recs(S);
  std::vector<BoundaryCycle> out;
  std::vector<char> used(b.recs.size(), 0);
  std::map<std::pair<GridCoord, int>, size_t> index;  // (node, pred side)
  for (size_t i = 0; i < b.recs.size(); ++i) index[{b.recs[i].node, b.recs[i].pred}] = i;
  std::vector<int> cycles_per_region(b.reg.count, 0);
  for (size_t i = 0; i < b.recs.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> members;
    for (size_t cur = i; !used[cur];) {
      used[cur] = 1;
      members.push_back(cur);
      const Rec& r = b.recs[cur];
      if (r.succ < 0) break;
      GridCoord nxt = neighbor_side(r.node, r.succ);
      int back = mod6(r.succ + 3);
      cur = index.at({nxt, back});
    }
    BoundaryCycle bc;
    int region = b.recs[i].region;
    for (size_t m : members) {
      if (b.recs[m].region != region) throw OracleMismatch("boundary cycle crosses regions");
      Run run{b.recs[m].mask, b.recs[m].pred, b.recs[m].succ};
      bc.turn_sum += turn_of(run);
      bc.cycle.push_back(to_occ(b.recs[m]));
    }
    bc.outer = region == 0;
    if (++cycles_per_region[region] > 1) throw OracleMismatch("region with two boundary cycles");
    auto lo = std::min_element(bc.cycle.begin(), bc.cycle.end());
    std::rotate(bc.cycle.begin(), lo, bc.cycle.end());
    out.push_back(std::move(bc));
  }
  std::sort(out.begin(), out.end(),
            [](const BoundaryCycle& x, const BoundaryCycle& y) { return x.cycle[0] < y.cycle[0]; });
  return out;
}

namespace {

// The boundary node maximal along d, ties broken along rho_s(d, 90).
GridCoord top_of(const std::vector<GridCoord>& members, Dir d, Sign s) {
  Structure top = maxima(members, d);
  return maxima(top, rotate(d, 90, s))[0];
}

}  // namespace

Skeleton skeleton(const Structure& S, Dir d, Sign s) {
  Skeleton sk;
  sk.d = d;
  sk.s = s;
  const Dir dp = is_axis(d) ? d : rotate(d, 30, s);
  const int up = side_of(dp), down = mod6(up + 3);
  Occupancy occ = occupancy(S);
  BoundaryData b = boundary_recs(S);

  std::map<int, std::vector<GridCoord>> members;
  for (const Rec& r : b.recs) members[r.region].push_back(r.node);

  auto find_rec = [&](GridCoord node, int side) -> size_t {
    for (size_t i = 0; i < b.recs.size(); ++i)
      if (b.recs[i].node == node && (b.recs[i].mask >> side & 1)) return i;
    throw OracleMismatch("no boundary visit of " + to_string(node) + " at side " +
                         std::to_string(side));
  };
  auto claim = [&](size_t i) {
    if (b.recs[i].touched) throw OracleMismatch("visit spliced twice at " + to_string(b.recs[i].node));
    b.recs[i].touched = true;
  };
  auto region_at = [&](GridCoord node, int side) { return b.reg.at(neighbor_side(node, side)); };

  struct Plan {
    GridCoord u;
    int region;
  };
  std::vector<Plan> plans;
  for (auto& [region, mem] : members)
    if (region != 0) plans.push_back({top_of(mem, d, s), region});

  for (const Plan& p : plans) {
    const GridCoord u = p.u;
    // Starting point: one empty neighbour of its own region, straight below.
    int own = 0, other = 0;
    for (int side = 0; side < 6; ++side) {
      int g = occ.count(neighbor_side(u, side)) ? -1 : region_at(u, side);
      if (g == p.region) {
        ++own;
        if (side != down) throw OracleMismatch("start point touches its region off-axis");
      } else if (g >= 0) {
        ++other;
      }
    }
    if (own != 1) throw OracleMismatch("start point touches its region more than once");

    std::vector<GridCoord> path{u};
    if (other == 0) {
      while (true) {
        GridCoord nxt = neighbor_side(path.back(), up);
        if (!occ.count(nxt)) throw OracleMismatch("path leaves the structure");
        path.push_back(nxt);
        bool boundary = false;
        for (int side = 0; side < 6; ++side) {
          GridCoord n = neighbor_side(nxt, side);
          if (occ.count(n)) continue;
          if (b.reg.at(n) == p.region) throw OracleMismatch("path touches its own region");
          boundary = true;
        }
        if (boundary) break;
      }
    }
    const GridCoord v = path.back();
    int attach_side = -1;
    for (int i = 0; i < 6 && attach_side < 0; ++i) {
      int side = mod6(s == Sign::Plus ? down - i : down + i);
      if (occ.count(neighbor_side(v, side))) continue;
      if (region_at(v, side) != p.region) attach_side = side;
    }
    if (attach_side < 0) throw OracleMismatch("no boundary to attach at " + to_string(v));
    size_t j = find_rec(v, attach_side);
    claim(j);
    if (path.size() == 1) {
      size_t bi = find_rec(u, down);
      claim(bi);
      std::swap(b.recs[j].succ, b.recs[bi].succ);
      continue;
    }
    // below the attach visit: a_j -> v -> (down the corridor) ... -> v -> b_j
    Rec split = b.recs[j];
    b.recs[j].succ = down;
    split.pred = down;
    b.recs.push_back(split);
    for (size_t i = 1; i + 1 < path.size(); ++i) {
      b.recs.push_back({path[i], up, down, 0, -1, true});
      b.recs.push_back({path[i], down, up, 0, -1, true});
    }
    size_t bi = find_rec(u, down);
    claim(bi);
    Rec second = b.recs[bi];
    b.recs[bi].succ = up;   // a -> u -> corridor
    second.pred = up;       // corridor -> u -> b
    b.recs.push_back(second);
  }

  // splitting visit at the top of the outer boundary: for + the one entering from
  // the clockwise end of the empty run around d_p, for - the one leaving at its
  // counterclockwise end
  sk.split = top_of(members.at(0), d, s);
  size_t best = b.recs.size();
  int enter = -2;
  for (const Rec& r : b.recs)
    if (r.node == sk.split && (r.mask >> up & 1)) {
      Run run{r.mask, -1, -1};
      enter = -1;
      if (r.mask != 0x3F) {
        const int step = s == Sign::Plus ? -1 : 1;
        enter = up;
        while (run.mask >> enter & 1) enter = mod6(enter + step);
      }
    }
  if (enter == -2) throw OracleMismatch("top of the outer boundary has no run along d_p");
  for (size_t i = 0; i < b.recs.size(); ++i)
    if (b.recs[i].node == sk.split &&
        (s == Sign::Plus ? b.recs[i].pred : b.recs[i].succ) == enter)
      best = i;
  if (best == b.recs.size()) throw OracleMismatch("no splitting visit at " + to_string(sk.split));
  sk.cycle = trace(b.recs, best);
  if (sk.cycle.size() != b.recs.size()) throw OracleMismatch("skeleton is not a single cycle");
  return sk;
}

bool spanning_check(const Structure& S, const std::vector<Edge>& edges) {
  if (edges.size() + 1 != S.size()) return false;
  std::unordered_map<GridCoord, int> idx;
  for (size_t i = 0; i < S.size(); ++i) idx[S[i]] = static_cast<int>(i);
  std::vector<int> uf(S.size());
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (const Edge& e : edges) {
    auto a = idx.find(e.a), b = idx.find(e.b);
    if (a == idx.end() || b == idx.end()) return false;
    bool adjacent = false;
    for (int s = 0; s < 6; ++s) adjacent |= neighbor_side(e.a, s) == e.b;
    if (!adjacent) return false;
    int x = find(a->second), y = find(b->second);
    if (x == y) return false;  // cycle
    uf[x] = y;
  }
  return true;
}

std::vector<Edge> first_occurrence_edges(const ChainRef& path) {
  std::vector<Edge> out;
  std::unordered_set<GridCoord> seen;
  for (int i = 0; i < path.size(); ++i) {
    GridCoord v = path.positions[i];
    if (!seen.insert(v).second) continue;
    if (i > 0) out.push_back(make_edge(v, path.positions[i - 1]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpanningTree spanning_tree(const Structure& S, const ChainRef& path) {
  SpanningTree t;
  t.root = path.positions.at(0);
  t.path_edges = first_occurrence_edges(path);
  t.edges = t.path_edges;
  std::unordered_set<GridCoord> on_path(path.positions.begin(), path.positions.end());
  for (auto v : S)
    if (!on_path.count(v)) t.edges.push_back(make_edge(v, neighbor(v, Dir::N)));
  std::sort(t.edges.begin(), t.edges.end());
  return t;
}

namespace {

// Applies the lattice map g about the centroid; true if S maps onto itself.
template <class Map>
bool invariant(const Structure& S, const Occupancy& occ, Map g) {
  const long n = static_cast<long>(S.size());
  long sq = 0, sr = 0;
  for (auto c : S) {
    sq += c.q;
    sr += c.r;
  }
  for (auto c : S) {
    GridCoord w{static_cast<int>(n * c.q - sq), static_cast<int>(n * c.r - sr)};
    GridCoord m = g(w);
    long q = m.q + sq, r = m.r + sr;
    if (q % n != 0 || r % n != 0) return false;
    if (!occ.count({static_cast<int>(q / n), static_cast<int>(r / n)})) return false;
  }
  return true;
}

}  // namespace

SymmetryReport symmetry(const Structure& S) {
  Occupancy occ = occupancy(S);
  SymmetryReport rep;
  rep.rot2 = invariant(S, occ, [](GridCoord v) { return rotate60(v, 3); });
  rep.rot3 = invariant(S, occ, [](GridCoord v) { return rotate60(v, 2); });
  rep.rot6 = rep.rot2 && rep.rot3;
  for (int i = 0; i < 6; ++i) {
    bool m = invariant(S, occ, [i](GridCoord v) { return rotate60(mirror(v), i); });
    rep.reflect[i] = rep.reflect[i + 6] = m;
  }
  return rep;
}

}  // namespace amoebot::oracle
