#include "amoebot/skeleton.hpp"

#include <algorithm>
#include <map>

#include "amoebot/errors.hpp"
#include "amoebot/pasc.hpp"

namespace amoebot {

namespace {

int mod6(int x) { return ((x % 6) + 6) % 6; }

using Flags = std::vector<std::vector<uint8_t>>;

Flags flags_like(const World& world, const Overlay& ov, uint8_t v) {
  Flags f(world.size());
  for (int u = 0; u < world.size(); ++u) f[u].assign(ov.at(u).size(), v);
  return f;
}

// Cycle visits placed on the stripes perpendicular to d; positions are projections.
std::vector<std::vector<PascVisit>> cycle_stripe_visits(const World& world, const Overlay& ov, const Flags& refs,
                                                        Dir d) {
  std::vector<std::vector<PascVisit>> out(world.size());
  for (int u = 0; u < world.size(); ++u) {
    const int p = proj(world.coord(u), d);
    for (size_t j = 0; j < ov.at(u).size(); ++j) {
      const Visit& v = ov.at(u)[j];
      PascVisit pv;
      if (v.pred_side >= 0)
        pv.add_port(v.pred_side, v.pred_slot, proj(neighbor_side(world.coord(u), v.pred_side), d) - p);
      if (v.succ_side >= 0)
        pv.add_port(v.succ_side, v.succ_slot, proj(neighbor_side(world.coord(u), v.succ_side), d) - p);
      if (refs[u][j]) pv.ref = 0;
      out[u].push_back(pv);
    }
  }
  return out;
}

}  // namespace

Flags cycle_maxima(World& world, const Overlay& ov, const Flags& R, const Flags& refs, Dir d) {
  if (ov.wires() < 2) throw InvalidPinCount("cycle maxima need two wires per lane");
  PascProgram full(world, cycle_stripe_visits(world, ov, refs, d));
  Flags sign = flags_like(world, ov, 0);
  full.set_observer([&](int u, int j, int, const PascVisit& v) { sign[u][j] = v.bit0; });
  drive(world, full, [&] { return full.done(); });
  const int T = full.iterations();

  Flags alive = flags_like(world, ov, 0);
  for (int u = 0; u < world.size(); ++u)
    for (size_t j = 0; j < alive[u].size(); ++j) alive[u][j] = R[u][j] && !sign[u][j];
  for (int b = T - 1; b >= 0; --b) {
    PascProgram replay(world, cycle_stripe_visits(world, ov, refs, d), b + 1);
    Flags bit = flags_like(world, ov, 0);
    replay.set_observer([&](int u, int j, int it, const PascVisit& v) {
      if (it == b) bit[u][j] = v.bit0;
    });
    drive(world, replay, [&] { return replay.done(); });
    run_rounds(world, 2, [&](Node& n, int r) {
      const int u = n.id();
      const int V = static_cast<int>(alive[u].size());
      if (r == 0) {
        n.clear_pins();
        chain_bus(n, ov);
        for (int j = 0; j < V; ++j)
          if (alive[u][j] && bit[u][j]) n.beep(j);
        return;
      }
      for (int j = 0; j < V; ++j)
        if (n.received(j) && !bit[u][j]) alive[u][j] = 0;
    });
  }
  return alive;
}

SkeletonRun canonical_skeleton(World& world, Dir d, Sign s, int confirm) {
  if (world.pins() < 4) throw InvalidPinCount("the skeleton needs four pins per bond");
  const long start = world.round();
  const Dir dp = is_axis(d) ? d : rotate(d, 30, s);
  const int up = side_of(dp), down = mod6(up + 3);
  const int n = world.size();

  std::vector<BoundarySet> bs = detect_boundaries(world);
  classify_boundaries(world, bs, confirm);
  std::vector<ChainRef> chains;
  for (auto& b : bs) chains.push_back(b.cycle);
  Overlay ov(world, chains);

  Flags refs = flags_like(world, ov, 0), all = flags_like(world, ov, 1);
  for (int u = 0; u < n; ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j)
      refs[u][j] = ov.at(u)[j].pos == ov.chains()[ov.at(u)[j].chain].ref;

  // top of every boundary: maxima along d, then along rho_s(d, 90) among those
  Flags top_d = cycle_maxima(world, ov, all, refs, d);
  std::vector<Candidate> cands;
  for (int u = 0; u < n; ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j)
      if (top_d[u][j]) cands.push_back({u, static_cast<int>(j)});
  ElectionResult el = leader_election(
      world, [&](Node& nd) { chain_bus(nd, ov); }, cands, confirm);
  Flags refs2 = flags_like(world, ov, 0);
  for (size_t c = 0; c < cands.size(); ++c)
    if (el.leader[c]) refs2[cands[c].amoebot][cands[c].set] = 1;
  std::vector<int> per_chain(ov.chains().size(), 0);
  for (size_t c = 0; c < cands.size(); ++c)
    per_chain[ov.at(cands[c].amoebot)[cands[c].set].chain] += el.leader[c];
  if (std::count_if(per_chain.begin(), per_chain.end(), [](int k) { return k != 1; }))
    throw ProtocolViolation("boundary without a unique reference among its maxima");
  Flags top = cycle_maxima(world, ov, top_d, refs2, rotate(d, 90, s));

  SkeletonRun out;
  std::vector<std::vector<SkeletonVisit>>& vis = out.visits;
  vis.resize(n);
  for (int u = 0; u < n; ++u)
    for (const Visit& v : ov.at(u)) vis[u].push_back({v.pred_side, v.succ_side, bs[v.chain].runs[v.pos], false});

  // local roles: starting points of inner boundaries, the splitting amoebot
  std::vector<uint8_t> is_start(n, 0), trivial(n, 0), is_split(n, 0);
  std::vector<int> start_visit(n, -1);
  std::map<int, int> top_amoebot;  // chain -> amoebot
  for (int u = 0; u < n; ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j) {
      if (!top[u][j]) continue;
      const int c = ov.at(u)[j].chain;
      auto [it, fresh] = top_amoebot.emplace(c, u);
      if (!fresh && it->second != u) throw ProtocolViolation("boundary with two tops");
      if (bs[c].kind == BoundaryKind::Outer) {
        is_split[u] = 1;
        continue;
      }
      if (vis[u][j].mask != (1 << down))
        throw ProtocolViolation("start point " + to_string(world.coord(u)) + " does not face its region below");
      is_start[u] = 1;
      start_visit[u] = static_cast<int>(j);
      int empty = 0;
      for (int sd = 0; sd < 6; ++sd) empty += world.neighbor(u, sd) < 0;
      trivial[u] = empty > 1;
    }

  // straight lines upwards: inner amoebots relay, boundary amoebots stop them
  std::vector<uint8_t> corridor(n, 0), heard_below(n, 0);
  run_rounds(world, 2, [&](Node& nd, int r) {
    const int u = nd.id();
    const bool inner = ov.at(u).empty();
    if (r == 0) {
      nd.clear_pins();
      nd.use_sets(2);
      if (inner) {
        nd.assign(up, 0, 0);
        nd.assign(down, 0, 0);
      } else {
        if (nd.has_neighbor(down)) nd.assign(down, 0, 0);
        if (nd.has_neighbor(up)) nd.assign(up, 0, 1);
        if (is_start[u] && !trivial[u]) nd.beep(1);
      }
      return;
    }
    if (inner)
      corridor[u] = nd.received(0);
    else
      heard_below[u] = nd.received(0);
  });

  auto claim = [&](int u, int j) {
    if (vis[u][j].spliced) throw ProtocolViolation("visit at " + to_string(world.coord(u)) + " spliced twice");
    vis[u][j].spliced = true;
  };
  auto visit_with_side = [&](int u, int side) {
    for (size_t j = 0; j < vis[u].size(); ++j)
      if (vis[u][j].mask >> side & 1) return static_cast<int>(j);
    throw ProtocolViolation("no boundary visit of " + to_string(world.coord(u)) + " at side " +
                            std::to_string(side));
  };
  // first empty side after down, turning with s: the boundary a path attaches to
  auto attach_visit = [&](int u) {
    for (int i = 1; i < 6; ++i) {
      int side = mod6(s == Sign::Plus ? down - i : down + i);
      if (!world.occupied(neighbor_side(world.coord(u), side))) return visit_with_side(u, side);
    }
    throw ProtocolViolation("no boundary to attach at " + to_string(world.coord(u)));
  };

  for (int u = 0; u < n; ++u) {
    if (corridor[u]) {
      vis[u].push_back({up, down, 0, true});
      vis[u].push_back({down, up, 0, true});
    }
    if (heard_below[u]) {
      const int j = attach_visit(u);
      claim(u, j);
      SkeletonVisit second = vis[u][j];
      vis[u][j].succ = down;
      second.pred = down;
      vis[u].push_back(second);
    }
  }
  for (int u = 0; u < n; ++u) {
    if (!is_start[u]) continue;
    const int bi = start_visit[u];
    if (trivial[u]) {
      const int j = attach_visit(u);
      claim(u, j);
      claim(u, bi);
      std::swap(vis[u][j].succ, vis[u][bi].succ);
    } else {
      claim(u, bi);
      SkeletonVisit second = vis[u][bi];
      vis[u][bi].succ = up;
      second.pred = up;
      vis[u].push_back(second);
    }
  }

  // splitting visit on the top of the outer boundary
  int split_u = -1, split_j = -1;
  for (int u = 0; u < n; ++u) {
    if (!is_split[u]) continue;
    int enter = -2;
    for (const SkeletonVisit& v : vis[u])
      if (v.mask >> up & 1) {
        enter = -1;
        if (v.mask != 0x3F) {
          const int step = s == Sign::Plus ? -1 : 1;
          enter = up;
          while (v.mask >> enter & 1) enter = mod6(enter + step);
        }
      }
    if (enter == -2) throw ProtocolViolation("top of the outer boundary has no run along d_p");
    for (size_t j = 0; j < vis[u].size(); ++j)
      if ((s == Sign::Plus ? vis[u][j].pred : vis[u][j].succ) == enter) split_j = static_cast<int>(j);
    split_u = u;
  }
  if (split_u < 0 || split_j < 0) throw ProtocolViolation("no splitting visit");

  // follow successor pointers
  std::map<std::pair<int, int>, int> by_pred;
  size_t total = 0;
  for (int u = 0; u < n; ++u) {
    total += vis[u].size();
    for (size_t j = 0; j < vis[u].size(); ++j)
      if (vis[u][j].pred >= 0 && !by_pred.emplace(std::make_pair(u, vis[u][j].pred), static_cast<int>(j)).second)
        throw ProtocolViolation("two visits of " + to_string(world.coord(u)) + " share a predecessor");
  }
  Skeleton& sk = out.skeleton;
  sk.d = d;
  sk.s = s;
  sk.split = world.coord(split_u);
  int u = split_u, j = split_j;
  do {
    const SkeletonVisit& v = vis[u][j];
    Occurrence o{world.coord(u), {}, {}};
    if (v.pred >= 0) o.pred = neighbor_side(o.node, v.pred);
    if (v.succ >= 0) o.succ = neighbor_side(o.node, v.succ);
    sk.cycle.push_back(o);
    if (v.succ < 0 || sk.cycle.size() > total) break;
    const int w = world.neighbor(u, v.succ);
    j = by_pred.at({w, mod6(v.succ + 3)});
    u = w;
  } while (!(u == split_u && j == split_j));
  if (sk.cycle.size() != total) throw ProtocolViolation("skeleton is not a single cycle");

  for (int b = 0; b < n; ++b) {
    if (!is_start[b]) continue;
    out.starts.push_back(world.coord(b));
    std::vector<GridCoord> path{world.coord(b)};
    if (!trivial[b]) {
      int cur = world.neighbor(b, up);
      while (cur >= 0 && corridor[cur]) {
        path.push_back(world.coord(cur));
        cur = world.neighbor(cur, up);
      }
      if (cur >= 0) path.push_back(world.coord(cur));
    }
    out.paths.push_back(path);
  }
  out.rounds = world.round() - start;
  return out;
}

TreeRun spanning_tree(World& world, const ChainRef& path) {
  const long start = world.round();
  const int n = world.size();
  std::vector<int> parent(n, -1);
  std::vector<uint8_t> on_path(n, 0);
  if (path.size() > 0) {
    Overlay ov(world, {path});
    if (ov.wires() < 2) throw InvalidPinCount("spanning tree needs two wires per lane");
    PascProgram prog(world, chain_visits(world, ov));
    // streaming comparison, least significant bit first: the last differing bit decides
    std::vector<std::vector<std::vector<uint8_t>>> less(n);
    for (int u = 0; u < n; ++u) {
      const size_t V = ov.at(u).size();
      less[u].assign(V, std::vector<uint8_t>(V, 0));
    }
    std::vector<std::vector<uint8_t>> cur(n);
    for (int u = 0; u < n; ++u) cur[u].assign(ov.at(u).size(), 0);
    prog.set_observer([&](int u, int j, int, const PascVisit& v) {
      cur[u][j] = v.bit0;
      if (j + 1 < static_cast<int>(ov.at(u).size())) return;
      for (size_t a = 0; a < cur[u].size(); ++a)
        for (size_t b = 0; b < cur[u].size(); ++b)
          if (cur[u][a] != cur[u][b]) less[u][a][b] = cur[u][a] < cur[u][b];
    });
    drive(world, prog, [&] { return prog.done(); });
    for (int u = 0; u < n; ++u) {
      const size_t V = ov.at(u).size();
      if (V == 0) continue;
      on_path[u] = 1;
      for (size_t a = 0; a < V; ++a) {
        bool min = true;
        for (size_t b = 0; b < V; ++b) min &= a == b || less[u][a][b];
        if (min) parent[u] = ov.at(u)[a].pred_side;
      }
    }
  }
  for (int u = 0; u < n; ++u)
    if (!on_path[u]) parent[u] = side_of(Dir::N);

  // children learn their parent's choice through a beep on the bond
  TreeRun res;
  res.tree.root = path.size() > 0 ? path.positions[0] : world.coord(0);
  run_rounds(world, 2, [&](Node& nd, int r) {
    const int u = nd.id();
    if (r == 0) {
      nd.clear_pins();
      nd.use_sets(6);
      for (int sd = 0; sd < 6; ++sd)
        if (nd.has_neighbor(sd)) nd.assign(sd, 0, sd);
      if (parent[u] >= 0) {
        if (!nd.has_neighbor(parent[u])) throw ProtocolViolation("parent side without a neighbour");
        nd.beep(parent[u]);
      }
      return;
    }
    for (int sd = 0; sd < 6; ++sd)
      if (nd.has_neighbor(sd) && nd.received(sd) && parent[u] != sd) {
        const int c = nd.neighbor(sd);
        Edge e = make_edge(nd.coord(), world.coord(c));
        res.tree.edges.push_back(e);
        if (on_path[c]) res.tree.path_edges.push_back(e);
      }
  });
  std::sort(res.tree.edges.begin(), res.tree.edges.end());
  std::sort(res.tree.path_edges.begin(), res.tree.path_edges.end());
  res.rounds = world.round() - start;
  return res;
}

}  // namespace amoebot
