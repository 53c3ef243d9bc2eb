#include "amoebot/chain.hpp"

#include <map>

#include "amoebot/errors.hpp"

namespace amoebot {

namespace {
int mod6(int x) { return ((x % 6) + 6) % 6; }
}  // namespace

int side_towards(GridCoord a, GridCoord b) {
  for (int s = 0; s < 6; ++s)
    if (neighbor_side(a, s) == b) return s;
  return -1;
}

Overlay::Overlay(const World& world, std::vector<ChainRef> chains) : chains_(std::move(chains)) {
  const int k = world.pins();
  const bool lanes = k >= 4;
  wires_ = lanes ? k / 2 : k;
  visits_.assign(world.size(), {});
  where_.resize(chains_.size());
  std::map<std::pair<int, int>, int> used;
  auto lane_slot = [&](int from, int to) {
    int lane = lanes && world.coord(from) < world.coord(to) ? 1 : 0;
    // a lane is tied to the traversal direction, so only opposite directions may share a bond
    auto key = lanes ? std::make_pair(from, to) : std::make_pair(std::min(from, to), std::max(from, to));
    if (++used[key] > 1)
      throw InvalidChain("bond " + to_string(world.coord(from)) + "-" + to_string(world.coord(to)) +
                         " carries two links in one lane");
    return lane * wires_;
  };
  for (size_t c = 0; c < chains_.size(); ++c) {
    const ChainRef& ch = chains_[c];
    const int m = ch.size();
    if (m == 0) throw InvalidChain("empty chain");
    if (ch.ref < 0 || ch.ref >= m) throw InvalidChain("reference outside the chain");
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) {
      idx[i] = world.index_of(ch.positions[i]);
      if (idx[i] < 0) throw InvalidChain(to_string(ch.positions[i]) + " is not occupied");
    }
    where_[c].resize(m);
    for (int i = 0; i < m; ++i) {
      Visit v;
      v.chain = static_cast<int>(c);
      v.pos = i;
      where_[c][i] = {idx[i], static_cast<int>(visits_[idx[i]].size())};
      visits_[idx[i]].push_back(v);
    }
    const int links = ch.closed && m > 1 ? m : m - 1;
    for (int i = 0; i < links; ++i) {
      int j = (i + 1) % m;
      int s = side_towards(ch.positions[i], ch.positions[j]);
      if (s < 0)
        throw InvalidChain(to_string(ch.positions[i]) + " and " + to_string(ch.positions[j]) +
                           " are not adjacent");
      int slot = lane_slot(idx[i], idx[j]);
      auto [ua, va] = where_[c][i];
      auto [ub, vb] = where_[c][j];
      visits_[ua][va].succ_side = s;
      visits_[ua][va].succ_slot = slot;
      visits_[ub][vb].pred_side = mod6(s + 3);
      visits_[ub][vb].pred_slot = slot;
    }
  }
}

std::vector<LocalRun> local_runs(const World& world, int u) {
  int empty = 0;
  for (int s = 0; s < 6; ++s)
    if (world.neighbor(u, s) < 0) empty |= 1 << s;
  if (empty == 0) return {};
  if (empty == 0x3F) return {LocalRun{0x3F, -1, -1}};
  int start = 0;
  while (empty >> start & 1) ++start;
  std::vector<LocalRun> out;
  for (int i = 1; i <= 6; ++i) {
    int s = mod6(start + i);
    if (!(empty >> s & 1) || (empty >> mod6(s - 1) & 1)) continue;
    LocalRun r;
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

int run_turn(const LocalRun& r) {
  if (r.pred < 0) return 6;
  int t = mod6(r.succ - mod6(r.pred + 3));
  return t >= 4 ? t - 6 : t;
}

}  // namespace amoebot
