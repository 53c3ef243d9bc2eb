#include "amoebot/primitives.hpp"

#include <algorithm>
#include <map>

#include "amoebot/errors.hpp"
#include "amoebot/pasc.hpp"

namespace amoebot {

namespace {

int mod(int a, int k) { return ((a % k) + k) % k; }

}  // namespace

namespace {

class OneShot : public Program {
 public:
  explicit OneShot(std::function<void(Node&, int)> f) : f_(std::move(f)) {}
  void activate(Node& n) override { f_(n, round_); }
  void commit() override { ++round_; }
  int round_ = 0;

 private:
  std::function<void(Node&, int)> f_;
};

}  // namespace

void run_rounds(World& world, int rounds, std::function<void(Node&, int)> f) {
  OneShot p(std::move(f));
  drive(world, p, [&] { return p.round_ == rounds; });
}

int global_circuit(World& world) {
  run_rounds(world, 1, [](Node& n, int) { pasc_core::global_circuit(n); });
  return world.circuits().circuits;
}

// two silent phases per bit of n: a tie survives with probability 16^-confirm
int default_confirm(int n) { return std::max(2, 2 * ceil_log2(n)); }

namespace {

class ElectionProgram : public Program {
 public:
  ElectionProgram(const World& w, std::function<void(Node&)> configure, const std::vector<Candidate>& cands,
                  int confirm, int bits)
      : configure_(std::move(configure)), cands_(cands), confirm_(confirm), bits_(bits) {
    mine_.resize(w.size());
    for (size_t c = 0; c < cands.size(); ++c) mine_[cands[c].amoebot].push_back(static_cast<int>(c));
    st_.resize(cands.size());
  }

  void activate(Node& n) override {
    const auto& mine = mine_[n.id()];
    if (t_ == 0) {
      if (phase_ > 0 && !n.received(0)) {
        finishing_ = true;
        return;
      }
      n.clear_pins();
      configure_(n);
      for (int c : mine) {
        St& s = st_[c];
        s.withdrew = false;
        if (s.done || !s.alive) continue;
        s.draw = static_cast<uint32_t>(n.rng()() & ((1u << bits_) - 1));
        if (bit(s, 0)) n.beep(cands_[c].set);
      }
    } else if (t_ <= bits_) {
      for (int c : mine) {
        St& s = st_[c];
        if (s.done || !s.alive) continue;
        if (n.received(cands_[c].set) && !bit(s, t_ - 1)) {
          s.alive = false;
          s.withdrew = true;
        } else if (t_ < bits_ && bit(s, t_)) {
          n.beep(cands_[c].set);
        }
      }
      if (t_ == bits_)
        for (int c : mine)
          if (st_[c].withdrew) n.beep(cands_[c].set);
    } else {
      bool open = false;
      for (int c : mine) {
        St& s = st_[c];
        if (s.done) continue;
        s.quiet = n.received(cands_[c].set) ? 0 : s.quiet + 1;
        if (s.quiet >= confirm_) s.done = true;
        open |= !s.done;
      }
      pasc_core::global_circuit(n);
      if (open) n.beep(0);
    }
  }

  void commit() override {
    if (finishing_) {
      finished_ = true;
      return;
    }
    if (++t_ == bits_ + 2) {
      t_ = 0;
      ++phase_;
      int alive = 0;
      for (auto& s : st_) alive += s.alive;
      alive_after_.push_back(alive);
    }
  }

  size_t state_bytes(int i) const override { return mine_[i].size() * sizeof(St) + 2 * sizeof(int); }
  std::string phase() const override { return "election(budget " + std::to_string(confirm_) + ")"; }

  bool finished_ = false;
  int phase_ = 0;
  std::vector<int> alive_after_;
  struct St {
    bool alive = true, withdrew = false, done = false;
    int quiet = 0;
    uint32_t draw = 0;
  };
  std::vector<St> st_;

 private:
  bool bit(const St& s, int i) const { return (s.draw >> (bits_ - 1 - i)) & 1u; }
  std::function<void(Node&)> configure_;
  std::vector<Candidate> cands_;
  std::vector<std::vector<int>> mine_;
  int confirm_, bits_;
  int t_ = 0;
  bool finishing_ = false;
};

}  // namespace

ElectionResult leader_election(World& world, const std::function<void(Node&)>& configure,
                               const std::vector<Candidate>& candidates, int confirm, int bits) {
  if (candidates.empty()) throw EmptyCandidateSet("no candidates");
  if (confirm < 1) throw InvalidArgument("phase budget must be positive");
  if (bits < 1 || bits > 16) throw InvalidArgument("race bits out of range");
  ElectionProgram prog(world, configure, candidates, confirm, bits);
  ElectionResult res;
  res.rounds = drive(world, prog, [&] { return prog.finished_; });
  res.phases = prog.phase_;
  res.alive_after = prog.alive_after_;
  for (auto& s : prog.st_) res.leader.push_back(s.alive);
  return res;
}

ElectionResult elect_global(World& world, const std::vector<uint8_t>& candidate, int confirm) {
  std::vector<Candidate> cands;
  for (int u = 0; u < world.size(); ++u)
    if (candidate[u]) cands.push_back({u, 0});
  return leader_election(
      world, [](Node& n) { pasc_core::global_circuit(n); }, cands, confirm);
}

void chain_bus(Node& n, const Overlay& ov) {
  const auto& vs = ov.at(n.id());
  n.use_sets(static_cast<int>(vs.size()));
  for (size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].pred_side >= 0) n.assign(vs[j].pred_side, vs[j].pred_slot, static_cast<int>(j));
    if (vs[j].succ_side >= 0) n.assign(vs[j].succ_side, vs[j].succ_slot, static_cast<int>(j));
  }
}

ElectionResult elect_per_chain(World& world, const Overlay& ov, int confirm) {
  std::vector<Candidate> cands;
  for (int u = 0; u < world.size(); ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j) cands.push_back({u, static_cast<int>(j)});
  return leader_election(
      world, [&](Node& n) { chain_bus(n, ov); }, cands, confirm);
}

std::vector<std::vector<uint8_t>> find_tails(World& world, const Overlay& ov) {
  std::vector<std::vector<uint8_t>> tail(world.size());
  run_rounds(world, 2, [&](Node& n, int r) {
    const auto& vs = ov.at(n.id());
    const int V = static_cast<int>(vs.size());
    if (r == 0) {
      n.clear_pins();
      n.use_sets(2 * V);
      for (int j = 0; j < V; ++j) {
        if (vs[j].pred_side >= 0) n.assign(vs[j].pred_side, vs[j].pred_slot, 2 * j);
        if (vs[j].succ_side >= 0) n.assign(vs[j].succ_side, vs[j].succ_slot, 2 * j + 1);
        const ChainRef& ch = ov.chains()[vs[j].chain];
        if (ch.closed && vs[j].pos == ch.ref && vs[j].pred_side >= 0) n.beep(2 * j);
      }
      return;
    }
    auto& t = tail[n.id()];
    t.assign(V, 0);
    for (int j = 0; j < V; ++j) {
      const ChainRef& ch = ov.chains()[vs[j].chain];
      if (vs[j].succ_side < 0)
        t[j] = 1;  // open end, or a lone amoebot
      else if (ch.closed)
        t[j] = n.received(2 * j + 1);
    }
  });
  return tail;
}

std::vector<std::vector<int>> chain_broadcast(World& world, const Overlay& ov,
                                              const std::vector<std::vector<uint8_t>>& sender,
                                              const std::vector<std::vector<int>>& value, int bits) {
  std::vector<std::vector<int>> got(world.size());
  for (int u = 0; u < world.size(); ++u) got[u].assign(ov.at(u).size(), 0);
  if (bits == 0) return got;
  run_rounds(world, bits + 1, [&](Node& n, int r) {
    const int u = n.id();
    const int V = static_cast<int>(ov.at(u).size());
    if (r == 0) {
      n.clear_pins();
      chain_bus(n, ov);
    } else {
      for (int j = 0; j < V; ++j)
        if (n.received(j)) got[u][j] |= 1 << (r - 1);
    }
    if (r < bits)
      for (int j = 0; j < V; ++j)
        if (sender[u][j] && (value[u][j] >> r & 1)) n.beep(j);
  });
  return got;
}

std::vector<int> chain_sums_mod_k(World& world, const Overlay& ov,
                                  const std::vector<std::vector<int>>& values, int k) {
  if (k < 1 || k > 12) throw InvalidArgument("k must be in 1..12");
  if (ov.wires() < 2) throw InvalidPinCount("chain sum needs two pins per link");
  for (const ChainRef& ch : ov.chains())
    if (!ch.closed && ch.ref != 0) throw InvalidChain("open chains are summed from their head");
  auto tails = find_tails(world, ov);
  const int n = world.size();
  std::vector<std::vector<PascVisit>> visits(n);
  for (int u = 0; u < n; ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j) {
      const Visit& v = ov.at(u)[j];
      const int x = values[u][j];
      if (x < 0 || x >= k) throw InvalidArgument("value outside 0..k-1");
      const bool head = v.pos == ov.chains()[v.chain].ref;
      const bool tail = tails[u][j];
      // the head carries an extra reference position and the tail one extra
      // position past the sum, so the tail's last identifier is sum + 1
      PascVisit pv;
      pv.width = static_cast<uint8_t>(x + head + tail);
      if (head) pv.ref = 0;
      if (!head && v.pred_side >= 0) pv.add_port(v.pred_side, v.pred_slot, -1);
      if (!tail && v.succ_side >= 0) pv.add_port(v.succ_side, v.succ_slot, pv.width);
      visits[u].push_back(pv);
    }
  PascProgram prog(world, std::move(visits));
  std::vector<std::vector<int>> acc(n), pw(n);
  for (int u = 0; u < n; ++u) {
    acc[u].assign(ov.at(u).size(), 0);
    pw[u].assign(ov.at(u).size(), 1 % k);
  }
  prog.set_observer([&](int u, int j, int, const PascVisit& v) {
    if (!tails[u][j]) return;
    acc[u][j] = (acc[u][j] + pasc_core::bit(v, v.width - 1) * pw[u][j]) % k;
    pw[u][j] = pw[u][j] * 2 % k;
  });
  drive(world, prog, [&] { return prog.done(); });
  for (int u = 0; u < n; ++u)
    for (auto& a : acc[u]) a = mod(a - 1, k);
  const int bits = ceil_log2(k);
  auto got = chain_broadcast(world, ov, tails, acc, bits);
  std::vector<int> out(ov.chains().size(), -1);
  for (int u = 0; u < n; ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j) {
      int c = ov.at(u)[j].chain;
      if (out[c] >= 0 && out[c] != got[u][j]) throw ProtocolViolation("chain members disagree on the sum");
      out[c] = got[u][j];
    }
  return out;
}

int chain_sum_mod_k(World& world, const ChainRef& chain, const std::vector<int>& values, int k) {
  Overlay ov(world, {chain});
  std::vector<std::vector<int>> vals(world.size());
  for (int u = 0; u < world.size(); ++u)
    for (const Visit& v : ov.at(u)) vals[u].push_back(values.at(v.pos));
  return chain_sums_mod_k(world, ov, vals, k)[0];
}

std::vector<Occurrence> BoundarySet::occurrences() const {
  std::vector<Occurrence> out;
  const int m = cycle.size();
  for (int i = 0; i < m; ++i) {
    Occurrence o;
    o.node = cycle.positions[i];
    if (m > 1) {
      o.pred = cycle.positions[(i + m - 1) % m];
      o.succ = cycle.positions[(i + 1) % m];
    }
    out.push_back(o);
  }
  return out;
}

std::vector<BoundarySet> detect_boundaries(const World& world) {
  const int n = world.size();
  std::vector<std::vector<LocalRun>> runs(n);
  for (int u = 0; u < n; ++u) runs[u] = local_runs(world, u);
  std::vector<std::vector<uint8_t>> seen(n);
  for (int u = 0; u < n; ++u) seen[u].assign(runs[u].size(), 0);
  std::vector<BoundarySet> out;
  for (int u0 = 0; u0 < n; ++u0)
    for (size_t r0 = 0; r0 < runs[u0].size(); ++r0) {
      if (seen[u0][r0]) continue;
      BoundarySet b;
      b.cycle.closed = true;
      int u = u0, r = static_cast<int>(r0);
      while (!seen[u][r]) {
        seen[u][r] = 1;
        const LocalRun& run = runs[u][r];
        b.cycle.positions.push_back(world.coord(u));
        b.turns.push_back(run_turn(run));
        b.runs.push_back(run.mask);
        if (run.succ < 0) break;
        const int v = world.neighbor(u, run.succ);
        const int back = (run.succ + 3) % 6;
        int next = -1;
        for (size_t q = 0; q < runs[v].size(); ++q)
          if (runs[v][q].pred == back) next = static_cast<int>(q);
        if (next < 0) throw ProtocolViolation("boundary successor has no matching run");
        u = v;
        r = next;
      }
      // start at the smallest occurrence
      auto occ = b.occurrences();
      const int start = static_cast<int>(std::min_element(occ.begin(), occ.end()) - occ.begin());
      std::rotate(b.cycle.positions.begin(), b.cycle.positions.begin() + start, b.cycle.positions.end());
      std::rotate(b.turns.begin(), b.turns.begin() + start, b.turns.end());
      std::rotate(b.runs.begin(), b.runs.begin() + start, b.runs.end());
      out.push_back(std::move(b));
    }
  std::sort(out.begin(), out.end(), [](const BoundarySet& a, const BoundarySet& b) {
    return a.occurrences().front() < b.occurrences().front();
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].region_id = static_cast<int>(i);
  return out;
}

Classification classify_boundaries(World& world, std::vector<BoundarySet>& sets, int confirm) {
  Classification res;
  const long start = world.round();
  std::vector<ChainRef> chains;
  for (auto& b : sets) chains.push_back(b.cycle);
  Overlay ov(world, chains);
  ElectionResult el = elect_per_chain(world, ov, confirm);
  res.leaders.assign(sets.size(), -1);
  size_t idx = 0;
  for (int u = 0; u < world.size(); ++u)
    for (const Visit& v : ov.at(u))
      if (el.leader[idx++]) {
        if (res.leaders[v.chain] >= 0) throw ProtocolViolation("two leaders on one boundary");
        res.leaders[v.chain] = v.pos;
      }
  for (size_t c = 0; c < sets.size(); ++c) {
    if (res.leaders[c] < 0) throw ProtocolViolation("boundary without a leader");
    chains[c].ref = res.leaders[c];
  }
  Overlay cut(world, chains);
  std::vector<std::vector<int>> vals(world.size());
  for (int u = 0; u < world.size(); ++u)
    for (const Visit& v : cut.at(u)) vals[u].push_back(mod(sets[v.chain].turns[v.pos], 5));
  auto sums = chain_sums_mod_k(world, cut, vals, 5);
  for (size_t c = 0; c < sets.size(); ++c) {
    BoundaryKind k = sums[c] == 1 ? BoundaryKind::Outer : sums[c] == 4 ? BoundaryKind::Inner : BoundaryKind::Unknown;
    if (k == BoundaryKind::Unknown)
      throw ProtocolViolation("turn sum " + std::to_string(sums[c]) + " mod 5 on a boundary");
    sets[c].kind = k;
    sets[c].cycle.ref = res.leaders[c];
    res.kinds.push_back(k);
  }
  res.rounds = world.round() - start;
  return res;
}

BoundaryKind classify_boundary(World& world, BoundarySet& b, int confirm) {
  std::vector<BoundarySet> one{b};
  classify_boundaries(world, one, confirm);
  b = one[0];
  return b.kind;
}

namespace {

class SyncProgram : public Program {
 public:
  SyncProgram(const World& w, const std::function<bool(Node&, long)>& work)
      : work_(work), open_(w.size(), 0) {}
  void activate(Node& n) override {
    if (!global_) {
      if (work_round_ > 0 && !n.received(0)) {
        finishing_ = true;
        return;
      }
      open_[n.id()] = work_(n, work_round_);
    } else {
      pasc_core::global_circuit(n);
      if (open_[n.id()]) n.beep(0);
    }
  }
  void commit() override {
    if (finishing_) {
      done_ = true;
      return;
    }
    if (!global_) ++work_round_;
    global_ = !global_;
  }
  std::string phase() const override { return global_ ? "sync" : "work"; }
  size_t state_bytes(int) const override { return 1; }
  bool done_ = false;
  long work_round_ = 0;

 private:
  const std::function<bool(Node&, long)>& work_;
  std::vector<uint8_t> open_;
  bool global_ = false, finishing_ = false;
};

}  // namespace

SyncResult synchronize(World& world, const std::function<bool(Node&, long)>& work, long max_rounds) {
  SyncProgram prog(world, work);
  SyncResult res;
  res.rounds = drive(world, prog, [&] { return prog.done_; }, max_rounds);
  res.work_rounds = prog.work_round_;
  return res;
}

}  // namespace amoebot
