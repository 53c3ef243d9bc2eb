#include "amoebot/engine.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "amoebot/errors.hpp"

namespace amoebot {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int find(std::vector<int>& uf, int x) {
  while (uf[x] != x) {
    uf[x] = uf[uf[x]];
    x = uf[x];
  }
  return x;
}

// root is always the smallest member, which doubles as the circuit id
void unite(std::vector<int>& uf, int a, int b) {
  a = find(uf, a);
  b = find(uf, b);
  if (a == b) return;
  if (a < b)
    uf[b] = a;
  else
    uf[a] = b;
}

}  // namespace

GridCoord Node::coord() const { return world_->coord(id_); }
int Node::neighbor(int side) const { return world_->neighbor(id_, side); }
int Node::pins() const { return world_->pins(); }
int Node::previous_sets() const { return world_->sets_[id_]; }
std::mt19937_64& Node::rng() { return world_->rngs_[id_]; }

void Node::clear_pins() {
  const int k = world_->pins_;
  std::fill_n(world_->next_pinmap_.begin() + 6 * id_ * k, 6 * k, int8_t{-1});
  world_->next_sets_[id_] = 0;
}

void Node::assign(int side, int slot, int set) {
  if (set < 0 || set >= kMaxSets) throw ProtocolViolation("partition set index out of range");
  if (slot < 0 || slot >= world_->pins_) throw ProtocolViolation("pin slot beyond pin budget");
  if (world_->neighbor(id_, side) < 0) return;  // no bond, no pin
  const int k = world_->pins_;
  world_->next_pinmap_[(6 * id_ + side) * k + slot] = static_cast<int8_t>(set);
  world_->next_sets_[id_] = std::max(world_->next_sets_[id_], set + 1);
}

void Node::use_sets(int count) {
  if (count > kMaxSets) throw ProtocolViolation("too many partition sets");
  world_->next_sets_[id_] = std::max(world_->next_sets_[id_], count);
}

int Node::set_of(int side, int slot) const {
  return world_->pin_at(world_->next_pinmap_, id_, side, slot);
}

void Node::beep(int set) {
  if (set < 0 || set >= world_->next_sets_[id_])
    throw ProtocolViolation("beep on a partition set that does not exist");
  world_->beeps_[id_] |= uint64_t{1} << set;
}

World World::load(std::vector<GridCoord> coords, int pins, uint64_t seed) {
  if (pins < 1 || pins > kMaxPins)
    throw InvalidPinCount("k=" + std::to_string(pins) + " outside 1.." + std::to_string(kMaxPins));
  if (coords.empty()) throw InvalidArgument("empty structure");
  std::sort(coords.begin(), coords.end());
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i] == coords[i - 1]) throw DuplicateNode(to_string(coords[i]));

  World w;
  w.coords_ = std::move(coords);
  w.pins_ = pins;
  w.seed_ = seed;
  const int n = w.size();
  w.index_.reserve(n * 2);
  for (int i = 0; i < n; ++i) w.index_.emplace(w.coords_[i], i);
  w.nbr_.assign(6 * n, -1);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < 6; ++s) {
      int j = w.index_of(neighbor_side(w.coords_[i], s));
      w.nbr_[6 * i + s] = j;
      if (j > i) w.bonds_.push_back({i, j, s});
    }

  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int s = 0; s < 6; ++s) {
      int v = w.nbr_[6 * u + s];
      if (v >= 0 && !seen[v]) {
        seen[v] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  if (reached != n)
    throw DisconnectedStructure(std::to_string(n - reached) + " of " + std::to_string(n) +
                                " amoebots unreachable");

  w.rngs_.reserve(n);
  for (auto c : w.coords_) {
    uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(c.q)) << 32) |
                   static_cast<uint32_t>(c.r);
    w.rngs_.emplace_back(splitmix64(seed ^ splitmix64(key)));
  }
  w.order_.resize(n);
  std::iota(w.order_.begin(), w.order_.end(), 0);
  w.pinmap_.assign(6 * n * pins, -1);
  w.next_pinmap_ = w.pinmap_;
  w.sets_.assign(n, 0);
  w.next_sets_ = w.sets_;
  w.beeps_.assign(n, 0);
  w.flags_.assign(n, 0);
  w.rebuild_circuits();
  return w;
}

int World::index_of(GridCoord c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

void World::shuffle_activation(uint64_t seed) {
  std::mt19937_64 g(seed);
  std::shuffle(order_.begin(), order_.end(), g);
}

namespace {

void build(const World& w, const std::vector<int8_t>& pinmap, const std::vector<int>& sets,
           CircuitGraph& g, std::vector<int>& uf) {
  const int n = w.size();
  const int k = w.pins();
  g.offset.resize(n + 1);
  g.offset[0] = 0;
  for (int i = 0; i < n; ++i) g.offset[i + 1] = g.offset[i] + sets[i];
  const int total = g.offset[n];
  uf.resize(total);
  std::iota(uf.begin(), uf.end(), 0);
  for (int u = 0; u < n; ++u)
    for (int s = 0; s < 3; ++s) {  // each bond once, from the side 0..2 endpoint
      int v = w.neighbor(u, s);
      if (v < 0) continue;
      const int8_t* pu = &pinmap[(6 * u + s) * k];
      const int8_t* pv = &pinmap[(6 * v + s + 3) * k];
      for (int j = 0; j < k; ++j)
        if (pu[j] >= 0 && pv[j] >= 0) unite(uf, g.offset[u] + pu[j], g.offset[v] + pv[j]);
    }
  g.component.resize(total);
  g.circuits = 0;
  for (int x = 0; x < total; ++x) {
    g.component[x] = find(uf, x);
    if (g.component[x] == x) ++g.circuits;
  }
  g.beeped.assign(total, 0);
}

}  // namespace

CircuitGraph compute_circuits(const World& world) {
  CircuitGraph g;
  std::vector<int> uf;
  build(world, world.pinmap_, world.sets_, g, uf);
  return g;
}

void World::rebuild_circuits() {
  build(*this, pinmap_, sets_, graph_, uf_);
  const int n = size();
  for (int i = 0; i < n; ++i) {
    uint64_t b = beeps_[i];
    while (b) {
      int s = __builtin_ctzll(b);
      b &= b - 1;
      graph_.beeped[graph_.component[graph_.offset[i] + s]] = 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    uint64_t f = 0;
    for (int s = 0; s < sets_[i]; ++s)
      if (graph_.beeped[graph_.component[graph_.offset[i] + s]]) f |= uint64_t{1} << s;
    flags_[i] = f;
  }
}

RoundReport World::step(Program& program) {
  if (round_budget_ && round_ >= *round_budget_)
    throw RoundBudgetExhausted("round budget of " + std::to_string(*round_budget_) + " spent");
  next_pinmap_ = pinmap_;
  next_sets_ = sets_;
  std::fill(beeps_.begin(), beeps_.end(), 0);
  for (int i : order_) {
    Node node(this, i, flags_[i]);
    program.activate(node);
  }
  program.commit();
  if (state_budget_)
    for (int i = 0; i < size(); ++i)
      if (program.state_bytes(i) > *state_budget_)
        throw StateBudgetExceeded("amoebot " + to_string(coords_[i]) + " holds " +
                                  std::to_string(program.state_bytes(i)) + " bytes");
  pinmap_.swap(next_pinmap_);
  sets_.swap(next_sets_);
  rebuild_circuits();

  RoundReport rep;
  rep.round = round_;
  rep.circuits = graph_.circuits;
  const int total = graph_.offset.back();
  for (int x = 0; x < total; ++x)
    if (graph_.component[x] == x && graph_.beeped[x]) ++rep.beeping;

  if (trace_) {
    std::string bits;
    bits.reserve(graph_.circuits);
    for (int x = 0; x < total; ++x)
      if (graph_.component[x] == x) bits.push_back(graph_.beeped[x] ? '1' : '0');
    *trace_ << "{\"round\":" << round_;
    std::string ph = program.phase();
    if (!ph.empty()) *trace_ << ",\"phase\":\"" << ph << "\"";
    *trace_ << ",\"beeps\":\"" << bits << "\"}\n";
  }
  ++round_;
  return rep;
}

void World::idle(long rounds, const std::string& phase) {
  for (long t = 0; t < rounds; ++t) {
    if (round_budget_ && round_ >= *round_budget_)
      throw RoundBudgetExhausted("round budget of " + std::to_string(*round_budget_) + " spent");
    std::fill(flags_.begin(), flags_.end(), 0);
    if (trace_)
      *trace_ << "{\"round\":" << round_ << ",\"phase\":\"" << phase << "\",\"beeps\":\""
              << std::string(graph_.circuits, '0') << "\"}\n";
    ++round_;
  }
}

std::vector<RoundReport> run_until(World& world, Program& program,
                                   const std::function<bool()>& pred, long max_rounds) {
  if (max_rounds <= 0) throw InvalidArgument("max_rounds must be positive");
  std::vector<RoundReport> out;
  for (long t = 0; t < max_rounds; ++t) {
    if (pred()) return out;
    out.push_back(world.step(program));
  }
  if (pred()) return out;
  throw RoundBudgetExhausted("predicate still false after " + std::to_string(max_rounds) +
                             " rounds");
}

}  // namespace amoebot
