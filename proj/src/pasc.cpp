#include "amoebot/pasc.hpp"

#include <algorithm>

#include "amoebot/errors.hpp"

namespace amoebot {

long Identifier::value() const {
  long v = 0;
  const size_t L = bits.size();
  for (size_t i = 0; i + 1 < L; ++i) v |= static_cast<long>(bits[i]) << i;
  if (L > 0 && bits[L - 1]) v -= 1L << (L - 1);
  return v;
}

void PascVisit::add_port(int side, int slot, int offset) {
  ports[nports++] = {static_cast<int8_t>(side), static_cast<int8_t>(slot), static_cast<int8_t>(offset)};
  if (offset <= -2) report_low = true;
  if (offset >= width + 1) report_high = true;
}

namespace pasc_core {

namespace {

// parity of active positions in (a, b], a < b
int cross(const PascVisit& v, int a, int b) {
  if (b <= a) return 0;
  uint32_t range = ((1u << (b - a)) - 1u) << (a + 2);
  return __builtin_popcount(v.active & range) & 1;
}

}  // namespace

bool is_active(const PascVisit& v, int pos) { return (v.active >> (pos + 1)) & 1u; }

void wire(Node& n, const PascVisit& v, int set_x) {
  n.use_sets(set_x + 2);
  for (int i = 0; i < v.nports; ++i) {
    const PascPort& p = v.ports[i];
    int wx = 0;
    if (v.width > 0) {
      const int q = p.offset;
      const int pc = q < 0 ? 0 : (q >= v.width ? v.width - 1 : q);
      const int wc = q < pc ? cross(v, q, pc) : 0;
      wx = wc ^ cross(v, 0, pc);
    }
    n.assign(p.side, p.slot + wx, set_x);
    n.assign(p.side, p.slot + 1 - wx, set_x + 1);
  }
}

void beep_reference(Node& n, const PascVisit& v, int set_x) {
  if (v.ref >= 0) n.beep(set_x + cross(v, 0, v.ref));
}

bool read(Node& n, PascVisit& v, int set_x) {
  bool hx = n.received(set_x), hy = n.received(set_x + 1);
  if (!hx && !hy) return false;
  if (hx && hy) throw ProtocolViolation("primary and secondary circuit both carried the beep");
  v.bit0 = hy ? 1 : 0;
  return true;
}

int bit(const PascVisit& v, int pos) {
  if (pos < 0) return v.bit0 ^ (is_active(v, 0) ? 1 : 0);
  return v.bit0 ^ cross(v, 0, pos);
}

bool would_passivate(const PascVisit& v) {
  if (v.width == 0) return false;
  for (int p = -1; p <= v.width; ++p) {
    if (p == v.ref && p >= 0) continue;
    if (!is_active(v, p) || !bit(v, p)) continue;
    if (p >= 0 && p < v.width) return true;
    if (p < 0 && v.report_low) return true;
    if (p == v.width && v.report_high) return true;
  }
  return false;
}

void advance(PascVisit& v) {
  if (v.width == 0) return;
  uint16_t next = v.active;
  for (int p = -1; p <= v.width; ++p)
    if ((p != v.ref || p < 0) && is_active(v, p) && bit(v, p)) next &= ~(1u << (p + 1));
  v.active = next;
}

void two_global_circuits(Node& n, int base) {
  n.clear_pins();
  n.use_sets(base + std::min(2, n.pins()));
  for (int s = 0; s < 6; ++s)
    for (int j = 0; j < n.pins(); ++j) n.assign(s, j, base + j % 2);
}

void global_circuit(Node& n, int set) {
  n.clear_pins();
  n.use_sets(set + 1);
  for (int s = 0; s < 6; ++s)
    for (int j = 0; j < n.pins(); ++j) n.assign(s, j, set);
}

}  // namespace pasc_core

PascProgram::PascProgram(const World& world, std::vector<std::vector<PascVisit>> visits, int limit)
    : world_(world), visits_(std::move(visits)), limit_(limit) {}

void PascProgram::activate(Node& n) {
  auto& vs = visits_[n.id()];
  switch (phase_) {
    case kConfig: {
      if (iteration_ > 0) {
        silent_ = !n.received(0);
        if (hear_) hear_(n.id(), iteration_ - 1, n.received(1));
        if (silent_ || (limit_ >= 0 && iteration_ >= limit_)) {
          next_ = kDone;
          return;
        }
      }
      n.clear_pins();
      for (size_t j = 0; j < vs.size(); ++j) pasc_core::wire(n, vs[j], 2 * static_cast<int>(j));
      next_ = kBeep;
      break;
    }
    case kBeep:
      for (size_t j = 0; j < vs.size(); ++j) pasc_core::beep_reference(n, vs[j], 2 * static_cast<int>(j));
      next_ = kPassivate;
      break;
    case kPassivate: {
      bool report = false;
      for (size_t j = 0; j < vs.size(); ++j) {
        PascVisit& v = vs[j];
        if (!pasc_core::read(n, v, 2 * static_cast<int>(j)) && v.width > 0)
          throw ProtocolViolation("visit at " + to_string(n.coord()) + " is cut off from its reference");
        if (observer_) observer_(n.id(), static_cast<int>(j), iteration_, v);
        report |= pasc_core::would_passivate(v);
        pasc_core::advance(v);
      }
      pasc_core::two_global_circuits(n);
      if (report) n.beep(0);
      if (send_ && send_(n.id(), iteration_)) n.beep(1);
      next_ = kConfig;
      break;
    }
    default:
      break;
  }
}

void PascProgram::commit() {
  if (phase_ == kConfig && iteration_ > 0 && !silent_) nonsilent_ = iteration_;
  if (phase_ == kPassivate) ++iteration_;
  phase_ = next_;
}

size_t PascProgram::state_bytes(int i) const {
  return visits_[i].size() * sizeof(PascVisit) + sizeof(int) * 4;
}

std::string PascProgram::phase() const {
  static const char* names[] = {"pasc:config", "pasc:beep", "pasc:passivate", "pasc:done"};
  return names[phase_];
}

long drive(World& world, Program& program, const std::function<bool()>& done, long max_rounds) {
  long t = 0;
  while (!done()) {
    if (t == max_rounds) throw RoundBudgetExhausted("program still running after " + std::to_string(t) + " rounds");
    world.step(program);
    ++t;
  }
  return t;
}

namespace {

class BroadcastProgram : public Program {
 public:
  explicit BroadcastProgram(std::function<bool(int)> sender) : sender_(std::move(sender)) {}
  void activate(Node& n) override {
    if (round_ == 0) {
      pasc_core::global_circuit(n);
      if (sender_(n.id())) n.beep(0);
    } else if (n.received(0)) {
      heard_ = true;
    }
  }
  void commit() override { ++round_; }
  std::string phase() const override { return "broadcast"; }
  int round_ = 0;
  bool heard_ = false;

 private:
  std::function<bool(int)> sender_;
};

}  // namespace

bool broadcast(World& world, const std::function<bool(int)>& sender) {
  BroadcastProgram prog(sender);
  drive(world, prog, [&] { return prog.round_ == 2; });
  return prog.heard_;
}

int ceil_log2(long m) {
  int k = 0;
  while ((1L << k) < m) ++k;
  return k;
}

std::vector<std::vector<PascVisit>> chain_visits(const World& world, const Overlay& ov) {
  std::vector<std::vector<PascVisit>> out(world.size());
  for (int u = 0; u < world.size(); ++u)
    for (const Visit& v : ov.at(u)) {
      const ChainRef& ch = ov.chains()[v.chain];
      if (ch.closed) throw InvalidChain("PASC needs an open chain");
      PascVisit pv;
      if (v.pred_side >= 0) pv.add_port(v.pred_side, v.pred_slot, -1);
      if (v.succ_side >= 0) pv.add_port(v.succ_side, v.succ_slot, 1);
      if (v.pos == ch.ref) pv.ref = 0;
      out[u].push_back(pv);
    }
  return out;
}

namespace {

Overlay pasc_overlay(const World& world, const ChainRef& chain) {
  Overlay ov(world, {chain});
  if (ov.wires() < 2) throw InvalidPinCount("PASC needs two pins per link");
  return ov;
}

}  // namespace

PascResult pasc_run(World& world, const ChainRef& chain) {
  Overlay ov = pasc_overlay(world, chain);
  PascProgram prog(world, chain_visits(world, ov));
  PascResult res;
  res.ids.resize(chain.size());
  prog.set_observer([&](int u, int j, int, const PascVisit& v) {
    res.ids[ov.at(u)[j].pos].bits.push_back(v.bit0);
  });
  res.rounds = drive(world, prog, [&] { return prog.done(); });
  res.iterations = prog.iterations();
  return res;
}

std::vector<uint8_t> pasc_replay(World& world, const ChainRef& chain, int j) {
  const int k = ceil_log2(chain.size());
  if (j < 0 || j >= k)
    throw BitIndexOutOfRange("bit " + std::to_string(j) + " of a " + std::to_string(k) + "-bit identifier");
  Overlay ov = pasc_overlay(world, chain);
  PascProgram prog(world, chain_visits(world, ov), j + 1);
  std::vector<uint8_t> out(chain.size(), 0);
  // a chain that terminates early keeps repeating its sign bit
  prog.set_observer([&](int u, int v, int, const PascVisit& pv) { out[ov.at(u)[v].pos] = pv.bit0; });
  drive(world, prog, [&] { return prog.done(); });
  return out;
}

int locate_position(World& world, const ChainRef& chain, long lambda) {
  Overlay ov = pasc_overlay(world, chain);
  PascProgram prog(world, chain_visits(world, ov));
  std::vector<std::vector<uint8_t>> same(world.size());
  for (int u = 0; u < world.size(); ++u) same[u].assign(ov.at(u).size(), 1);
  auto [ref_amoebot, ref_visit] = ov.locate(0, chain.ref);
  (void)ref_visit;
  prog.set_side_channel(
      [&](int u, int it) { return u == ref_amoebot && it < 63 && ((lambda >> it) & 1); },
      [&](int u, int, bool heard) {
        for (size_t j = 0; j < same[u].size(); ++j)
          if (prog.visits()[u][j].bit0 != (heard ? 1 : 0)) same[u][j] = 0;
      });
  drive(world, prog, [&] { return prog.done(); });
  // bits of lambda above the identifier length rule out every position
  const int len = prog.executed();
  if (len < 63 && (lambda >> len) != 0) {
    if (broadcast(world, [&](int u) { return u == ref_amoebot; }))
      for (auto& row : same) std::fill(row.begin(), row.end(), 0);
  }
  int found = -1;
  for (int u = 0; u < world.size(); ++u)
    for (size_t j = 0; j < same[u].size(); ++j)
      if (same[u][j]) found = ov.at(u)[j].pos;
  return found;
}

namespace {

// PASC with the split step: active visits cut the circuit they heard on into
// singletons, the reference beeps on it and the marker tells whether it was reached.
class BlockProgram : public Program {
 public:
  BlockProgram(const World& w, std::vector<std::vector<PascVisit>> vs, std::vector<std::vector<uint8_t>> marker)
      : world_(w), visits_(std::move(vs)), marker_(std::move(marker)) {
    prev_.resize(visits_.size());
    heard_set_.resize(visits_.size());
    for (size_t u = 0; u < visits_.size(); ++u) {
      prev_[u].assign(visits_[u].size(), 0);
      heard_set_[u].assign(visits_[u].size(), 0);
    }
  }
  bool done() const { return phase_ == kDone; }
  const std::vector<std::vector<PascVisit>>& visits() const { return visits_; }
  std::string phase() const override { return "block"; }
  size_t state_bytes(int i) const override { return visits_[i].size() * (sizeof(PascVisit) + 3); }

  void activate(Node& n) override {
    const int u = n.id();
    auto& vs = visits_[u];
    switch (phase_) {
      case kConfig:
        if (started_) {
          if (n.received(0)) {
            for (size_t j = 0; j < vs.size(); ++j) vs[j].active = prev_[u][j];
            next_ = kDone;
            return;
          }
          if (!n.received(1)) {
            next_ = kDone;
            return;
          }
        }
        n.clear_pins();
        for (size_t j = 0; j < vs.size(); ++j) pasc_core::wire(n, vs[j], 4 * static_cast<int>(j));
        next_ = kBeep;
        break;
      case kBeep:
        for (size_t j = 0; j < vs.size(); ++j) pasc_core::beep_reference(n, vs[j], 4 * static_cast<int>(j));
        next_ = kSplit;
        break;
      case kSplit: {
        n.clear_pins();
        for (size_t j = 0; j < vs.size(); ++j) {
          PascVisit& v = vs[j];
          const int x = 4 * static_cast<int>(j);
          if (!pasc_core::read(n, v, x)) throw ProtocolViolation("visit cut off from its reference");
          const int q = x + v.bit0;  // the set that heard the reference
          heard_set_[u][j] = static_cast<uint8_t>(v.bit0);
          pasc_core::wire(n, v, x);
          n.use_sets(x + 4);
          if (v.ref < 0 && pasc_core::is_active(v, 0)) {
            for (int i = 0; i < v.nports; ++i) {
              const PascPort& p = v.ports[i];
              for (int w = 0; w < 2; ++w)
                if (n.set_of(p.side, p.slot + w) == q) n.assign(p.side, p.slot + w, x + 2 + i);
            }
          }
          if (v.ref >= 0) n.beep(q);
        }
        next_ = kReport;
        break;
      }
      case kReport: {
        bool stop = false, report = false;
        for (size_t j = 0; j < vs.size(); ++j) {
          const int x = 4 * static_cast<int>(j);
          bool heard = false;
          for (int s = 0; s < 4; ++s) heard |= n.received(x + s);
          if (marker_[u][j] && heard) stop = true;
          prev_[u][j] = vs[j].active;
          report |= pasc_core::would_passivate(vs[j]);
          pasc_core::advance(vs[j]);
        }
        pasc_core::two_global_circuits(n);
        if (stop) n.beep(0);
        if (report) n.beep(1);
        next_ = kConfig;
        break;
      }
      default:
        break;
    }
  }
  void commit() override {
    if (phase_ == kReport) started_ = true;
    phase_ = next_;
  }

 private:
  enum Phase { kConfig, kBeep, kSplit, kReport, kDone };
  const World& world_;
  std::vector<std::vector<PascVisit>> visits_;
  std::vector<std::vector<uint8_t>> marker_;
  std::vector<std::vector<uint16_t>> prev_;
  std::vector<std::vector<uint8_t>> heard_set_;
  int phase_ = kConfig, next_ = kConfig;
  bool started_ = false;
};

}  // namespace

std::vector<uint8_t> block_primitive(World& world, const ChainRef& chain, long lambda) {
  if (lambda < 1) throw InvalidArgument("lambda must be at least 1");
  if (lambda > chain.size())
    throw LambdaExceedsChain("lambda " + std::to_string(lambda) + " on a chain of " +
                             std::to_string(chain.size()));
  if (chain.ref != 0) throw InvalidChain("block primitive counts from the chain head");
  const int at = locate_position(world, chain, lambda);
  Overlay ov = pasc_overlay(world, chain);
  std::vector<std::vector<uint8_t>> marker(world.size());
  for (int u = 0; u < world.size(); ++u) {
    marker[u].assign(ov.at(u).size(), 0);
    for (size_t j = 0; j < ov.at(u).size(); ++j) marker[u][j] = ov.at(u)[j].pos == at;
  }
  BlockProgram prog(world, chain_visits(world, ov), std::move(marker));
  drive(world, prog, [&] { return prog.done(); });
  std::vector<uint8_t> marks(chain.size(), 0);
  for (int u = 0; u < world.size(); ++u)
    for (size_t j = 0; j < ov.at(u).size(); ++j)
      marks[ov.at(u)[j].pos] = pasc_core::is_active(prog.visits()[u][j], 0);
  return marks;
}

}  // namespace amoebot
