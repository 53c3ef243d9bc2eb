#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "amoebot/chain.hpp"
#include "amoebot/engine.hpp"
#include "amoebot/types.hpp"

namespace amoebot {

struct Identifier {
  std::vector<uint8_t> bits;  // LSB first, last one is the sign
  long value() const;
};

// Positions held by one visit. Positions are relative: 0..width-1 are the visit's own,
// a port's offset is the neighbouring visit's contact position on the same scale.
// Plain chains use width 1 and offsets -1/+1; stripes use the projection difference.
struct PascPort {
  int8_t side = 0, slot = 0, offset = 0;
};

struct PascVisit {
  std::array<PascPort, 6> ports{};
  uint8_t nports = 0;
  uint8_t width = 1;
  int8_t ref = -1;  // own reference position, if any
  bool report_low = false, report_high = false;  // positions -1 / width lie inside the chain
  uint16_t active = 0xFFFF;  // bit p+1 for position p in [-1, width]
  uint8_t bit0 = 0;
  void add_port(int side, int slot, int offset);
};

namespace pasc_core {
// Visit j of an amoebot owns sets 2j (primary) and 2j+1 (secondary).
void wire(Node& n, const PascVisit& v, int set_x);
void beep_reference(Node& n, const PascVisit& v, int set_x);
bool read(Node& n, PascVisit& v, int set_x);  // false when neither set heard a beep
int bit(const PascVisit& v, int pos);
bool would_passivate(const PascVisit& v);
void advance(PascVisit& v);
bool is_active(const PascVisit& v, int pos);
// k pins per bond side split into wire parity classes: set base + (slot % 2).
void two_global_circuits(Node& n, int base = 0);
void global_circuit(Node& n, int set = 0);
}  // namespace pasc_core

// Runs PASC over any visit layout. An iteration is a reconfiguration round, the
// reference beep round and a passivation round on the global circuit; it stops
// after a silent passivation round or after `limit` iterations.
class PascProgram : public Program {
 public:
  using Observer = std::function<void(int amoebot, int visit, int iteration, const PascVisit&)>;
  PascProgram(const World& world, std::vector<std::vector<PascVisit>> visits, int limit = -1);

  void activate(Node& n) override;
  void commit() override;
  size_t state_bytes(int i) const override;
  std::string phase() const override;

  bool done() const { return phase_ == kDone; }
  int iterations() const { return nonsilent_; }  // iterations with a passivation
  int executed() const { return iteration_; }
  const std::vector<std::vector<PascVisit>>& visits() const { return visits_; }
  void set_observer(Observer f) { observer_ = std::move(f); }
  // second global circuit in the passivation round, for piggybacked broadcasts
  void set_side_channel(std::function<bool(int amoebot, int iteration)> send,
                        std::function<void(int amoebot, int iteration, bool heard)> hear) {
    send_ = std::move(send);
    hear_ = std::move(hear);
  }

 private:
  enum Phase { kConfig, kBeep, kPassivate, kDone };
  const World& world_;
  std::vector<std::vector<PascVisit>> visits_;
  int limit_;
  int phase_ = kConfig, next_ = kConfig;
  int iteration_ = 0, nonsilent_ = 0;
  bool silent_ = false;
  Observer observer_;
  std::function<bool(int, int)> send_;
  std::function<void(int, int, bool)> hear_;
};

// Steps the world until done(); throws RoundBudgetExhausted past max_rounds.
long drive(World& world, Program& program, const std::function<bool()>& done,
           long max_rounds = 1'000'000);

struct PascResult {
  std::vector<Identifier> ids;  // per chain position
  int iterations = 0;
  long rounds = 0;
};

// One beep on the global circuit (two rounds); true if any sender beeped.
bool broadcast(World& world, const std::function<bool(int)>& sender);

int ceil_log2(long m);  // 0 for m <= 1

// PASC visits for the chains of an overlay (width 1, offsets -1/+1, reference per chain).
std::vector<std::vector<PascVisit>> chain_visits(const World& world, const Overlay& ov);

PascResult pasc_run(World& world, const ChainRef& chain);
// Bit j of every position's identifier, recomputed from scratch.
std::vector<uint8_t> pasc_replay(World& world, const ChainRef& chain, int j);
// Position whose identifier equals lambda (relative to the chain reference), or -1.
int locate_position(World& world, const ChainRef& chain, long lambda);
// Marks positions i*k, k = 2^ceil(log lambda), measured from the reference at position 0.
std::vector<uint8_t> block_primitive(World& world, const ChainRef& chain, long lambda);

}  // namespace amoebot
