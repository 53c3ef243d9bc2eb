#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "amoebot/chain.hpp"
#include "amoebot/engine.hpp"
#include "amoebot/types.hpp"

namespace amoebot {

// Runs f on every amoebot for a fixed number of rounds; f sees the round index.
void run_rounds(World& world, int rounds, std::function<void(Node&, int)> f);

// One round: everyone joins all pins into a single set. Returns the circuit count.
int global_circuit(World& world);

// A candidate lives in partition set `set` of `amoebot` while the election's
// configure hook is in force. Candidates whose sets end up on one circuit compete.
struct Candidate {
  int amoebot = 0;
  int set = 0;
};

struct ElectionResult {
  std::vector<uint8_t> leader;    // per candidate
  int phases = 0;
  long rounds = 0;
  std::vector<int> alive_after;   // surviving candidates after each phase
};

// Random race per phase (bits fair bits, most significant first, a candidate
// holding 0 withdraws when it hears a beep), then a withdrawal report on the
// candidate circuit and a global round in which unfinished groups beep. A group
// finishes after `confirm` phases in a row without withdrawals.
ElectionResult leader_election(World& world, const std::function<void(Node&)>& configure,
                               const std::vector<Candidate>& candidates, int confirm, int bits = 4);
// The classical case: candidates flagged per amoebot, all on the global circuit.
ElectionResult elect_global(World& world, const std::vector<uint8_t>& candidate, int confirm);
// One leader per chain of the overlay; every visit is a candidate. Result indexed
// like flatten(ov): amoebot-major, then visit order.
ElectionResult elect_per_chain(World& world, const Overlay& ov, int confirm);
// Confirmation phases used by the harness: 2 ceil(log2 n), at least 2.
int default_confirm(int n);

// Pins joining every visit's predecessor and successor link into one set (set j for visit j).
void chain_bus(Node& n, const Overlay& ov);

// Tail of every chain: the last position of open chains, the reference's
// predecessor on closed ones (found in one round). Per amoebot, per visit.
std::vector<std::vector<uint8_t>> find_tails(World& world, const Overlay& ov);

// Sum of values mod k on every chain of the overlay, in parallel. Chains are
// cut at their reference, which acts as head. values[amoebot][visit] in 0..k-1.
// Returns the sum per chain as learned by its members.
std::vector<int> chain_sums_mod_k(World& world, const Overlay& ov,
                                  const std::vector<std::vector<int>>& values, int k);
int chain_sum_mod_k(World& world, const ChainRef& chain, const std::vector<int>& values, int k);

// Broadcast of a `bits`-bit value per chain from one sender visit over the chain bus.
std::vector<std::vector<int>> chain_broadcast(World& world, const Overlay& ov,
                                              const std::vector<std::vector<uint8_t>>& sender,
                                              const std::vector<std::vector<int>>& value, int bits);

enum class BoundaryKind { Unknown, Inner, Outer };

struct BoundarySet {
  ChainRef cycle;             // closed
  std::vector<int> turns;     // per position, 60 degree steps
  std::vector<int> runs;      // per position, the run mask at that amoebot
  BoundaryKind kind = BoundaryKind::Unknown;
  int region_id = 0;
  std::vector<Occurrence> occurrences() const;
};

// Boundary cycles from local views: outer ones counterclockwise, inner ones clockwise.
std::vector<BoundarySet> detect_boundaries(const World& world);

struct Classification {
  std::vector<BoundaryKind> kinds;
  std::vector<int> leaders;   // reference position per cycle
  long rounds = 0;
};
// Leader per cycle, then turn sum mod 5 along the cut cycle. All cycles in parallel.
Classification classify_boundaries(World& world, std::vector<BoundarySet>& sets, int confirm);
BoundaryKind classify_boundary(World& world, BoundarySet& b, int confirm);

struct SyncResult {
  long rounds = 0;
  long work_rounds = 0;
};
// Work rounds alternate with a global round in which amoebots whose work
// returned true (unfinished) beep; stops after the first silent global round.
SyncResult synchronize(World& world, const std::function<bool(Node&, long)>& work,
                       long max_rounds = 1'000'000);

}  // namespace amoebot
