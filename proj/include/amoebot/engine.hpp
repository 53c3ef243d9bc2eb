#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "amoebot/grid.hpp"

namespace amoebot {

constexpr int kMaxPins = 8;   // pins per bond side
constexpr int kMaxSets = 64;  // partition sets per amoebot (beep flags fit one word)

class World;

// What one amoebot sees and does during its activation.
// Pins are (side 0..5, slot 0..k-1); side s points to side_dir(s).
class Node {
 public:
  int id() const { return id_; }
  GridCoord coord() const;
  const World& world() const { return *world_; }
  int neighbor(int side) const;  // amoebot index or -1
  bool has_neighbor(int side) const { return neighbor(side) >= 0; }
  int pins() const;

  // beeps delivered at the end of the previous round, per partition set
  bool received(int set) const { return (received_ >> set) & 1u; }
  uint64_t received_mask() const { return received_; }
  int previous_sets() const;

  std::mt19937_64& rng();

  void clear_pins();
  void assign(int side, int slot, int set);
  void use_sets(int count);  // allow pinless partition sets
  int set_of(int side, int slot) const;
  void beep(int set);

 private:
  friend class World;
  Node(World* w, int id, uint64_t received) : world_(w), id_(id), received_(received) {}
  World* world_;
  int id_;
  uint64_t received_;
};

class Program {
 public:
  virtual ~Program() = default;
  // Must read only the previous-round snapshot and write only this amoebot's next state.
  virtual void activate(Node& node) = 0;
  // Publishes all next states at once.
  virtual void commit() {}
  virtual size_t state_bytes(int /*amoebot*/) const { return 0; }
  virtual std::string phase() const { return {}; }
};

// Double-buffered per-amoebot state; activations see the snapshot only.
template <class State>
class StatefulProgram : public Program {
 public:
  void activate(Node& node) final {
    next_[node.id()] = cur_[node.id()];
    step(node, cur_[node.id()], next_[node.id()]);
  }
  void commit() final { cur_ = next_; }
  size_t state_bytes(int) const override { return sizeof(State); }
  const State& state(int i) const { return cur_[i]; }
  const std::vector<State>& states() const { return cur_; }

 protected:
  explicit StatefulProgram(std::vector<State> init) : cur_(init), next_(std::move(init)) {}
  virtual void step(Node& node, const State& prev, State& next) = 0;
  std::vector<State>& mutable_states() { return cur_; }

 private:
  std::vector<State> cur_, next_;
};

struct RoundReport {
  long round = 0;     // index of the round that was executed
  int circuits = 0;
  int beeping = 0;    // circuits that carried a beep
};

struct CircuitGraph {
  std::vector<int> offset;      // first global partition-set id per amoebot, size n+1
  std::vector<int> component;   // per global set: smallest member of its circuit
  std::vector<char> beeped;     // per global set id; meaningful at component roots
  int circuits = 0;
  int of(int amoebot, int set) const { return component[offset[amoebot] + set]; }
};

class World {
 public:
  static World load(std::vector<GridCoord> coords, int pins, uint64_t seed);

  int size() const { return static_cast<int>(coords_.size()); }
  int pins() const { return pins_; }
  uint64_t seed() const { return seed_; }
  long round() const { return round_; }
  const std::vector<GridCoord>& coords() const { return coords_; }
  GridCoord coord(int i) const { return coords_[i]; }
  int index_of(GridCoord c) const;  // -1 if unoccupied
  bool occupied(GridCoord c) const { return index_of(c) >= 0; }
  int neighbor(int i, int side) const { return nbr_[6 * i + side]; }
  int bond_count() const { return static_cast<int>(bonds_.size()); }

  std::mt19937_64& rng(int i) { return rngs_[i]; }

  RoundReport step(Program& program);
  // Rounds in which nobody reconfigures or beeps; used for locally computed steps.
  void idle(long rounds, const std::string& phase = "idle");

  // current configuration and the beeps it carried in the last round
  int set_count(int i) const { return sets_[i]; }
  int set_of(int i, int side, int slot) const { return pin_at(pinmap_, i, side, slot); }
  bool flag(int i, int set) const { return (flags_[i] >> set) & 1u; }
  uint64_t flags(int i) const { return flags_[i]; }
  const CircuitGraph& circuits() const { return graph_; }

  void set_trace(std::ostream* out) { trace_ = out; }
  void set_state_budget(std::optional<size_t> bytes) { state_budget_ = bytes; }
  void set_round_budget(std::optional<long> rounds) { round_budget_ = rounds; }
  std::optional<long> round_budget() const { return round_budget_; }
  // Activation order permutation; traces must not depend on it.
  void shuffle_activation(uint64_t seed);

 private:
  friend class Node;
  friend CircuitGraph compute_circuits(const World&);
  World() = default;
  int pin_at(const std::vector<int8_t>& m, int i, int side, int slot) const {
    return m[(6 * i + side) * pins_ + slot];
  }
  void rebuild_circuits();

  std::vector<GridCoord> coords_;
  std::unordered_map<GridCoord, int> index_;
  std::vector<int> nbr_;
  struct Bond {
    int u, v, side;
  };
  std::vector<Bond> bonds_;
  int pins_ = 1;
  uint64_t seed_ = 0;
  long round_ = 0;
  std::vector<std::mt19937_64> rngs_;
  std::vector<int> order_;

  std::vector<int8_t> pinmap_, next_pinmap_;
  std::vector<int> sets_, next_sets_;
  std::vector<uint64_t> beeps_, flags_;
  CircuitGraph graph_;
  std::vector<int> uf_;

  std::ostream* trace_ = nullptr;
  std::optional<size_t> state_budget_;
  std::optional<long> round_budget_;
};

// Connected components of the partition-set graph under the current configuration.
CircuitGraph compute_circuits(const World& world);

// Steps until pred() holds; the predicate is checked before every round.
std::vector<RoundReport> run_until(World& world, Program& program,
                                   const std::function<bool()>& pred, long max_rounds);

}  // namespace amoebot
