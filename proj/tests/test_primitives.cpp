#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "amoebot/errors.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/pasc.hpp"
#include "amoebot/primitives.hpp"
#include "amoebot/shapes.hpp"

using namespace amoebot;

namespace {

const Structure kTriangle = {{0, 0}, {1, 0}, {0, 1}};

ChainRef open_chain(const Structure& s) {
  ChainRef c;
  c.positions = s;
  return c;
}

// a path through a filled hexagon, row by row in a snake
Structure snake(int rows, int cols) {
  Structure s;
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < cols; ++i) s.push_back({r % 2 == 0 ? i : cols - 1 - i, r});
  return s;
}

std::vector<std::vector<Occurrence>> sorted_cycles(const std::vector<BoundarySet>& bs) {
  std::vector<std::vector<Occurrence>> out;
  for (auto& b : bs) out.push_back(b.occurrences());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Occurrence>> sorted_cycles(const std::vector<BoundaryCycle>& bs) {
  std::vector<std::vector<Occurrence>> out;
  for (auto& b : bs) out.push_back(b.cycle);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Primitives, GlobalCircuit) {
  for (const Structure& s : {line_shape(1), line_shape(3), hexagon_ring()}) {
    World w = World::load(s, 2, 1);
    EXPECT_EQ(global_circuit(w), 1);
  }
}

TEST(Primitives, SingleCandidate) {
  World w = World::load(filled_hexagon(2), 2, 5);
  std::vector<uint8_t> cand(w.size(), 0);
  cand[7] = 1;
  auto r = elect_global(w, cand, 3);
  EXPECT_EQ(r.leader, std::vector<uint8_t>({1}));
  EXPECT_EQ(r.alive_after.front(), 1);
  EXPECT_EQ(r.phases, 3);
}

TEST(Primitives, EmptyCandidateSet) {
  World w = World::load(line_shape(3), 2, 5);
  EXPECT_THROW(elect_global(w, std::vector<uint8_t>(3, 0), 2), EmptyCandidateSet);
}

TEST(Primitives, ElectionSafetyAndSpeed) {
  Structure s = snake(8, 8);
  const int n = 64;
  long phases = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    World w = World::load(s, 2, seed);
    auto r = elect_global(w, std::vector<uint8_t>(n, 1), default_confirm(n));
    ASSERT_EQ(std::count(r.leader.begin(), r.leader.end(), 1), 1) << seed;
    phases += r.phases;
  }
  // confirm phases plus about log16(n) phases to get down to one survivor
  EXPECT_LE(phases / 1000.0, default_confirm(n) + std::log2(n));
}

TEST(Primitives, ElectionPerChain) {
  World w = World::load(hexagon_ring(2), 4, 9);
  auto rings = detect_boundaries(w);
  ASSERT_EQ(rings.size(), 2u);
  std::vector<ChainRef> chains;
  for (auto& b : rings) chains.push_back(b.cycle);
  Overlay ov(w, chains);
  auto r = elect_per_chain(w, ov, 4);
  std::vector<int> per(2, 0);
  size_t idx = 0;
  for (int u = 0; u < w.size(); ++u)
    for (const Visit& v : ov.at(u)) per[v.chain] += r.leader[idx++];
  EXPECT_EQ(per, std::vector<int>({1, 1}));
}

TEST(Primitives, ChainSumExamples) {
  Structure s = line_shape(3);
  World w = World::load(s, 2, 1);
  EXPECT_EQ(chain_sum_mod_k(w, open_chain(s), {0, 0, 0}, 5), 0);
  EXPECT_EQ(chain_sum_mod_k(w, open_chain(s), {1, 2, 3}, 5), 1);
  World one = World::load(line_shape(1), 2, 1);
  EXPECT_EQ(chain_sum_mod_k(one, open_chain(line_shape(1)), {4}, 5), 4);
}

TEST(Primitives, ChainSumRandom) {
  std::mt19937_64 rng(7);
  Structure s = snake(10, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = trial % 3 == 0 ? 5 : static_cast<int>(rng() % 11) + 2;
    std::vector<int> x(s.size());
    long sum = 0;
    for (auto& v : x) {
      v = static_cast<int>(rng() % k);
      sum += v;
    }
    World w = World::load(s, 2, trial);
    ASSERT_EQ(chain_sum_mod_k(w, open_chain(s), x, k), sum % k) << trial;
  }
}

TEST(Primitives, DetectBoundariesExamples) {
  auto tri = detect_boundaries(World::load(kTriangle, 4, 1));
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0].cycle.size(), 3);

  auto ring = detect_boundaries(World::load(hexagon_ring(), 4, 1));
  ASSERT_EQ(ring.size(), 2u);
  for (auto& b : ring) {
    Structure nodes = b.cycle.positions;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    EXPECT_EQ(nodes.size(), 6u);
  }

  auto hex = detect_boundaries(World::load(filled_hexagon(1), 4, 1));
  ASSERT_EQ(hex.size(), 1u);
  EXPECT_EQ(hex[0].cycle.size(), 6);
  EXPECT_EQ(std::count(hex[0].cycle.positions.begin(), hex[0].cycle.positions.end(), GridCoord{0, 0}), 0);
}

TEST(Primitives, BoundariesMatchOracle) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    Structure s = random_structure(20 + seed % 50, seed % 7, seed);
    World w = World::load(s, 4, seed);
    auto got = detect_boundaries(w);
    ASSERT_EQ(sorted_cycles(got), sorted_cycles(oracle::boundaries(s))) << seed;
    std::map<GridCoord, int> count;
    for (auto& b : got)
      for (auto& c : b.cycle.positions) ++count[c];
    for (auto& [c, k] : count) EXPECT_LE(k, 3);
  }
}

TEST(Primitives, ClassifyExamples) {
  World w = World::load(kTriangle, 4, 1);
  auto tri = detect_boundaries(w);
  EXPECT_EQ(classify_boundary(w, tri[0], 2), BoundaryKind::Outer);

  World r = World::load(hexagon_ring(), 4, 2);
  auto rb = detect_boundaries(r);
  classify_boundaries(r, rb, 3);
  auto regions = oracle::regions(hexagon_ring());
  for (auto& b : rb) {
    // an empty neighbour of the first visit tells which region this cycle borders
    GridCoord u = b.cycle.positions[0];
    int side = __builtin_ctz(b.runs[0]);
    bool outer = regions.at(neighbor_side(u, side)) == 0;
    EXPECT_EQ(b.kind, outer ? BoundaryKind::Outer : BoundaryKind::Inner);
  }
}

TEST(Primitives, ClassifyMatchesOracle) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Structure s = random_structure(15 + seed % 60, seed % 9, 1000 + seed);
    World w = World::load(s, 4, seed);
    auto bs = detect_boundaries(w);
    classify_boundaries(w, bs, default_confirm(w.size()));
    auto regions = oracle::regions(s);
    for (auto& b : bs) {
      GridCoord u = b.cycle.positions[0];
      bool outer = b.runs[0] == 0x3F || regions.at(neighbor_side(u, __builtin_ctz(b.runs[0]))) == 0;
      ASSERT_EQ(b.kind, outer ? BoundaryKind::Outer : BoundaryKind::Inner) << seed;
      int sum = 0;
      for (int t : b.turns) sum += t;
      ASSERT_EQ(sum, outer ? 6 : -6);
    }
  }
}

TEST(Primitives, SynchronizeNoParticipants) {
  World w = World::load(line_shape(4), 2, 1);
  auto r = synchronize(w, [](Node&, long) { return false; });
  EXPECT_EQ(r.work_rounds, 1);
  EXPECT_EQ(r.rounds, 3);
}

TEST(Primitives, SynchronizeWaitsForSlowest) {
  World w = World::load(line_shape(4), 2, 1);
  // amoebot 0 finishes after 2 work rounds, amoebot 3 after 5
  auto r = synchronize(w, [](Node& n, long t) {
    if (n.id() == 0) return t < 1;
    if (n.id() == 3) return t < 4;
    return false;
  });
  EXPECT_EQ(r.work_rounds, 5);
}

TEST(Primitives, SynchronizeBudget) {
  World w = World::load(line_shape(2), 2, 1);
  EXPECT_THROW(synchronize(w, [](Node&, long) { return true; }, 50), RoundBudgetExhausted);
}
