#include <gtest/gtest.h>

#include "amoebot/errors.hpp"
#include "amoebot/pasc.hpp"
#include "amoebot/shapes.hpp"

using namespace amoebot;

namespace {

ChainRef line_chain(const Structure& s, int ref) {
  ChainRef c;
  c.positions = s;
  c.ref = ref;
  return c;
}

std::vector<long> values(const PascResult& r) {
  std::vector<long> v;
  for (auto& id : r.ids) v.push_back(id.value());
  return v;
}

}  // namespace

TEST(Pasc, SingleAmoebot) {
  Structure s = line_shape(1);
  World w = World::load(s, 2, 1);
  auto r = pasc_run(w, line_chain(s, 0));
  EXPECT_EQ(values(r), std::vector<long>({0}));
  EXPECT_EQ(r.iterations, 0);
}

TEST(Pasc, FiveFromHead) {
  Structure s = line_shape(5);
  World w = World::load(s, 2, 1);
  auto r = pasc_run(w, line_chain(s, 0));
  EXPECT_EQ(values(r), std::vector<long>({0, 1, 2, 3, 4}));
  EXPECT_EQ(r.iterations, 3);
}

TEST(Pasc, FourFromTail) {
  Structure s = line_shape(4);
  World w = World::load(s, 2, 1);
  auto r = pasc_run(w, line_chain(s, 3));
  EXPECT_EQ(values(r), std::vector<long>({-3, -2, -1, 0}));
  EXPECT_EQ(r.iterations, 2);
}

TEST(Pasc, AllReferencesOnBentChains) {
  for (int m : {2, 3, 7, 8, 9, 16, 17, 33}) {
    for (const Structure& path : {line_shape(m, Dir::N), line_shape(m, Dir::ESE)}) {
      for (int ref = 0; ref < m; ++ref) {
        World w = World::load(path, 4, 3);
        auto r = pasc_run(w, line_chain(path, ref));
        for (int i = 0; i < m; ++i) {
          ASSERT_EQ(r.ids[i].value(), i - ref) << m << " " << ref;
        }
        EXPECT_EQ(r.iterations, std::max(ceil_log2(ref + 1), ceil_log2(m - ref)));
      }
    }
  }
}

TEST(Pasc, ZigZagChain) {
  Structure zig;
  for (int i = 0; i < 12; ++i) zig.push_back({i / 2 + i % 2, -(i / 2)});
  World w = World::load(zig, 2, 1);
  auto r = pasc_run(w, line_chain(zig, 5));
  for (int i = 0; i < 12; ++i) EXPECT_EQ(r.ids[i].value(), i - 5);
}

TEST(Pasc, NeedsTwoPins) {
  Structure s = line_shape(3);
  World w = World::load(s, 1, 1);
  EXPECT_THROW(pasc_run(w, line_chain(s, 0)), InvalidPinCount);
}

TEST(Pasc, Replay) {
  Structure s = line_shape(5);
  World w = World::load(s, 2, 1);
  EXPECT_EQ(pasc_replay(w, line_chain(s, 0), 0), std::vector<uint8_t>({0, 1, 0, 1, 0}));
  EXPECT_EQ(pasc_replay(w, line_chain(s, 0), 1), std::vector<uint8_t>({0, 0, 1, 1, 0}));
  EXPECT_EQ(pasc_replay(w, line_chain(s, 0), 2), std::vector<uint8_t>({0, 0, 0, 0, 1}));
  EXPECT_THROW(pasc_replay(w, line_chain(s, 0), 3), BitIndexOutOfRange);
}

TEST(Pasc, LocatePosition) {
  Structure s = line_shape(10);
  for (long lambda = 0; lambda < 10; ++lambda) {
    World w = World::load(s, 2, 1);
    EXPECT_EQ(locate_position(w, line_chain(s, 0), lambda), lambda);
  }
  World w = World::load(s, 2, 1);
  EXPECT_EQ(locate_position(w, line_chain(s, 0), 10), -1);
  EXPECT_EQ(locate_position(w, line_chain(s, 0), 100), -1);
}

TEST(Pasc, BlockPrimitive) {
  auto marked = [](int m, long lambda) {
    Structure s = line_shape(m);
    World w = World::load(s, 2, 1);
    auto marks = block_primitive(w, line_chain(s, 0), lambda);
    std::vector<int> out;
    for (int i = 0; i < m; ++i)
      if (marks[i]) out.push_back(i);
    return out;
  };
  EXPECT_EQ(marked(10, 3), std::vector<int>({0, 4, 8}));
  EXPECT_EQ(marked(5, 1), std::vector<int>({0, 1, 2, 3, 4}));
  EXPECT_EQ(marked(32, 5), std::vector<int>({0, 8, 16, 24}));
  EXPECT_EQ(marked(12, 2), std::vector<int>({0, 2, 4, 6, 8, 10}));
  EXPECT_EQ(marked(7, 7), std::vector<int>({0}));
  for (int m = 2; m <= 40; m += 3)
    for (long lambda = 1; lambda <= m; ++lambda) {
      long k = 1L << ceil_log2(lambda);
      std::vector<int> want;
      for (int i = 0; i < m; i += static_cast<int>(k)) want.push_back(i);
      if (lambda == m) want = {0};
      ASSERT_EQ(marked(m, lambda), want) << m << " " << lambda;
    }
  Structure s = line_shape(4);
  World w = World::load(s, 2, 1);
  EXPECT_THROW(block_primitive(w, line_chain(s, 0), 5), LambdaExceedsChain);
}

TEST(Pasc, ConstantStatePerAmoebot) {
  for (int m : {4, 64, 500}) {
    Structure s = line_shape(m);
    World w = World::load(s, 2, 1);
    w.set_state_budget(64);
    EXPECT_NO_THROW(pasc_run(w, line_chain(s, 0)));
  }
}
