#include <gtest/gtest.h>

#include <sstream>

#include "amoebot/errors.hpp"
#include "amoebot/scenario.hpp"
#include "amoebot/shapes.hpp"

using namespace amoebot;

namespace {

ScenarioConfig make(ScenarioKind k, Structure S, Dir d = Dir::N) {
  ScenarioConfig c;
  c.kind = k;
  c.structure = std::move(S);
  c.d = d;
  c.check = true;
  return c;
}

}  // namespace

TEST(Parse, Triangle) {
  auto S = parse_structure("0 0\n1 0\n0 1");
  EXPECT_EQ(normalized(S), normalized(triangle_shape(2)));
}

TEST(Parse, RingWithComment) {
  auto S = parse_structure("# ring\n0 1\n1 0\n1 -1\n0 -1\n-1 0\n-1 1");
  EXPECT_EQ(normalized(S), normalized(hexagon_ring(1)));
}

TEST(Parse, DuplicateRejectedAtLoad) {
  auto cfg = make(ScenarioKind::Stripe, parse_structure("0 0\n0 0"));
  EXPECT_THROW(run_scenario(cfg), DuplicateNode);
}

TEST(Parse, BadLineReportsLineNumber) {
  try {
    parse_structure("0 0\n1 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Scenario, StripeLine3) {
  auto cfg = make(ScenarioKind::Stripe, line_shape(3), Dir::ENE);
  cfg.ref = GridCoord{0, 0};
  auto out = run_scenario(cfg);
  EXPECT_TRUE(out.agree);
  EXPECT_EQ(out.report["result"]["members"].size(), 3u);
}

TEST(Scenario, MaximaRingNorth) {
  auto out = run_scenario(make(ScenarioKind::Maxima, hexagon_ring(1)));
  EXPECT_TRUE(out.agree);
  ASSERT_EQ(out.report["result"]["maxima"].size(), 1u);
  EXPECT_EQ(out.report["result"]["maxima"][0], nlohmann::json::array({0, 1}));
}

TEST(Scenario, SymmetryTriangle) {
  auto out = run_scenario(make(ScenarioKind::Symmetry, triangle_shape(2)));
  EXPECT_TRUE(out.agree);
  EXPECT_TRUE(out.report["result"]["rot3"].get<bool>());
}

TEST(Scenario, EveryScenarioAgreesOnRandomShape) {
  auto S = random_structure(40, 2, 5);
  for (auto k : {ScenarioKind::Stripe, ScenarioKind::Maxima, ScenarioKind::Skeleton, ScenarioKind::SpanningTree,
                 ScenarioKind::Symmetry}) {
    auto cfg = make(k, S, Dir::WSW);
    cfg.s = Sign::Minus;
    auto out = run_scenario(cfg);
    EXPECT_TRUE(out.agree) << scenario_name(k) << "\n" << out.counterexample;
    EXPECT_GT(out.rounds, 0);
  }
}

TEST(Scenario, MaximaRandomSubset) {
  auto cfg = make(ScenarioKind::Maxima, random_structure(60, 1, 9), Dir::SSE);
  cfg.subset = "random:0.3";
  EXPECT_TRUE(run_scenario(cfg).agree);
  cfg.subset = "bogus";
  EXPECT_THROW(run_scenario(cfg), InvalidArgument);
}

TEST(Scenario, PascDemoFollowsInputOrder) {
  Structure zig{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}};
  auto cfg = make(ScenarioKind::PascDemo, zig);
  cfg.ref = GridCoord{1, 1};
  auto out = run_scenario(cfg);
  EXPECT_TRUE(out.agree);
  EXPECT_EQ(out.report["result"]["ids"][0]["id"], -2);
  EXPECT_EQ(out.report["result"]["ids"][4]["id"], 2);
}

TEST(Scenario, PinBudgetEnforced) {
  auto cfg = make(ScenarioKind::Skeleton, hexagon_ring(2));
  cfg.pins = 2;
  EXPECT_THROW(run_scenario(cfg), InvalidPinCount);
}

TEST(Scenario, RoundBudget) {
  auto cfg = make(ScenarioKind::Symmetry, hexagon_ring(2));
  cfg.max_rounds = 10;
  EXPECT_THROW(run_scenario(cfg), RoundBudgetExhausted);
}

TEST(Scenario, UnoccupiedReference) {
  auto cfg = make(ScenarioKind::Stripe, line_shape(3));
  cfg.ref = GridCoord{5, 5};
  EXPECT_THROW(run_scenario(cfg), ReferenceNotOccupied);
}

TEST(Scenario, TraceAndSvgDeterministic) {
  auto S = random_structure(50, 2, 3);
  std::string traces[2], svgs[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream tr;
    auto cfg = make(ScenarioKind::Skeleton, S, Dir::E);
    cfg.seed = 77;
    cfg.trace = &tr;
    cfg.want_svg = true;
    auto out = run_scenario(cfg);
    traces[i] = tr.str();
    svgs[i] = out.svg;
  }
  EXPECT_FALSE(traces[0].empty());
  EXPECT_EQ(traces[0], traces[1]);
  EXPECT_EQ(svgs[0], svgs[1]);
  EXPECT_NE(svgs[0].find("#cc0000"), std::string::npos);
  EXPECT_NE(svgs[0].find("<circle"), std::string::npos);
}

TEST(Scenario, SpanningTreeSvgHasEdges) {
  auto cfg = make(ScenarioKind::SpanningTree, filled_hexagon(2));
  cfg.want_svg = true;
  auto out = run_scenario(cfg);
  EXPECT_EQ(out.report["result"]["edges"].size(), 18u);
}

TEST(Sweep, SizesAndFit) {
  EXPECT_EQ(parse_sizes("16..128"), (std::vector<int>{16, 32, 64, 128}));
  EXPECT_EQ(parse_sizes("10,20"), (std::vector<int>{10, 20}));
  EXPECT_THROW(parse_sizes("9..3"), InvalidArgument);
  SweepConfig cfg;
  cfg.sizes = {16, 64, 256};
  cfg.trials = 3;
  cfg.threads = 2;
  auto a = run_sweep(cfg);
  cfg.threads = 1;
  auto b = run_sweep(cfg);
  ASSERT_EQ(a.rows.size(), 3u);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(a.rows[i].mean_rounds, b.rows[i].mean_rounds);
  EXPECT_GT(a.a, 0);
}

TEST(Sweep, Shapes) {
  EXPECT_EQ(sweep_shape("ring", 60, 1).size(), 60u);
  EXPECT_EQ(sweep_shape("blob", 60, 1).size(), 60u);
  EXPECT_THROW(sweep_shape("cube", 60, 1), InvalidArgument);
}
