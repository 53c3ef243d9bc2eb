#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amoebot/types.hpp"

namespace amoebot {

enum class ScenarioKind { Stripe, Maxima, Skeleton, SpanningTree, Symmetry, PascDemo };

ScenarioKind parse_scenario(const std::string& name);  // throws InvalidArgument
std::string scenario_name(ScenarioKind k);
int required_pins(ScenarioKind k);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Stripe;
  Structure structure;               // input order matters for pasc-demo
  Dir d = Dir::N;
  Sign s = Sign::Plus;
  std::optional<GridCoord> ref;      // stripe u, pasc-demo reference
  uint64_t seed = 1;
  int pins = 0;                      // 0 = scenario default
  std::optional<long> max_rounds;
  bool check = false;
  std::string subset = "all";        // maxima: all | random:P
  int c = 2;
  std::ostream* trace = nullptr;
  bool want_svg = false;
};

struct ScenarioOutcome {
  nlohmann::ordered_json report;
  long rounds = 0;
  bool agree = true;                 // meaningful only with check
  std::string counterexample;        // non-empty on mismatch
  std::string svg;
};

// Throws the library errors on invalid input or budget exhaustion.
ScenarioOutcome run_scenario(const ScenarioConfig& cfg);

GridCoord parse_coord(const std::string& text);  // "q,r"

struct SweepConfig {
  ScenarioKind kind = ScenarioKind::Stripe;
  std::vector<int> sizes;
  std::string shape = "random";      // random | ring | blob
  int trials = 5;
  uint64_t seed = 1;
  int threads = 0;                   // 0 = hardware concurrency
};

struct SweepRow {
  int n = 0;
  double mean_rounds = 0;
  long min_rounds = 0, max_rounds = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double a = 0, b = 0;               // rounds ~ a*log2 n + b
  double a2 = 0, b2 = 0;             // rounds ~ a2*log2^2 n + b2
};

std::vector<int> parse_sizes(const std::string& text);  // "16..2048" doubles, or "16,32,50"
Structure sweep_shape(const std::string& shape, int n, uint64_t seed);
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace amoebot
