#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "amoebot/errors.hpp"
#include "amoebot/scenario.hpp"
#include "amoebot/shapes.hpp"

using namespace amoebot;

namespace {

int run(const std::string& scenario, const std::string& input, const std::string& dir, const std::string& sign,
        const std::string& ref, uint64_t seed, int pins, long max_rounds, bool check, const std::string& trace_path,
        const std::string& svg_path, const std::string& subset, int c) {
  ScenarioConfig cfg;
  cfg.kind = parse_scenario(scenario);
  cfg.structure = read_structure_file(input);
  cfg.d = parse_dir(dir);
  if (sign != "+" && sign != "-") throw InvalidArgument("sign must be + or -");
  cfg.s = sign == "+" ? Sign::Plus : Sign::Minus;
  if (!ref.empty()) cfg.ref = parse_coord(ref);
  cfg.seed = seed;
  cfg.pins = pins;
  if (max_rounds > 0) cfg.max_rounds = max_rounds;
  cfg.check = check;
  cfg.subset = subset;
  cfg.c = c;
  cfg.want_svg = !svg_path.empty();
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw InvalidArgument("cannot write " + trace_path);
    cfg.trace = &trace;
  }
  ScenarioOutcome out = run_scenario(cfg);
  if (!svg_path.empty()) {
    std::ofstream f(svg_path);
    if (!f) throw InvalidArgument("cannot write " + svg_path);
    f << out.svg;
  }
  std::cout << out.report.dump(2) << "\n";
  if (check && !out.agree) {
    std::cerr << "OracleMismatch\n" << out.counterexample;
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amoebot circuit simulator"};
  app.require_subcommand(1);

  auto* runc = app.add_subcommand("run", "run one scenario on a structure file");
  std::string scenario, input, dir = "N", sign = "+", ref, trace, svg, subset = "all";
  uint64_t seed = 1;
  int pins = 0, c = 2;
  long max_rounds = 0;
  bool check = false;
  runc->add_option("scenario", scenario, "stripe | maxima | skeleton | spanning-tree | symmetry | pasc-demo")
      ->required();
  runc->add_option("--input", input, "structure file, one \"q r\" per line")->required();
  runc->add_option("--dir", dir, "direction, e.g. N, ENE, SSW");
  runc->add_option("--sign", sign, "+ or -");
  runc->add_option("--ref", ref, "reference amoebot \"q,r\"");
  runc->add_option("--seed", seed);
  runc->add_option("--pins", pins, "pins per bond (default: scenario minimum)");
  runc->add_option("--max-rounds", max_rounds);
  runc->add_flag("--check", check, "compare against the oracle");
  runc->add_option("--trace", trace, "write per-round records here");
  runc->add_option("--svg", svg, "write an SVG picture here");
  runc->add_option("--subset", subset, "maxima candidates: all | random:P");
  runc->add_option("-c", c, "repetition constant for string equality");

  auto* sweepc = app.add_subcommand("sweep", "round counts over growing structures");
  std::string sizes = "16..2048", shape = "random", sweep_scenario = "stripe";
  int trials = 5, threads = 0;
  uint64_t sweep_seed = 1;
  sweepc->add_option("--sizes", sizes, "lo..hi (doubling) or a comma list");
  sweepc->add_option("--shape", shape, "random | ring | blob");
  sweepc->add_option("--trials", trials);
  sweepc->add_option("--scenario", sweep_scenario);
  sweepc->add_option("--seed", sweep_seed);
  sweepc->add_option("--threads", threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*runc) return run(scenario, input, dir, sign, ref, seed, pins, max_rounds, check, trace, svg, subset, c);
    SweepConfig cfg;
    cfg.kind = parse_scenario(sweep_scenario);
    cfg.sizes = parse_sizes(sizes);
    cfg.shape = shape;
    cfg.trials = trials;
    cfg.seed = sweep_seed;
    cfg.threads = threads;
    SweepResult res = run_sweep(cfg);
    std::cout << "n,mean_rounds,min_rounds,max_rounds\n";
    for (const auto& r : res.rows)
      std::cout << r.n << "," << r.mean_rounds << "," << r.min_rounds << "," << r.max_rounds << "\n";
    std::cout << "# fit rounds = " << res.a << " * log2(n) + " << res.b << "\n";
    std::cout << "# fit rounds = " << res.a2 << " * log2(n)^2 + " << res.b2 << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
