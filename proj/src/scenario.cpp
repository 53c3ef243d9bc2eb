#include "amoebot/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "amoebot/engine.hpp"
#include "amoebot/errors.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/pasc.hpp"
#include "amoebot/primitives.hpp"
#include "amoebot/shapes.hpp"
#include "amoebot/skeleton.hpp"
#include "amoebot/spatial.hpp"
#include "amoebot/svg.hpp"
#include "amoebot/symmetry.hpp"

namespace amoebot {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, ScenarioKind>& names() {
  static const std::map<std::string, ScenarioKind> m{
      {"stripe", ScenarioKind::Stripe},           {"maxima", ScenarioKind::Maxima},
      {"skeleton", ScenarioKind::Skeleton},       {"spanning-tree", ScenarioKind::SpanningTree},
      {"symmetry", ScenarioKind::Symmetry},       {"pasc-demo", ScenarioKind::PascDemo}};
  return m;
}

json coord_json(GridCoord c) { return json::array({c.q, c.r}); }

json coords_json(std::vector<GridCoord> v) {
  std::sort(v.begin(), v.end());
  json out = json::array();
  for (auto c : v) out.push_back(coord_json(c));
  return out;
}

json edges_json(const std::vector<Edge>& e) {
  json out = json::array();
  for (const Edge& x : e) out.push_back(json::array({coord_json(x.a), coord_json(x.b)}));
  return out;
}

json occurrences_json(const std::vector<Occurrence>& cyc) {
  json out = json::array();
  for (const Occurrence& o : cyc) out.push_back(coord_json(o.node));
  return out;
}

json symmetry_json(const SymmetryReport& r) {
  json refl = json::array();
  for (int i = 0; i < 6; ++i)
    if (r.reflect[i]) refl.push_back(std::string(name(dir_at(i))));
  return json{{"rot2", r.rot2}, {"rot3", r.rot3}, {"rot6", r.rot6}, {"reflections", refl}};
}

std::vector<GridCoord> members(const World& w, const std::vector<uint8_t>& flags) {
  std::vector<GridCoord> out;
  for (int i = 0; i < w.size(); ++i)
    if (flags[i]) out.push_back(w.coord(i));
  return out;
}

// Set difference both ways, as the minimal witness of a mismatch.
std::string diff_dump(const std::string& what, std::vector<GridCoord> got, std::vector<GridCoord> want) {
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  std::vector<GridCoord> extra, missing;
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
  std::ostringstream o;
  o << what << ": " << extra.size() << " extra, " << missing.size() << " missing\n";
  for (auto c : extra) o << "  extra " << c << "\n";
  for (auto c : missing) o << "  missing " << c << "\n";
  return o.str();
}

std::vector<uint8_t> select_subset(const World& w, const std::string& sel, uint64_t seed) {
  std::vector<uint8_t> R(w.size(), 0);
  if (sel == "all") {
    std::fill(R.begin(), R.end(), 1);
    return R;
  }
  if (sel.rfind("random:", 0) == 0) {
    double p = 0;
    try {
      p = std::stod(sel.substr(7));
    } catch (const std::exception&) {
      throw InvalidArgument("bad subset selector " + sel);
    }
    if (!(p > 0 && p <= 1)) throw InvalidArgument("subset probability must lie in (0,1]");
    std::mt19937_64 g(seed ^ 0x5bd1e995ULL);
    std::bernoulli_distribution coin(p);
    for (auto& x : R) x = coin(g);
    return R;
  }
  throw InvalidArgument("bad subset selector " + sel + " (all | random:P)");
}

}  // namespace

ScenarioKind parse_scenario(const std::string& n) {
  auto it = names().find(n);
  if (it == names().end()) throw InvalidArgument("unknown scenario " + n);
  return it->second;
}

std::string scenario_name(ScenarioKind k) {
  for (const auto& [n, v] : names())
    if (v == k) return n;
  return "?";
}

int required_pins(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Stripe:
    case ScenarioKind::Maxima:
    case ScenarioKind::PascDemo:
      return 2;
    default:
      return 4;
  }
}

GridCoord parse_coord(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  long q, r;
  std::string extra;
  if (!(in >> q >> r) || (in >> extra)) throw InvalidArgument("expected \"q,r\", got \"" + text + "\"");
  return {static_cast<int>(q), static_cast<int>(r)};
}

ScenarioOutcome run_scenario(const ScenarioConfig& cfg) {
  const int pins = cfg.pins ? cfg.pins : required_pins(cfg.kind);
  if (pins < required_pins(cfg.kind))
    throw InvalidPinCount(scenario_name(cfg.kind) + " needs " + std::to_string(required_pins(cfg.kind)) +
                          " pins, got " + std::to_string(pins));
  if (cfg.c < 1) throw InvalidArgument("c must be positive");
  World world = World::load(cfg.structure, pins, cfg.seed);
  if (cfg.max_rounds) world.set_round_budget(*cfg.max_rounds);
  world.set_trace(cfg.trace);
  const Structure S = world.coords();
  const int confirm = default_confirm(world.size());

  ScenarioOutcome out;
  json& rep = out.report;
  rep["scenario"] = scenario_name(cfg.kind);
  rep["n"] = world.size();
  rep["pins"] = pins;
  rep["seed"] = cfg.seed;
  SvgScene scene;
  scene.structure = S;
  scene.title = scenario_name(cfg.kind);
  json result;
  std::string mismatch;

  switch (cfg.kind) {
    case ScenarioKind::Stripe: {
      GridCoord u = cfg.ref ? *cfg.ref : cfg.structure.front();
      if (world.index_of(u) < 0) throw ReferenceNotOccupied(to_string(u));
      long rounds = 0;
      auto flags = stripe_algorithm(world, u, cfg.d, &rounds);
      auto got = members(world, flags);
      rep["u"] = coord_json(u);
      rep["dir"] = std::string(name(cfg.d));
      result["members"] = coords_json(got);
      scene.highlighted = got;
      if (cfg.check) {
        auto want = oracle::stripe(S, u, cfg.d);
        if (normalized(got) != normalized(want)) mismatch = diff_dump("stripe", got, want);
      }
      break;
    }
    case ScenarioKind::Maxima: {
      auto R = select_subset(world, cfg.subset, cfg.seed);
      auto res = global_maxima(world, R, cfg.d, confirm);
      auto got = members(world, res.flags);
      rep["dir"] = std::string(name(cfg.d));
      rep["subset"] = cfg.subset;
      result["subset_size"] = std::count(R.begin(), R.end(), 1);
      result["maxima"] = coords_json(got);
      result["reference"] = coord_json(res.reference);
      scene.highlighted = got;
      if (cfg.check) {
        auto want = oracle::maxima(members(world, R), cfg.d);
        if (normalized(got) != normalized(want)) mismatch = diff_dump("maxima", got, want);
      }
      break;
    }
    case ScenarioKind::Skeleton:
    case ScenarioKind::SpanningTree: {
      auto run = canonical_skeleton(world, cfg.d, cfg.s, confirm);
      rep["dir"] = std::string(name(cfg.d));
      rep["sign"] = cfg.s == Sign::Plus ? "+" : "-";
      result["split"] = coord_json(run.skeleton.split);
      result["skeleton_length"] = run.skeleton.cycle.size();
      scene.skeleton = run.skeleton.cycle;
      scene.paths = run.paths;
      scene.split = run.skeleton.split;
      Skeleton want_sk;
      if (cfg.check) {
        want_sk = oracle::skeleton(S, cfg.d, cfg.s);
        if (want_sk.cycle != run.skeleton.cycle) {
          std::ostringstream o;
          o << "skeleton: lengths " << run.skeleton.cycle.size() << " vs " << want_sk.cycle.size() << "\n";
          size_t i = 0;
          while (i < run.skeleton.cycle.size() && i < want_sk.cycle.size() &&
                 run.skeleton.cycle[i] == want_sk.cycle[i])
            ++i;
          o << "  first difference at occurrence " << i;
          if (i < run.skeleton.cycle.size()) o << ", got " << run.skeleton.cycle[i].node;
          if (i < want_sk.cycle.size()) o << ", expected " << want_sk.cycle[i].node;
          o << "\n";
          mismatch = o.str();
        }
      }
      if (cfg.kind == ScenarioKind::Skeleton) {
        result["cycle"] = occurrences_json(run.skeleton.cycle);
        result["fusion_paths"] = run.paths.size();
      } else {
        ChainRef path = skeleton_path(run.skeleton);
        auto tree = spanning_tree(world, path);
        result["root"] = coord_json(tree.tree.root);
        result["edges"] = edges_json(tree.tree.edges);
        scene.edges = tree.tree.edges;
        scene.skeleton.clear();
        scene.paths.clear();
        if (cfg.check && mismatch.empty()) {
          auto want = oracle::spanning_tree(S, path);
          if (!oracle::spanning_check(S, tree.tree.edges))
            mismatch = "spanning-tree: output is not a spanning tree\n";
          else if (want.edges != tree.tree.edges || want.path_edges != tree.tree.path_edges) {
            std::ostringstream o;
            o << "spanning-tree: edge sets differ\n";
            std::vector<Edge> extra, missing;
            std::set_difference(tree.tree.edges.begin(), tree.tree.edges.end(), want.edges.begin(),
                                want.edges.end(), std::back_inserter(extra));
            std::set_difference(want.edges.begin(), want.edges.end(), tree.tree.edges.begin(),
                                tree.tree.edges.end(), std::back_inserter(missing));
            for (auto& e : extra) o << "  extra " << e.a << "-" << e.b << "\n";
            for (auto& e : missing) o << "  missing " << e.a << "-" << e.b << "\n";
            mismatch = o.str();
          }
        }
      }
      break;
    }
    case ScenarioKind::Symmetry: {
      auto got = detect_symmetries(world, cfg.c, confirm);
      rep["c"] = cfg.c;
      result = symmetry_json(got);
      if (cfg.check) {
        auto want = oracle::symmetry(S);
        if (!(want == got))
          mismatch = "symmetry: got " + symmetry_json(got).dump() + ", expected " + symmetry_json(want).dump() + "\n";
      }
      break;
    }
    case ScenarioKind::PascDemo: {
      // the input order is the chain
      ChainRef chain;
      chain.positions = cfg.structure;
      chain.ref = 0;
      if (cfg.ref) {
        auto it = std::find(chain.positions.begin(), chain.positions.end(), *cfg.ref);
        if (it == chain.positions.end()) throw ReferenceNotOccupied(to_string(*cfg.ref));
        chain.ref = static_cast<int>(it - chain.positions.begin());
      }
      auto res = pasc_run(world, chain);
      rep["ref"] = coord_json(chain.positions[chain.ref]);
      result["iterations"] = res.iterations;
      json ids = json::array();
      for (int i = 0; i < chain.size(); ++i) {
        ids.push_back(json{{"at", coord_json(chain.positions[i])}, {"id", res.ids[i].value()}});
        if (cfg.check && res.ids[i].value() != i - chain.ref && mismatch.empty())
          mismatch = "pasc: position " + std::to_string(i) + " got " + std::to_string(res.ids[i].value()) +
                     ", expected " + std::to_string(i - chain.ref) + "\n";
      }
      result["ids"] = ids;
      break;
    }
  }

  out.rounds = world.round();
  rep["rounds"] = out.rounds;
  rep["result"] = result;
  if (cfg.check) {
    out.agree = mismatch.empty();
    rep["oracle_agree"] = out.agree;
    if (!out.agree) {
      std::ostringstream o;
      o << "counterexample (" << scenario_name(cfg.kind) << ", d=" << name(cfg.d)
        << ", s=" << (cfg.s == Sign::Plus ? '+' : '-') << ", seed=" << cfg.seed << ")\n"
        << mismatch << "structure:\n"
        << format_structure(cfg.structure);
      out.counterexample = o.str();
    }
  }
  if (cfg.want_svg) out.svg = render_svg(scene);
  return out;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
      if (lo < 1 || hi < lo) throw InvalidArgument("bad size range " + text);
      for (long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
    } else {
      std::string t = text;
      std::replace(t.begin(), t.end(), ',', ' ');
      std::istringstream in(t);
      int n;
      while (in >> n) {
        if (n < 1) throw InvalidArgument("sizes must be positive");
        out.push_back(n);
      }
      if (!in.eof()) throw InvalidArgument("bad size list " + text);
    }
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad sizes " + text);
  }
  if (out.empty()) throw InvalidArgument("no sizes in " + text);
  return out;
}

Structure sweep_shape(const std::string& shape, int n, uint64_t seed) {
  if (shape == "random") return random_structure(n, std::max(1, n / 40), seed);
  if (shape == "blob") return random_structure(n, 0, seed);
  if (shape == "ring") return hexagon_ring(std::max(1, n / 6));
  throw InvalidArgument("unknown shape " + shape + " (random | ring | blob)");
}

namespace {

std::pair<double, double> fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = k * sxx - sx * sx;
  if (std::abs(den) < 1e-12) return {0, k ? sy / k : 0};
  const double a = (k * sxy - sx * sy) / den;
  return {a, (sy - a * sx) / k};
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw InvalidArgument("trials must be positive");
  struct Job {
    int row, n;
    uint64_t seed;
    long rounds = 0;
    int actual = 0;
    std::string error;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < cfg.sizes.size(); ++i)
    for (int t = 0; t < cfg.trials; ++t) {
      Job j;
      j.row = static_cast<int>(i);
      j.n = cfg.sizes[i];
      j.seed = cfg.seed * 1000003ULL + cfg.sizes[i] * 7919ULL + t;
      jobs.push_back(j);
    }

  unsigned workers = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t j; (j = next++) < jobs.size();) {
      Job& job = jobs[j];
      try {
        ScenarioConfig sc;
        sc.kind = cfg.kind;
        sc.structure = sweep_shape(cfg.shape, job.n, job.seed);
        sc.seed = job.seed;
        sc.d = dir_at(static_cast<int>(job.seed % kDirs));
        sc.ref = sc.structure[job.seed % sc.structure.size()];
        job.actual = static_cast<int>(sc.structure.size());
        job.rounds = run_scenario(sc).rounds;
      } catch (const std::exception& e) {
        job.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (const Job& j : jobs)
    if (!j.error.empty()) throw Error(j.error);

  SweepResult res;
  std::vector<double> x1, x2, y;
  for (size_t i = 0; i < cfg.sizes.size(); ++i) {
    SweepRow row;
    double sum = 0, nsum = 0;
    bool first = true;
    for (const Job& j : jobs) {
      if (j.row != static_cast<int>(i)) continue;
      sum += j.rounds;
      nsum += j.actual;
      row.min_rounds = first ? j.rounds : std::min(row.min_rounds, j.rounds);
      row.max_rounds = first ? j.rounds : std::max(row.max_rounds, j.rounds);
      first = false;
    }
    row.n = static_cast<int>(std::lround(nsum / cfg.trials));
    row.mean_rounds = sum / cfg.trials;
    res.rows.push_back(row);
    const double lg = std::log2(std::max(2, row.n));
    x1.push_back(lg);
    x2.push_back(lg * lg);
    y.push_back(row.mean_rounds);
  }
  std::tie(res.a, res.b) = fit(x1, y);
  std::tie(res.a2, res.b2) = fit(x2, y);
  return res;
}

}  // namespace amoebot
