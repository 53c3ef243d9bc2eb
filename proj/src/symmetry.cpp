#include "amoebot/symmetry.hpp"

#include <algorithm>

#include "amoebot/errors.hpp"
#include "amoebot/pasc.hpp"
#include "amoebot/primitives.hpp"

namespace amoebot {

namespace {

int mod6(int x) { return ((x % 6) + 6) % 6; }

}  // namespace

EncodedPath encode_skeleton_path(const Skeleton& sk) {
  EncodedPath e;
  const Dir dp = is_axis(sk.d) ? sk.d : rotate(sk.d, 30, sk.s);
  const int up = side_of(dp);
  const int M = static_cast<int>(sk.cycle.size());
  for (int k = 0; k < M; ++k) {
    if (sk.s == Sign::Plus) {
      const Occurrence& o = sk.cycle[k];
      e.chain.positions.push_back(o.node);
      e.codes.push_back(o.succ ? static_cast<uint8_t>(mod6(side_towards(o.node, *o.succ) - up)) : 7);
    } else {
      const Occurrence& o = sk.cycle[(M - k) % M];
      e.chain.positions.push_back(o.node);
      e.codes.push_back(o.pred ? static_cast<uint8_t>(mod6(up - side_towards(o.node, *o.pred))) : 7);
    }
  }
  e.chain.ref = 0;
  return e;
}

PitParams pit_params(int m) {
  PitParams p;
  p.l = ceil_log2(m) + 2;
  p.lambda = 2L * p.l;
  p.k = 1L << ceil_log2(p.lambda);
  return p;
}

long evaluate_polynomial(const std::vector<uint8_t>& coeffs, long p, long r) {
  // right-to-left powers, one term at a time as the blocks do it
  long sum = 0, power = 1 % p;
  for (uint8_t a : coeffs) {
    sum = (sum + static_cast<long>(a) % p * power) % p;
    power = power * (r % p) % p;
  }
  return sum;
}

namespace {

// value sent bit by bit on the global circuit from one amoebot, least significant first
long send_bits(World& world, int sender, long value, int bits) {
  long got = 0;
  run_rounds(world, bits + 1, [&](Node& n, int r) {
    if (r == 0) pasc_core::global_circuit(n);
    if (r > 0 && n.id() == sender && n.received(0)) got |= 1L << (r - 1);
    if (r < bits && n.id() == sender && (value >> r & 1)) n.beep(0);
  });
  return got;
}

// both values on two global circuits at once; true if some bit differs
bool values_differ(World& world, int sa, long va, int sb, long vb, int bits) {
  bool differ = false;
  run_rounds(world, bits + 1, [&](Node& n, int r) {
    if (r == 0) pasc_core::two_global_circuits(n);
    if (r > 0 && n.id() == 0 && n.received(0) != n.received(1)) differ = true;
    if (r < bits) {
      if (n.id() == sa && (va >> r & 1)) n.beep(0);
      if (n.id() == sb && (vb >> r & 1)) n.beep(1);
    }
  });
  return differ;
}

// PASC on two chains, one iteration each in turn; after every passivation round
// the tail beeps its current identifier bit on the second global circuit.
class DualPasc : public Program {
 public:
  DualPasc(const World& w, const ChainRef& a, const ChainRef& b) : ova_(w, {a}), ovb_(w, {b}) {
    if (ova_.wires() < 2) throw InvalidPinCount("length check needs two wires per lane");
    va_ = chain_visits(w, ova_);
    vb_ = chain_visits(w, ovb_);
  }
  void activate(Node& n) override {
    const bool first = t_ < 3;
    auto& vs = (first ? va_ : vb_)[n.id()];
    const Overlay& ov = first ? ova_ : ovb_;
    switch (t_) {
      case 0:
      case 3:
        if (t_ == 0 && started_) {
          bool report_b = n.received(0), bit_b = n.received(1);
          if (bit_a_ != bit_b) {
            verdict_ = 0;
            return;
          }
          if (!report_a_ && !report_b) {
            verdict_ = 1;
            return;
          }
        }
        if (t_ == 3) {
          report_a_next_ = n.received(0);
          bit_a_next_ = n.received(1);
        }
        n.clear_pins();
        for (size_t j = 0; j < vs.size(); ++j) pasc_core::wire(n, vs[j], 2 * static_cast<int>(j));
        break;
      case 1:
      case 4:
        for (size_t j = 0; j < vs.size(); ++j) pasc_core::beep_reference(n, vs[j], 2 * static_cast<int>(j));
        break;
      default: {
        bool report = false, tail_bit = false;
        for (size_t j = 0; j < vs.size(); ++j) {
          if (!pasc_core::read(n, vs[j], 2 * static_cast<int>(j)))
            throw ProtocolViolation("visit cut off from its reference");
          report |= pasc_core::would_passivate(vs[j]);
          pasc_core::advance(vs[j]);
          if (ov.at(n.id())[j].succ_side < 0) tail_bit = vs[j].bit0;
        }
        pasc_core::two_global_circuits(n);
        if (report) n.beep(0);
        if (tail_bit) n.beep(1);
      }
    }
  }
  void commit() override {
    if (verdict_ >= 0) return;
    if (t_ == 3) {
      report_a_ = report_a_next_;
      bit_a_ = bit_a_next_;
    }
    t_ = (t_ + 1) % 6;
    if (t_ == 0) started_ = true;
  }
  std::string phase() const override { return "length"; }
  int verdict_ = -1;

 private:
  Overlay ova_, ovb_;
  std::vector<std::vector<PascVisit>> va_, vb_;
  int t_ = 0;
  bool started_ = false;
  bool report_a_ = false, bit_a_ = false, report_a_next_ = false, bit_a_next_ = false;
};

bool same_length(World& world, const ChainRef& a, const ChainRef& b) {
  DualPasc prog(world, a, b);
  drive(world, prog, [&] { return prog.verdict_ >= 0; });
  return prog.verdict_ == 1;
}

// per-position identifiers are at most 6 bits below the gate, so every
// occurrence may keep its own
bool compare_symbols(World& world, const EncodedPath& a, const EncodedPath& b) {
  pasc_run(world, a.chain);
  pasc_run(world, b.chain);
  const int m = a.size();
  bool differ = false;
  run_rounds(world, 3 * m + 1, [&](Node& n, int r) {
    if (r == 0) pasc_core::two_global_circuits(n);
    if (r > 0 && n.id() == 0 && n.received(0) != n.received(1)) differ = true;
    if (r < 3 * m) {
      const int i = r / 3, bit = r % 3;
      if (world.coord(n.id()) == a.chain.positions[i] && (a.codes[i] >> bit & 1)) n.beep(0);
      if (world.coord(n.id()) == b.chain.positions[i] && (b.codes[i] >> bit & 1)) n.beep(1);
    }
  });
  return !differ;
}

std::vector<std::pair<int, int>> blocks_of(const std::vector<uint8_t>& marks) {
  std::vector<std::pair<int, int>> out;
  const int m = static_cast<int>(marks.size());
  for (int i = 0; i < m; ++i)
    if (marks[i]) {
      int j = i + 1;
      while (j < m && !marks[j]) ++j;
      out.push_back({i, j});
    }
  return out;
}

}  // namespace

PrimeResult generate_prime(World& world, const ChainRef& chain, const std::vector<uint8_t>& marks, int c) {
  const int m = chain.size();
  const PitParams pp = pit_params(m);
  const int a0 = world.index_of(chain.positions[0]);
  const long budget = 3L * c * pp.l * pp.l;
  const auto blocks = blocks_of(marks);
  PrimeResult res;
  for (res.attempts = 1; res.attempts <= budget; ++res.attempts) {
    // uniform in [2m, 4m); A0 draws against the bits of m held by A_0..A_{l-1}
    const long p = 2L * m + static_cast<long>(world.rng(a0)() % (2UL * m));
    world.idle(pp.l, "prime-range");
    if (send_bits(world, a0, p, pp.l) != p) throw ProtocolViolation("prime broadcast garbled");
    // every block divides by its k divisors, one long division of l steps each
    world.idle(pp.k * pp.l, "trial-division");
    std::vector<uint8_t> found(world.size(), 0);
    for (auto [lo, hi] : blocks)
      for (long t = std::max(lo, 2); t < hi && t < p; ++t)
        if (p % t == 0) found[world.index_of(chain.positions[lo])] = 1;
    if (!broadcast(world, [&](int u) { return found[u] != 0; })) {
      res.p = p;
      return res;
    }
  }
  throw PrimeGenerationExhausted("no prime after " + std::to_string(budget) + " attempts");
}

EqualityResult string_equality(World& world, const EncodedPath& a, const EncodedPath& b, int c, int repetitions) {
  EqualityResult res;
  const long start = world.round();
  res.same_length = same_length(world, a.chain, b.chain);
  if (!res.same_length) {
    res.rounds = world.round() - start;
    return res;
  }
  const int m = a.size();
  if (m < kEta) {
    res.deterministic = true;
    res.equal = compare_symbols(world, a, b);
    res.rounds = world.round() - start;
    return res;
  }
  const PitParams pp = pit_params(m);
  auto marks_a = block_primitive(world, a.chain, pp.lambda);
  block_primitive(world, b.chain, pp.lambda);
  PrimeResult pr = generate_prime(world, a.chain, marks_a, c);
  res.prime = pr.p;
  res.prime_attempts = pr.attempts;
  const int a0 = world.index_of(a.chain.positions[0]);
  const int b0 = world.index_of(b.chain.positions[0]);
  send_bits(world, a0, pr.p, pp.l);  // B's blocks learn p

  const int reps = repetitions >= 0 ? repetitions : c * ceil_log2(m);
  res.equal = true;
  for (res.repetitions = 0; res.repetitions < reps;) {
    ++res.repetitions;
    long r;
    do {
      r = static_cast<long>(world.rng(a0)() & ((1UL << pp.l) - 1));
    } while (r >= pr.p);
    send_bits(world, a0, r, pp.l);
    // per block k terms by right-to-left exponentiation, then the block sums
    // are folded pairwise; both chains in turn
    const long charge = pp.k * 2 * pp.l + static_cast<long>(ceil_log2(m)) * ceil_log2(m);
    world.idle(charge, "evaluate-a");
    const long fa = evaluate_polynomial(a.codes, pr.p, r);
    world.idle(charge, "evaluate-b");
    const long fb = evaluate_polynomial(b.codes, pr.p, r);
    if (values_differ(world, a0, fa, b0, fb, pp.l)) {
      res.equal = false;
      break;
    }
  }
  res.rounds = world.round() - start;
  return res;
}

SymmetryReport detect_symmetries(World& world, int c, int confirm) {
  if (world.pins() < 4) throw InvalidPinCount("symmetry detection needs four pins per bond");
  const long start = world.round();
  auto enc = [&](Dir d, Sign s) {
    SkeletonRun run = canonical_skeleton(world, d, s, confirm);
    return encode_skeleton_path(run.skeleton);
  };
  auto equal = [&](const EncodedPath& x, const EncodedPath& y) { return string_equality(world, x, y, c).equal; };
  SymmetryReport rep;
  const EncodedPath north = enc(Dir::N, Sign::Plus);
  rep.rot2 = equal(north, enc(Dir::S, Sign::Plus));
  rep.rot3 = equal(north, enc(Dir::ESE, Sign::Plus));
  rep.rot6 = rep.rot2 && rep.rot3;
  for (int i = 0; i < 6; ++i) {
    const Dir d = dir_at(i);
    const EncodedPath plus = i == 0 ? north : enc(d, Sign::Plus);
    rep.reflect[i] = rep.reflect[i + 6] = equal(plus, enc(d, Sign::Minus));
  }
  rep.rounds = world.round() - start;
  return rep;
}

}  // namespace amoebot
