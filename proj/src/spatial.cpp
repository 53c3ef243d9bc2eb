#include "amoebot/spatial.hpp"

#include "amoebot/errors.hpp"
#include "amoebot/oracle.hpp"
#include "amoebot/primitives.hpp"

namespace amoebot {

std::vector<std::vector<PascVisit>> stripe_visits(const World& world, Dir d, int reference) {
  std::vector<std::vector<PascVisit>> out(world.size());
  for (int u = 0; u < world.size(); ++u) {
    PascVisit v;
    const int p = proj(world.coord(u), d);
    for (int s = 0; s < 6; ++s) {
      const int w = world.neighbor(u, s);
      if (w >= 0) v.add_port(s, 0, proj(world.coord(w), d) - p);
    }
    if (u == reference) v.ref = 0;
    out[u].push_back(v);
  }
  return out;
}

namespace {

int reference_index(const World& world, GridCoord ur) {
  const int r = world.index_of(ur);
  if (r < 0) throw ReferenceNotOccupied(to_string(ur) + " holds no amoebot");
  if (world.pins() < 2) throw InvalidPinCount("stripes need two pins per bond");
  return r;
}

}  // namespace

StripeResult stripe_identifiers(World& world, Dir d, GridCoord ur) {
  const int r = reference_index(world, ur);
  PascProgram prog(world, stripe_visits(world, d, r));
  StripeResult res;
  res.ids.resize(world.size());
  prog.set_observer([&](int u, int, int, const PascVisit& v) { res.ids[u].bits.push_back(v.bit0); });
  res.rounds = drive(world, prog, [&] { return prog.done(); });
  res.iterations = prog.iterations();
  return res;
}

std::vector<uint8_t> stripe_algorithm(World& world, GridCoord u, Dir d, long* rounds) {
  // the axis along d is the stripe of u perpendicular to the rotated direction
  StripeResult sr = stripe_identifiers(world, rotate(d, 90), u);
  if (rounds) *rounds = sr.rounds;
  std::vector<uint8_t> out(world.size());
  for (int v = 0; v < world.size(); ++v) {
    bool zero = true;
    for (auto b : sr.ids[v].bits) zero &= b == 0;
    out[v] = zero;
  }
  return out;
}

MaximaResult global_maxima(World& world, const std::vector<uint8_t>& R, Dir d, int confirm) {
  bool any = false;
  for (auto f : R) any |= f != 0;
  if (!any) throw EmptySubset("maxima of an empty subset");
  if (world.pins() < 2) throw InvalidPinCount("maxima need two pins per bond");
  const long start = world.round();
  MaximaResult res;

  auto el = elect_global(world, R, confirm);
  int ref = -1, c = 0;
  for (int u = 0; u < world.size(); ++u)
    if (R[u] && el.leader[c++]) {
      if (ref >= 0) throw ProtocolViolation("two references elected");
      ref = u;
    }
  res.reference = world.coord(ref);

  // full run: every amoebot counts the iterations and keeps its sign bit
  PascProgram full(world, stripe_visits(world, d, ref));
  std::vector<uint8_t> sign(world.size(), 0);
  full.set_observer([&](int u, int, int, const PascVisit& v) { sign[u] = v.bit0; });
  drive(world, full, [&] { return full.done(); });
  const int T = full.iterations();
  res.bits = T;

  std::vector<uint8_t> alive(world.size());
  for (int u = 0; u < world.size(); ++u) alive[u] = R[u] && sign[u] == 0;
  for (int b = T - 1; b >= 0; --b) {
    PascProgram replay(world, stripe_visits(world, d, ref), b + 1);
    std::vector<uint8_t> bit(world.size(), 0);
    replay.set_observer([&](int u, int, int it, const PascVisit& v) {
      if (it == b) bit[u] = v.bit0;
    });
    drive(world, replay, [&] { return replay.done(); });
    // most significant bit first: a transmitter holding 0 that hears a 1 stops
    if (broadcast(world, [&](int u) { return alive[u] && bit[u]; }))
      for (int u = 0; u < world.size(); ++u)
        if (!bit[u]) alive[u] = 0;
  }
  res.flags = alive;
  res.rounds = world.round() - start;
  return res;
}

int f_d_oracle_hook(const World& world, const std::vector<uint8_t>& R, GridCoord w, Dir d) {
  Structure members;
  for (int u = 0; u < world.size(); ++u)
    if (R[u]) members.push_back(world.coord(u));
  return oracle::f_d(members, w, d);
}

}  // namespace amoebot
