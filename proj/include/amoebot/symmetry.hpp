#pragma once

#include <cstdint>
#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/skeleton.hpp"
#include "amoebot/types.hpp"

namespace amoebot {

// One symbol in 0..7 per occurrence: the successor's side counted from d_p in
// the handedness of s. With s = - the path is read backwards from the split.
struct EncodedPath {
  ChainRef chain;
  std::vector<uint8_t> codes;
  int size() const { return chain.size(); }
};
EncodedPath encode_skeleton_path(const Skeleton& sk);

constexpr int kEta = 44;  // shorter strings are compared symbol by symbol

struct PitParams {
  int l = 0;       // prime bit length
  long lambda = 0;
  long k = 0;      // block length
};
PitParams pit_params(int m);

struct PrimeResult {
  long p = 0;
  int attempts = 0;
};
// A0 samples candidates in [2m, 4m), which fit in l bits; blocks of the chain test
// divisors in parallel. Throws PrimeGenerationExhausted after 3cl^2 attempts.
PrimeResult generate_prime(World& world, const ChainRef& chain, const std::vector<uint8_t>& block_marks, int c);

// sum a_i r^i mod p
long evaluate_polynomial(const std::vector<uint8_t>& coeffs, long p, long r);

struct EqualityResult {
  bool equal = false;
  bool same_length = false;
  bool deterministic = false;
  long prime = 0;
  int prime_attempts = 0;
  int repetitions = 0;
  long rounds = 0;
};
// repetitions < 0 means c * ceil(log2 m).
EqualityResult string_equality(World& world, const EncodedPath& a, const EncodedPath& b, int c,
                               int repetitions = -1);

SymmetryReport detect_symmetries(World& world, int c, int confirm);

}  // namespace amoebot
