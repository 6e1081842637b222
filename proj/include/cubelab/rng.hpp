#pragma once

#include <cstdint>

namespace cubelab {

// 64-bit finalizer (Murmur3 fmix64). Bijective on uint64, so distinct inputs
// never collide.
constexpr uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

// Stateless per-edge stream: the Bernoulli draw for edge e depends only on
// (seed, e). Generation order and thread count can never change a sample.
constexpr uint64_t edge_stream(uint64_t seed, uint64_t edge) {
  return mix64(seed ^ mix64(edge + 0x9e3779b97f4a7c15ULL));
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double unit_double(uint64_t bits) {
  return double(bits >> 11) * 0x1.0p-53;
}

// Seed for sprinkling round r derived from a master seed.
constexpr uint64_t round_seed(uint64_t seed, uint32_t round) {
  return seed ^ mix64(0xC0FFEEULL + round);
}

// Per-trial seed for experiment harnesses: mixes the master seed, the trial
// index and a tag identifying the experiment kind.
constexpr uint64_t trial_seed(uint64_t master, uint64_t trial, uint64_t tag) {
  return mix64(mix64(master ^ mix64(tag)) + trial);
}

}  // namespace cubelab
