#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/bitset.hpp"
#include "cubelab/cube.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

/// One Bernoulli(p) bond-percolation draw on Q^d. `edges` is indexed by the
/// dense edge numbering from cube.hpp. `p` records the marginal retention
/// probability (composed across rounds after sprinkling); `seed` records the
/// stream the most recent round was drawn from.
struct PercolationSample {
  Dimension dim;
  double p;
  uint64_t seed;
  Bitset edges;

  bool has_edge_id(uint64_t idx) const { return edges.test(idx); }

  bool has_edge(uint32_t v, uint32_t direction) const {
    return edges.test(edge_index(canonical_edge(v, direction, dim), dim));
  }

  uint64_t retained_count() const { return edges.count(); }
};

/// A sequence of sprinkling rounds q_1..q_k. Composing all rounds on an empty
/// start yields marginal 1 - prod(1 - q_i) per edge.
struct SprinklePlan {
  std::vector<double> rounds;

  double composed_probability() const {
    double keep_out = 1.0;
    for (double q : rounds) keep_out *= (1.0 - q);
    return 1.0 - keep_out;
  }
};

/// Draw a fresh sample: edge e is retained iff the per-edge uniform derived
/// from (seed, e) falls below p. O(n*d/2).
PercolationSample sample(Dimension dim, double p, uint64_t seed);

/// The top-up probability q2 with (1-q1)(1-q2) = 1-p, i.e. sprinkling q2 on
/// top of a q1 draw reproduces the marginal p. Requires 0 <= q1 <= p <= 1 and
/// q1 < 1.
double residual_probability(double p, double q1);

/// Union the base draw with a fresh independent Bernoulli(q) round drawn from
/// `seed`. The caller must pass a seed distinct from base.seed (and from any
/// earlier round); round_seed() is the intended derivation. The result
/// contains base.edges and records the composed marginal.
PercolationSample sprinkle(const PercolationSample& base, double q,
                           uint64_t seed);

/// Binary round-trip. Layout: 8-byte magic "CUBESMP1", u32 d, u32 zero, the
/// IEEE-754 bits of p, u64 seed, then the edge bitset as little-endian u64
/// words. save/load are bit-exact inverses.
void save_sample(const PercolationSample& s, const std::string& path);
PercolationSample load_sample(const std::string& path);

}  // namespace cubelab
