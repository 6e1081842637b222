#pragma once

#include <cstdint>
#include <vector>

#include "cubelab/sample.hpp"
#include "cubelab/stats.hpp"

namespace cubelab {

/// Euler-formula genus lower bound for a graph with a known face-count
/// ceiling. With f faces, genus g = (e - v - f + 2) / 2 for connected
/// graphs, so an upper bound on f gives a lower bound on g. Faces of length
/// <= threshold are bounded by twice the count of cycles that short (a short
/// face's boundary walk contains a short cycle, and one cycle bounds at most
/// two faces); longer faces by 2e/threshold since each edge borders at most
/// two faces.
struct GenusBound {
  uint64_t vertices = 0;
  uint64_t edges = 0;
  int64_t excess = 0;             // edges - vertices
  uint32_t threshold = 0;         // the face-length cutoff s that won the scan
  uint64_t short_cycle_count = 0; // cycles of length <= threshold
  double long_face_bound = 0;     // 2 e / threshold
  double face_bound = 0;          // the full ceiling on f used in the formula
  uint64_t kappa = 1;             // component count (1 in the per-component form)
  int64_t lower_bound = 0;        // clamped to >= 0
};

/// Bound for a single component (by representative; unknown representatives
/// are a domain error). The connected form of the formula is
/// g >= ceil((excess - f + 2) / 2) with f = max(1, 2 * cycles<=s + 2e/s);
/// the max(1, ...) floor covers acyclic components, whose single face the
/// cycle proxy cannot see. Every even s in [4, s_threshold] is evaluated and
/// the best (largest) bound is returned, ties to the smallest s.
/// s_threshold must be even and in [4, 12].
GenusBound genus_lower_bound(const PercolationSample& s, uint32_t rep,
                             uint32_t s_threshold);

/// Whole-sample variant counting all n vertices and every component:
/// g >= floor((e - n - f + kappa + 1) / 2) with f = 2 * cycles<=s + 2e/s,
/// clamped to >= 0, best even s as above.
GenusBound genus_lower_bound_multi(const PercolationSample& s,
                                   uint32_t s_threshold);

/// Default face-length cutoff: even, at least 4, at most 12, growing like
/// 2 sqrt(ln d). Equals 4 for every d below several thousand.
uint32_t default_face_threshold(Dimension dim);

/// Monte Carlo distribution of excess(L1)/n at p = (1 + epsilon)/d over
/// independent trials. epsilon > -1 and (1 + epsilon)/d <= 1 required;
/// supercritical behaviour needs epsilon > 0 but subcritical probes are
/// allowed.
struct ExcessStats {
  uint32_t d = 0;
  double epsilon = 0;
  uint32_t trials = 0;
  uint64_t seed = 0;
  std::vector<double> fractions;  // excess(L1)/n, trial order
  Summary summary;
};

ExcessStats excess_experiment(uint32_t d, double epsilon, uint32_t trials,
                              uint64_t seed);

}  // namespace cubelab
