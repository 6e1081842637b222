#include "cubelab/genus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cubelab/components.hpp"
#include "cubelab/cycles.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

constexpr uint64_t kExcessTag = 0xE7CE55ULL;

void check_threshold(uint32_t s_threshold) {
  if (s_threshold < 4 || s_threshold > 12 || (s_threshold & 1))
    throw std::invalid_argument(
        "genus bound: s_threshold must be even and in [4, 12]");
}

}  // namespace

GenusBound genus_lower_bound(const PercolationSample& s, uint32_t rep,
                             uint32_t s_threshold) {
  check_threshold(s_threshold);
  const ComponentLabeling labeling = label_components(s);
  const ComponentInfo& comp = labeling.info(rep);  // throws on unknown rep

  Bitset filter(s.dim.vertex_count());
  for (uint32_t v : labeling.members(rep)) filter.set(v);
  const CycleCensus census = census_short_cycles(s, s_threshold, filter);

  GenusBound out;
  out.vertices = comp.size;
  out.edges = comp.edges;
  out.excess = int64_t(comp.edges) - int64_t(comp.size);
  out.kappa = 1;

  bool first = true;
  for (uint32_t t = 4; t <= s_threshold; t += 2) {
    const uint64_t short_cycles = census.total_up_to(t);
    const double long_faces = 2.0 * double(comp.edges) / double(t);
    const double faces = std::max(1.0, 2.0 * double(short_cycles) + long_faces);
    const double raw = std::ceil((double(out.excess) - faces + 2.0) / 2.0);
    const int64_t bound = std::max<int64_t>(0, int64_t(raw));
    if (first || bound > out.lower_bound) {
      first = false;
      out.threshold = t;
      out.short_cycle_count = short_cycles;
      out.long_face_bound = long_faces;
      out.face_bound = faces;
      out.lower_bound = bound;
    }
  }
  return out;
}

GenusBound genus_lower_bound_multi(const PercolationSample& s,
                                   uint32_t s_threshold) {
  check_threshold(s_threshold);
  const ComponentLabeling labeling = label_components(s);
  const uint64_t n = s.dim.vertex_count();
  const uint64_t e = s.retained_count();
  const CycleCensus census = census_short_cycles(s, s_threshold);

  GenusBound out;
  out.vertices = n;
  out.edges = e;
  out.excess = int64_t(e) - int64_t(n);
  out.kappa = labeling.components().size();

  bool first = true;
  for (uint32_t t = 4; t <= s_threshold; t += 2) {
    const uint64_t short_cycles = census.total_up_to(t);
    const double long_faces = 2.0 * double(e) / double(t);
    const double faces = 2.0 * double(short_cycles) + long_faces;
    const double raw = std::floor(
        (double(e) - double(n) - faces + double(out.kappa) + 1.0) / 2.0);
    const int64_t bound = std::max<int64_t>(0, int64_t(raw));
    if (first || bound > out.lower_bound) {
      first = false;
      out.threshold = t;
      out.short_cycle_count = short_cycles;
      out.long_face_bound = long_faces;
      out.face_bound = faces;
      out.lower_bound = bound;
    }
  }
  return out;
}

uint32_t default_face_threshold(Dimension dim) {
  const double root = std::sqrt(std::log(double(dim.d())));
  const uint32_t s = 2 * uint32_t(std::ceil(root));
  return std::min<uint32_t>(12, std::max<uint32_t>(4, s));
}

ExcessStats excess_experiment(uint32_t d, double epsilon, uint32_t trials,
                              uint64_t seed) {
  if (trials == 0)
    throw std::invalid_argument("excess_experiment: trials must be positive");
  const Dimension dim(d);
  const double p = (1.0 + epsilon) / double(d);

  ExcessStats stats;
  stats.d = d;
  stats.epsilon = epsilon;
  stats.trials = trials;
  stats.seed = seed;
  stats.fractions.reserve(trials);
  const double n = double(dim.vertex_count());
  for (uint32_t trial = 0; trial < trials; ++trial) {
    const PercolationSample sm =
        sample(dim, p, trial_seed(seed, trial, kExcessTag));
    const ComponentLabeling labeling = label_components(sm);
    const ComponentInfo& l1 = labeling.largest();
    stats.fractions.push_back(
        double(int64_t(l1.edges) - int64_t(l1.size)) / n);
  }
  stats.summary = summarize(stats.fractions);
  return stats;
}

}  // namespace cubelab
