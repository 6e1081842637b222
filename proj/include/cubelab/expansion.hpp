#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/components.hpp"
#include "cubelab/sample.hpp"
#include "cubelab/tree_decomp.hpp"

namespace cubelab {

/// Boundary sizes of a vertex set S, in the host cube and in the sample.
/// edge counts are edges with exactly one endpoint in S; vertex counts are
/// vertices outside S joined to S by such an edge.
struct CutReport {
  uint64_t set_size = 0;
  uint64_t edge_boundary_host = 0;
  uint64_t edge_boundary_sample = 0;
  uint64_t vertex_boundary_host = 0;
  uint64_t vertex_boundary_sample = 0;
};

/// Exact boundary counts for S (must be nonempty, all codes in range).
CutReport cut_report(const PercolationSample& s,
                     const std::vector<uint32_t>& set);

/// Members of the sample vertex boundary of S, ascending codes.
std::vector<uint32_t> sample_vertex_boundary(const PercolationSample& s,
                                             const std::vector<uint32_t>& set);

/// Vertex-isoperimetry floor in the host cube: writing
/// |A| = sum_{i<=k} C(d,i) + lam*C(d,k+1) with lam in [0,1), a set of that
/// size has at least (1-lam)*C(d,k) + lam*C(d,k+1) vertices matchable into
/// its complement. Requires 1 <= set_size <= 2^d / 2.
struct IsoBound {
  uint32_t k;
  double lambda;
  double bound;
};

IsoBound iso_matching_bound(Dimension dim, uint64_t set_size);

/// Certify the floor on a concrete set by maximum bipartite matching between
/// A and its complement over host edges. Exact; d <= 10 only.
struct IsoCheck {
  IsoBound bound;
  uint64_t matching_size;
  bool pass;  // matching_size >= bound.bound
};

IsoCheck verify_iso_matching(Dimension dim, const std::vector<uint32_t>& set);

/// Split the largest component at the equator: S = members with layer
/// < ceil(d/2). Reports the boundary of S plus both side sizes.
struct MiddleLayerReport {
  CutReport cut;
  uint64_t below;  // |S|
  uint64_t above;  // |L1| - |S|
};

MiddleLayerReport middle_layer_probe(const PercolationSample& s);

/// A (possibly heuristic) witness for the sparsest sample cut found over a
/// probe family. beta_edge normalizes the best edge boundary by
/// n / (d^3 (ln d)^2), beta_vertex the best vertex boundary by
/// n / (d^3 (ln d)^3); natural logs throughout.
struct ExpansionCertificate {
  uint32_t d = 0;
  double alpha = 0;             // size floor: |S| >= alpha * n
  uint64_t set_size = 0;        // best S by sample edge boundary
  std::vector<uint32_t> set;    // its members, ascending
  uint64_t edge_boundary = 0;   // min sample edge boundary seen
  uint64_t vertex_boundary = 0; // min sample vertex boundary seen
  double beta_edge = 0;
  double beta_vertex = 0;
  bool exhaustive = false;      // true when every admissible S was scanned
  std::string probe_inventory;  // which probes ran
};

/// Exhaustive sparsest cut over all S inside the largest component with
/// size_lo <= |S| <= size_hi, minimizing the sample edge boundary (first
/// minimum in enumeration order wins). Only for |L1| <= 26.
ExpansionCertificate worst_cut_exact(const PercolationSample& s,
                                     uint64_t size_lo, uint64_t size_hi);

struct WorstCutOptions {
  uint64_t move_budget = 0;    // local-search moves; 0 = 50 * |L1|
  uint32_t random_starts = 8;  // random subsets of the window
  uint32_t partition_starts = 6;  // piece-built balanced bipartitions
  uint32_t droplet_starts = 0; // greedy connected growths; 0 = auto
                               // (every member when |L1| <= 1024, else 2d)
  uint64_t piece_ell = 0;      // 0 = ceil(d^1.5)
  uint64_t seed = 0;           // 0 = derived from the sample seed
};

/// Probe family plus first-improvement local search for a sparse cut of the
/// largest component, over the size window [ceil(alpha*n), |L1|/2]:
/// the equator split, every coordinate halving, piece-respecting random
/// balanced bipartitions, random window-sized sets, and greedy connected
/// droplets grown one cheapest frontier vertex at a time (these find chunks
/// hanging behind narrow bridges). Every probe is refined by single-vertex
/// moves that only ever lower the sample edge boundary.
/// Requires a window that is nonempty against |L1| (alpha too large for the
/// component is a domain error).
ExpansionCertificate worst_cut_heuristic(const PercolationSample& s,
                                         double alpha,
                                         const WorstCutOptions& opt = {});

/// CSV rows for certificates: columns d,epsilon,seed,alpha,S_size,
/// edge_boundary,vertex_boundary,beta_edge,beta_vertex,probe_kind.
std::string certificates_csv(const std::vector<ExpansionCertificate>& certs,
                             double epsilon, uint64_t seed);

/// Two-class piece partition probe. Pieces are assigned to class A or B;
/// D is the intersection of the closed sample neighborhoods N(A) and N(B).
/// When |D| >= threshold the probe counts A-B paths of length <= 2 through
/// same-parity vertices of D; otherwise it builds a greedy host matching F
/// from N(A) into its complement (code-order scan) and counts A-B paths of
/// length <= 3 through the matched pairs (skipping pairs touching D). Path
/// edges are read from the union of the first-round sample and a fresh
/// Bernoulli(q2) round drawn from `seed`; distinct witnesses never share an
/// edge (same-parity hubs in the first case, vertex-disjoint pairs in the
/// second).
struct PartitionProbe {
  std::vector<uint32_t> class_a;  // union of A-pieces, ascending
  std::vector<uint32_t> class_b;
  std::vector<uint32_t> shared;   // D, ascending
  std::vector<std::pair<uint32_t, uint32_t>> matching;  // F (second case)
  bool used_large_case = false;
  uint64_t found_paths = 0;
};

struct PartitionProbeOptions {
  double min_side_fraction = 0.01;   // each class must hold >= this * n
  double shared_threshold_factor = 0.25;  // large case iff |D| >= f*n/sqrt(d)
};

PartitionProbe partition_probe(const PercolationSample& s1,
                               const std::vector<std::vector<uint32_t>>& pieces,
                               const std::vector<uint8_t>& assignment,
                               double q2, uint64_t seed,
                               const PartitionProbeOptions& opt = {});

}  // namespace cubelab
