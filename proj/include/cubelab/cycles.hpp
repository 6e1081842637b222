#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubelab/expansion.hpp"
#include "cubelab/sample.hpp"
#include "cubelab/tree_decomp.hpp"

namespace cubelab {

/// A concrete cycle in a sample: vertices in cyclic order, every consecutive
/// pair (wrapping) a retained edge, all vertices distinct. Shortest possible
/// length is 4 since the host cube is bipartite.
struct CycleCertificate {
  std::vector<uint32_t> vertices;
  uint64_t length() const { return vertices.size(); }
};

/// Throws invalid_argument describing the first violation if the certificate
/// is not a genuine cycle of the sample.
void check_cycle(const CycleCertificate& cert, const PercolationSample& s);

/// Exact cycle counts by length. counts[s] is the number of distinct cycles
/// of length s for even s in [4, max_length]; other entries are zero (the
/// host is bipartite, so odd cycles cannot occur).
struct CycleCensus {
  uint32_t max_length = 0;
  std::vector<uint64_t> counts;  // indexed by length, size max_length + 1

  uint64_t total() const;
  uint64_t total_up_to(uint32_t s) const;
};

/// Count every cycle of length <= max_length exactly once. Each cycle is
/// enumerated from its smallest vertex, walking toward its smaller neighbor
/// first, which realizes the minimal rotation/reflection keying without
/// materializing keys. Requires 4 <= max_length <= 12 (the enumeration is
/// exponential in max_length).
CycleCensus census_short_cycles(const PercolationSample& s,
                                uint32_t max_length);

/// Same, restricted to the induced subgraph on filter's set bits.
CycleCensus census_short_cycles(const PercolationSample& s,
                                uint32_t max_length, const Bitset& filter);

/// Number of 4-cycles in the full host cube: C(d,2) * 2^(d-2). A 4-cycle
/// picks two directions and fixes the remaining coordinates.
uint64_t host_four_cycles(Dimension dim);

/// Number of 6-cycles in the full host cube: C(d,3) * 2^(d-3) * 16. Every
/// 6-cycle spans exactly three directions, and each 3-subcube holds 16.
uint64_t host_six_cycles(Dimension dim);

/// Randomized long-cycle search: grow a path depth-first from a random root
/// (all roots drawn from the even parity class), at dead ends apply
/// rotations that flip a path suffix along a retained chord, and whenever
/// the current endpoint sees the root check whether closing beats the best
/// cycle so far. Best over `restarts` independent roots inside the largest
/// component; nullopt when nothing closed (acyclic samples). The result is
/// re-checked before returning. No optimality claim. seed 0 derives one
/// from the sample seed.
std::optional<CycleCertificate> long_cycle_search(const PercolationSample& s,
                                                  uint32_t restarts = 30,
                                                  uint64_t seed = 0);

/// Branch sets of a complete-minor model: pairwise disjoint vertex sets,
/// each inducing a connected subgraph of the sample, every pair joined by at
/// least one retained edge.
struct MinorCertificate {
  uint32_t t = 0;  // must equal branch_sets.size()
  std::vector<std::vector<uint32_t>> branch_sets;
};

/// First-violation check of a minor certificate against a sample. pass with
/// empty violation, or fail and a one-line description naming the offending
/// set or pair.
struct MinorValidation {
  bool pass = false;
  std::string violation;
};

MinorValidation validate_minor(const MinorCertificate& cert,
                               const PercolationSample& s);

/// Greedy clique-minor construction inside the largest component. Seeds the
/// branch sets with the `target_t` largest pieces that lie in the largest
/// component, then repeatedly takes the pair of sets with the fewest
/// established adjacencies and joins them by a shortest retained path
/// through free vertices (vertices of no branch set), absorbing the path
/// interior into the first set of the pair. Pairs with no such path are
/// marked impossible. When every pair is settled (or `budget` joins were
/// attempted; 0 means no cap), sets are greedily dropped, fewest adjacencies
/// first, until the survivors are pairwise adjacent. Falls back to a
/// two-set certificate from the smallest retained edge if fewer than two
/// sets survive, and to a single branch set holding vertex 0 on an edgeless
/// sample. target_t 0 uses ceil(sqrt(n)/d^3), raised to at least 2. The
/// returned certificate always passes validate_minor.
MinorCertificate build_minor(const PercolationSample& s,
                             const std::vector<PieceDecomposition>& pieces,
                             uint32_t target_t, uint64_t budget = 0);

/// The target order build_minor falls back to: max(2, ceil(sqrt(n) / d^3)).
uint32_t default_minor_target(Dimension dim);

/// Contrapositive separator probe: runs the sparse-cut heuristic `samples`
/// times (distinct derived seeds) over the window [|L1|/4, |L1|/2], takes
/// the smallest vertex boundary seen, and turns it into the minor order
/// that much expansion certifies: implied_t = beta_vertex * sqrt(n) /
/// (C d^3 (ln d)^3) with C = 1, which collapses to min_boundary / sqrt(n).
/// Degenerate samples (largest component a single vertex) report zeros.
struct SeparatorReport {
  uint32_t requested_t = 0;
  uint32_t runs = 0;
  uint64_t largest_component = 0;
  uint64_t min_vertex_boundary = 0;
  double beta_vertex = 0;
  double constant_c = 1.0;
  double implied_t = 0;
};

SeparatorReport separator_refutation(const PercolationSample& s, uint32_t t,
                                     uint32_t samples);

/// JSON round-trip for certificates, so external tools can re-validate them.
/// Cycles: {"kind":"cycle","length":L,"vertices":[...]}; minors:
/// {"kind":"minor","t":T,"branch_sets":[[...],...]}. Parsers throw
/// invalid_argument on wrong kind or malformed fields.
std::string cycle_to_json(const CycleCertificate& cert);
CycleCertificate cycle_from_json(const std::string& text);
std::string minor_to_json(const MinorCertificate& cert);
MinorCertificate minor_from_json(const std::string& text);

}  // namespace cubelab
