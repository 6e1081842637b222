#pragma once

#include <cstdint>
#include <vector>

#include "cubelab/components.hpp"
#include "cubelab/sample.hpp"

namespace cubelab {

/// A rooted tree over a subset of Q^d's vertices. order[] lists vertices in
/// BFS order starting at the root; parent[] and depth[] are indexed in
/// parallel (parent[0] == -1). Children were enqueued in increasing direction
/// order, which fixes the layout deterministically.
struct RootedTree {
  uint32_t root = 0;
  std::vector<uint32_t> order;
  std::vector<int32_t> parent;
  std::vector<uint32_t> depth;

  size_t size() const { return order.size(); }
};

/// BFS spanning tree of rep's component, rooted at rep. rep must be the
/// smallest vertex code in its component (a representative as produced by
/// label_components); anything else is a domain error.
RootedTree spanning_tree(const PercolationSample& s, uint32_t rep);

/// Build a rooted tree directly from parent codes (for trees that do not live
/// inside a sample, e.g. randomly generated ones). parent_code[i] gives the
/// parent of vertex_code[i]; the root has parent_code equal to its own code.
RootedTree tree_from_parents(const std::vector<uint32_t>& vertex_code,
                             const std::vector<uint32_t>& parent_code);

struct DecompositionParams {
  uint64_t ell;               // target piece size, >= 1
  uint32_t degree_cap;        // C1: must dominate the max degree of the tree
  uint32_t common_degree_cap; // C2 <= C1: degree bound holding off r vertices
  uint64_t high_degree_count; // r: how many vertices may exceed C2
};

/// Partition of one component into connected pieces, sizes non-increasing.
struct PieceDecomposition {
  uint32_t host_component;  // representative of the component decomposed
  std::vector<std::vector<uint32_t>> pieces;
};

/// Peel the tree into connected pieces of size in [ell, degree_cap * ell].
///
/// Repeatedly take a vertex v of maximal depth whose remaining subtree has
/// order >= ell (ties: smallest vertex code), cut that subtree off as a
/// piece, and continue on the remainder; when the remainder drops below ell
/// it is merged into the piece created last. Pieces are then reordered by
/// non-increasing size. With all but high_degree_count vertices of degree
/// <= common_degree_cap, at most that many pieces exceed
/// common_degree_cap * ell, and those sort to the front.
///
/// Requires tree.size() >= ell and degree_cap >= max degree of the tree.
PieceDecomposition decompose(const RootedTree& tree,
                             const DecompositionParams& params);

/// Decompose every component of order >= threshold (threshold >= ell).
/// Per component: C1 = d, C2 = ceil(ln d), r = number of vertices whose
/// sample degree is >= ln d. The union of all pieces equals the vertex set
/// covered by large_vertex_set(threshold).
std::vector<PieceDecomposition> piece_cover(const PercolationSample& s,
                                            uint64_t threshold, uint64_t ell);

/// Flatten a cover into one list of pieces (order preserved).
std::vector<std::vector<uint32_t>> flatten_pieces(
    const std::vector<PieceDecomposition>& cover);

}  // namespace cubelab
