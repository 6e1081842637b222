#include "cubelab/tree_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace cubelab {

RootedTree spanning_tree(const PercolationSample& s, uint32_t rep) {
  const Dimension dim = s.dim;
  check_vertex(rep, dim, "spanning_tree");

  RootedTree t;
  t.root = rep;
  t.order.push_back(rep);
  t.parent.push_back(-1);
  t.depth.push_back(0);

  Bitset visited(dim.vertex_count());
  visited.set(rep);
  for (size_t head = 0; head < t.order.size(); ++head) {
    const uint32_t v = t.order[head];
    for (uint32_t i = 0; i < dim.d(); ++i) {
      if (!s.has_edge(v, i)) continue;
      const uint32_t w = v ^ (uint32_t(1) << i);
      if (w < rep)
        throw std::invalid_argument(
            "spanning_tree: rep is not the smallest code in its component");
      if (visited.test(w)) continue;
      visited.set(w);
      t.order.push_back(w);
      t.parent.push_back(int32_t(head));
      t.depth.push_back(t.depth[head] + 1);
    }
  }
  return t;
}

RootedTree tree_from_parents(const std::vector<uint32_t>& vertex_code,
                             const std::vector<uint32_t>& parent_code) {
  if (vertex_code.size() != parent_code.size() || vertex_code.empty())
    throw std::invalid_argument("tree_from_parents: bad input sizes");
  const size_t n = vertex_code.size();

  std::unordered_map<uint32_t, size_t> pos;
  pos.reserve(n * 2);
  for (size_t i = 0; i < n; ++i)
    if (!pos.emplace(vertex_code[i], i).second)
      throw std::invalid_argument("tree_from_parents: duplicate vertex code");

  size_t root_pos = n;
  std::vector<std::vector<size_t>> kids(n);
  for (size_t i = 0; i < n; ++i) {
    if (parent_code[i] == vertex_code[i]) {
      if (root_pos != n)
        throw std::invalid_argument("tree_from_parents: two roots");
      root_pos = i;
      continue;
    }
    auto it = pos.find(parent_code[i]);
    if (it == pos.end())
      throw std::invalid_argument("tree_from_parents: parent not in tree");
    kids[it->second].push_back(i);
  }
  if (root_pos == n) throw std::invalid_argument("tree_from_parents: no root");

  RootedTree t;
  t.root = vertex_code[root_pos];
  t.order.push_back(t.root);
  t.parent.push_back(-1);
  t.depth.push_back(0);
  std::vector<size_t> src{root_pos};
  for (size_t head = 0; head < t.order.size(); ++head) {
    for (size_t child : kids[src[head]]) {
      src.push_back(child);
      t.order.push_back(vertex_code[child]);
      t.parent.push_back(int32_t(head));
      t.depth.push_back(t.depth[head] + 1);
    }
  }
  if (t.order.size() != n)
    throw std::invalid_argument("tree_from_parents: disconnected input");
  return t;
}

PieceDecomposition decompose(const RootedTree& tree,
                             const DecompositionParams& params) {
  const size_t n = tree.size();
  if (params.ell < 1) throw std::invalid_argument("decompose: ell must be >= 1");
  if (n < params.ell)
    throw std::invalid_argument("decompose: tree smaller than ell");
  if (params.common_degree_cap > params.degree_cap)
    throw std::invalid_argument("decompose: C2 exceeds C1");

  std::vector<std::vector<uint32_t>> children(n);
  for (size_t i = 1; i < n; ++i) children[size_t(tree.parent[i])].push_back(uint32_t(i));

  for (size_t i = 0; i < n; ++i) {
    const size_t deg = children[i].size() + (tree.parent[i] >= 0 ? 1 : 0);
    if (deg > params.degree_cap)
      throw std::invalid_argument("decompose: degree_cap below max degree");
  }

  // The peeling always cuts the deepest qualifying vertex first (ties by
  // smallest code), so one bottom-up sweep in (depth desc, code asc) order
  // reproduces the whole cut sequence: cutting never enlarges any remaining
  // subtree, and equal-depth subtrees are disjoint.
  std::vector<uint32_t> sweep(n);
  std::iota(sweep.begin(), sweep.end(), 0u);
  std::sort(sweep.begin(), sweep.end(), [&](uint32_t a, uint32_t b) {
    if (tree.depth[a] != tree.depth[b]) return tree.depth[a] > tree.depth[b];
    return tree.order[a] < tree.order[b];
  });

  std::vector<uint64_t> remaining(n, 0);  // live subtree size at vertex
  std::vector<uint8_t> cut(n, 0);         // vertex is the root of a piece
  std::vector<uint8_t> assigned(n, 0);
  std::vector<std::vector<uint32_t>> pieces;

  std::vector<uint32_t> stack;
  for (uint32_t idx : sweep) {
    uint64_t live = 1;
    for (uint32_t c : children[idx])
      if (!cut[c] && !assigned[c]) live += remaining[c];
    remaining[idx] = live;
    if (live < params.ell) continue;

    // Collect the live subtree under idx as a new piece.
    std::vector<uint32_t> piece;
    stack.assign(1, idx);
    while (!stack.empty()) {
      const uint32_t u = stack.back();
      stack.pop_back();
      assigned[u] = 1;
      piece.push_back(tree.order[u]);
      for (uint32_t c : children[u])
        if (!assigned[c]) stack.push_back(c);
    }
    cut[idx] = 1;
    pieces.push_back(std::move(piece));
  }

  // Whatever is left is the remainder around the root, of size < ell; merge
  // it into the piece created last. n >= ell guarantees at least one piece.
  std::vector<uint32_t> leftover;
  for (size_t i = 0; i < n; ++i)
    if (!assigned[i]) leftover.push_back(tree.order[i]);
  if (!leftover.empty())
    pieces.back().insert(pieces.back().end(), leftover.begin(), leftover.end());

  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  return PieceDecomposition{tree.root, std::move(pieces)};
}

std::vector<PieceDecomposition> piece_cover(const PercolationSample& s,
                                            uint64_t threshold, uint64_t ell) {
  if (ell < 1) throw std::invalid_argument("piece_cover: ell must be >= 1");
  if (threshold < ell)
    throw std::invalid_argument("piece_cover: threshold must be >= ell");

  const double log_d = std::log(double(s.dim.d()));
  const uint32_t c2 = uint32_t(std::max(1.0, std::ceil(log_d)));

  const ComponentLabeling labeling = label_components(s);
  std::vector<PieceDecomposition> cover;
  for (const ComponentInfo& comp : labeling.components()) {
    if (comp.size < threshold) continue;
    RootedTree tree = spanning_tree(s, comp.rep);

    uint64_t high = 0;
    for (uint32_t v : tree.order) {
      uint32_t deg = 0;
      for (uint32_t i = 0; i < s.dim.d(); ++i) deg += s.has_edge(v, i);
      if (double(deg) >= log_d) ++high;
    }

    DecompositionParams params{ell, s.dim.d(), std::min(c2, s.dim.d()), high};
    cover.push_back(decompose(tree, params));
  }
  return cover;
}

std::vector<std::vector<uint32_t>> flatten_pieces(
    const std::vector<PieceDecomposition>& cover) {
  std::vector<std::vector<uint32_t>> out;
  for (const PieceDecomposition& pd : cover)
    for (const auto& piece : pd.pieces) out.push_back(piece);
  return out;
}

}  // namespace cubelab
