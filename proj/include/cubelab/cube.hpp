#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubelab {

/// Hypercube dimension. Vertices are the integer codes [0, 2^d); two vertices
/// are adjacent iff their codes differ in exactly one bit. d is capped at 30
/// so vertex codes fit comfortably in 32 bits and edge ids in 64.
class Dimension {
 public:
  static constexpr uint32_t kMinD = 2;
  static constexpr uint32_t kMaxD = 30;

  explicit Dimension(uint32_t d) : d_(d) {
    if (d < kMinD || d > kMaxD)
      throw std::invalid_argument("Dimension: d must be in [2, 30], got " +
                                  std::to_string(d));
  }

  uint32_t d() const { return d_; }
  uint64_t vertex_count() const { return uint64_t(1) << d_; }
  uint64_t edge_count() const { return (vertex_count() >> 1) * d_; }  // n*d/2
  bool contains(uint64_t code) const { return code < vertex_count(); }

  bool operator==(const Dimension&) const = default;

 private:
  uint32_t d_;
};

inline void check_vertex(uint64_t v, Dimension dim, const char* where) {
  if (!dim.contains(v))
    throw std::out_of_range(std::string(where) + ": vertex code " +
                            std::to_string(v) + " out of range for d=" +
                            std::to_string(dim.d()));
}

inline void check_direction(uint32_t i, Dimension dim, const char* where) {
  if (i >= dim.d())
    throw std::out_of_range(std::string(where) + ": direction " +
                            std::to_string(i) + " out of range for d=" +
                            std::to_string(dim.d()));
}

/// An edge named by its endpoint with the crossing bit cleared plus the
/// crossing direction. This is the canonical form: base has bit `direction`
/// equal to 0 and the other endpoint is base | (1 << direction).
struct EdgeId {
  uint32_t base;
  uint32_t direction;
  bool operator==(const EdgeId&) const = default;
};

inline EdgeId canonical_edge(uint32_t v, uint32_t i, Dimension dim) {
  check_vertex(v, dim, "canonical_edge");
  check_direction(i, dim, "canonical_edge");
  return EdgeId{v & ~(uint32_t(1) << i), i};
}

// Dense edge numbering. For direction i the bases are exactly the vertices
// with bit i cleared; dropping that bit from the code enumerates them as
// 0..n/2-1, and the flat index is base_compact * d + direction. This is a
// bijection onto [0, n*d/2).
inline uint64_t edge_index(EdgeId e, Dimension dim) {
  check_direction(e.direction, dim, "edge_index");
  check_vertex(e.base, dim, "edge_index");
  const uint32_t i = e.direction;
  if ((e.base >> i) & 1u)
    throw std::invalid_argument("edge_index: base has direction bit set");
  const uint32_t low = e.base & ((uint32_t(1) << i) - 1);
  const uint64_t compact = (uint64_t(e.base) >> (i + 1)) << i | low;
  return compact * dim.d() + i;
}

inline EdgeId edge_from_index(uint64_t idx, Dimension dim) {
  if (idx >= dim.edge_count())
    throw std::out_of_range("edge_from_index: index " + std::to_string(idx) +
                            " out of range for d=" + std::to_string(dim.d()));
  const uint32_t i = uint32_t(idx % dim.d());
  const uint64_t compact = idx / dim.d();
  const uint32_t low = uint32_t(compact) & ((uint32_t(1) << i) - 1);
  const uint32_t base = uint32_t(compact >> i) << (i + 1) | low;
  return EdgeId{base, i};
}

/// Neighbors of v in increasing direction order (d of them).
inline std::vector<uint32_t> neighbors(uint32_t v, Dimension dim) {
  check_vertex(v, dim, "neighbors");
  std::vector<uint32_t> out;
  out.reserve(dim.d());
  for (uint32_t i = 0; i < dim.d(); ++i) out.push_back(v ^ (uint32_t(1) << i));
  return out;
}

/// Hamming weight of the code; layer k holds C(d, k) vertices.
inline uint32_t layer(uint32_t v) { return uint32_t(std::popcount(v)); }

/// Bipartition class of v (layer parity). No edge joins equal parities.
inline uint32_t parity(uint32_t v) { return layer(v) & 1u; }

}  // namespace cubelab
