#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubelab/bitset.hpp"
#include "cubelab/sample.hpp"

namespace cubelab {

struct ComponentInfo {
  uint32_t rep;    // smallest vertex code in the component
  uint64_t size;   // vertex count
  uint64_t edges;  // retained edges with both endpoints inside
};

/// Connected components of a percolation sample. Every vertex of Q^d belongs
/// to exactly one component (isolated vertices are singletons); the
/// representative of a component is its smallest vertex code.
class ComponentLabeling {
 public:
  ComponentLabeling(Dimension dim, std::vector<uint32_t> rep,
                    std::vector<ComponentInfo> comps);

  Dimension dim() const { return dim_; }

  /// Representative of v's component.
  uint32_t rep_of(uint32_t v) const;

  /// Components sorted by representative code.
  const std::vector<ComponentInfo>& components() const { return comps_; }

  const ComponentInfo& info(uint32_t rep) const;

  /// Largest component; ties go to the smallest representative code.
  const ComponentInfo& largest() const { return comps_[largest_idx_]; }

  /// Size of the second-largest component, 0 when there is only one.
  uint64_t second_largest_size() const { return second_size_; }

  /// edges - size of the component; -1 for trees, >= 0 once there is a cycle.
  int64_t excess(uint32_t rep) const;

  /// All vertices of the component, ascending codes. O(n) scan.
  std::vector<uint32_t> members(uint32_t rep) const;

  /// Number of vertices living in components of order <= cap.
  uint64_t small_component_mass(uint64_t cap) const;

 private:
  Dimension dim_;
  std::vector<uint32_t> rep_;
  std::vector<ComponentInfo> comps_;
  size_t largest_idx_ = 0;
  uint64_t second_size_ = 0;
};

/// Membership bitset of all vertices whose component has order >= threshold.
struct LargeVertexSet {
  uint64_t threshold;
  Bitset members;
};

/// Union-find labeling of the sample, path compression + union by size.
ComponentLabeling label_components(const PercolationSample& s);

LargeVertexSet large_vertex_set(const ComponentLabeling& l, uint64_t threshold);

/// Component-size histogram as CSV text, columns size,count, ascending size.
std::string size_histogram_csv(const ComponentLabeling& l);

}  // namespace cubelab
