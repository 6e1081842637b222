#include "cubelab/components.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cubelab {

namespace {

uint32_t uf_find(std::vector<uint32_t>& parent, uint32_t v) {
  uint32_t root = v;
  while (parent[root] != root) root = parent[root];
  while (parent[v] != root) {  // path compression
    uint32_t next = parent[v];
    parent[v] = root;
    v = next;
  }
  return root;
}

}  // namespace

ComponentLabeling::ComponentLabeling(Dimension dim, std::vector<uint32_t> rep,
                                     std::vector<ComponentInfo> comps)
    : dim_(dim), rep_(std::move(rep)), comps_(std::move(comps)) {
  uint64_t best = 0, second = 0;
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].size > best) {
      second = best;
      best = comps_[i].size;
      largest_idx_ = i;  // comps_ is rep-sorted, so first max = smallest rep
    } else if (comps_[i].size > second) {
      second = comps_[i].size;
    }
  }
  second_size_ = second;
}

uint32_t ComponentLabeling::rep_of(uint32_t v) const {
  check_vertex(v, dim_, "rep_of");
  return rep_[v];
}

const ComponentInfo& ComponentLabeling::info(uint32_t rep) const {
  auto it = std::lower_bound(
      comps_.begin(), comps_.end(), rep,
      [](const ComponentInfo& c, uint32_t r) { return c.rep < r; });
  if (it == comps_.end() || it->rep != rep)
    throw std::invalid_argument("ComponentLabeling: unknown representative " +
                                std::to_string(rep));
  return *it;
}

int64_t ComponentLabeling::excess(uint32_t rep) const {
  const ComponentInfo& c = info(rep);
  return int64_t(c.edges) - int64_t(c.size);
}

std::vector<uint32_t> ComponentLabeling::members(uint32_t rep) const {
  const ComponentInfo& c = info(rep);  // validates rep
  std::vector<uint32_t> out;
  out.reserve(size_t(c.size));
  for (uint64_t v = 0; v < rep_.size(); ++v)
    if (rep_[v] == rep) out.push_back(uint32_t(v));
  return out;
}

uint64_t ComponentLabeling::small_component_mass(uint64_t cap) const {
  uint64_t mass = 0;
  for (const ComponentInfo& c : comps_)
    if (c.size <= cap) mass += c.size;
  return mass;
}

ComponentLabeling label_components(const PercolationSample& s) {
  const Dimension dim = s.dim;
  const uint64_t n = dim.vertex_count();

  std::vector<uint32_t> parent(n);
  std::vector<uint32_t> size(n, 1);
  for (uint64_t v = 0; v < n; ++v) parent[v] = uint32_t(v);

  // First pass: unions. Edge ids decode as (compact base, direction).
  const uint64_t m = dim.edge_count();
  for (uint64_t e = 0; e < m; ++e) {
    if (!s.edges.test(e)) continue;
    const EdgeId id = edge_from_index(e, dim);
    uint32_t a = uf_find(parent, id.base);
    uint32_t b = uf_find(parent, id.base | (uint32_t(1) << id.direction));
    if (a == b) continue;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }

  // Representative = smallest code per root.
  std::vector<uint32_t> smallest(n);
  for (uint64_t v = 0; v < n; ++v) smallest[v] = uint32_t(v);
  for (uint64_t v = 0; v < n; ++v) {
    const uint32_t r = uf_find(parent, uint32_t(v));
    if (v < smallest[r]) smallest[r] = uint32_t(v);
  }
  std::vector<uint32_t> rep(n);
  for (uint64_t v = 0; v < n; ++v) rep[v] = smallest[uf_find(parent, uint32_t(v))];

  // Second pass: per-component edge counts, keyed by representative.
  std::map<uint32_t, ComponentInfo> by_rep;
  for (uint64_t v = 0; v < n; ++v) {
    auto [it, fresh] = by_rep.try_emplace(rep[v], ComponentInfo{rep[v], 0, 0});
    it->second.size += 1;
    (void)fresh;
  }
  for (uint64_t e = 0; e < m; ++e) {
    if (!s.edges.test(e)) continue;
    const EdgeId id = edge_from_index(e, dim);
    by_rep[rep[id.base]].edges += 1;
  }

  std::vector<ComponentInfo> comps;
  comps.reserve(by_rep.size());
  for (auto& [r, c] : by_rep) comps.push_back(c);
  return ComponentLabeling(dim, std::move(rep), std::move(comps));
}

LargeVertexSet large_vertex_set(const ComponentLabeling& l, uint64_t threshold) {
  const uint64_t n = l.dim().vertex_count();
  Bitset members(n);
  for (uint64_t v = 0; v < n; ++v)
    if (l.info(l.rep_of(uint32_t(v))).size >= threshold) members.set(v);
  return LargeVertexSet{threshold, std::move(members)};
}

std::string size_histogram_csv(const ComponentLabeling& l) {
  std::map<uint64_t, uint64_t> hist;
  for (const ComponentInfo& c : l.components()) hist[c.size] += 1;
  std::string out = "size,count\n";
  for (auto& [size, count] : hist)
    out += std::to_string(size) + "," + std::to_string(count) + "\n";
  return out;
}

}  // namespace cubelab
