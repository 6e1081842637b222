#include "cubelab/cycles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "cubelab/components.hpp"
#include "cubelab/rng.hpp"

#include "json.hpp"

namespace cubelab {

void check_cycle(const CycleCertificate& cert, const PercolationSample& s) {
  const auto& v = cert.vertices;
  if (v.size() < 4)
    throw std::invalid_argument("check_cycle: length must be at least 4");
  Bitset seen(s.dim.vertex_count());
  for (uint32_t x : v) {
    check_vertex(x, s.dim, "check_cycle");
    if (seen.test(x))
      throw std::invalid_argument("check_cycle: repeated vertex " +
                                  std::to_string(x));
    seen.set(x);
  }
  for (size_t i = 0; i < v.size(); ++i) {
    const uint32_t a = v[i], b = v[(i + 1) % v.size()];
    const uint32_t x = a ^ b;
    if (!std::has_single_bit(x) ||
        !s.has_edge(a, uint32_t(std::countr_zero(x))))
      throw std::invalid_argument("check_cycle: " + std::to_string(a) +
                                  " and " + std::to_string(b) +
                                  " are not joined by a retained edge");
  }
}

uint64_t CycleCensus::total() const { return total_up_to(max_length); }

uint64_t CycleCensus::total_up_to(uint32_t s) const {
  uint64_t t = 0;
  for (uint32_t i = 0; i < counts.size() && i <= s; ++i) t += counts[i];
  return t;
}

namespace {

struct CensusWalker {
  const PercolationSample& s;
  const Bitset* filter;
  uint32_t max_length;
  std::vector<uint64_t>& counts;
  std::vector<uint32_t> path;
  Bitset on_path;

  CensusWalker(const PercolationSample& sample, const Bitset* f, uint32_t cap,
               std::vector<uint64_t>& out)
      : s(sample), filter(f), max_length(cap), counts(out),
        on_path(sample.dim.vertex_count()) {}

  // path holds root..u with `depth` edges; every non-root vertex > root.
  void walk(uint32_t u, uint32_t depth) {
    const uint32_t root = path[0];
    if (depth >= 3) {
      const uint32_t x = u ^ root;
      // Orientation path[1] < u counts each cycle for exactly one of its two
      // traversals from the smallest vertex. Lengths are even automatically
      // (bipartite host), so no parity test is needed.
      if (std::has_single_bit(x) &&
          s.has_edge(u, uint32_t(std::countr_zero(x))) && path[1] < u)
        counts[depth + 1] += 1;
    }
    if (depth + 2 > max_length) return;
    for (uint32_t i = 0; i < s.dim.d(); ++i) {
      const uint32_t w = u ^ (uint32_t(1) << i);
      if (w <= root || !s.has_edge(u, i) || on_path.test(w)) continue;
      if (filter && !filter->test(w)) continue;
      path.push_back(w);
      on_path.set(w);
      walk(w, depth + 1);
      on_path.reset(w);
      path.pop_back();
    }
  }
};

CycleCensus census_impl(const PercolationSample& s, uint32_t max_length,
                        const Bitset* filter) {
  if (max_length < 4 || max_length > 12)
    throw std::invalid_argument(
        "census_short_cycles: max_length must be in [4, 12]");
  CycleCensus census;
  census.max_length = max_length;
  census.counts.assign(max_length + 1, 0);

  CensusWalker walker(s, filter, max_length, census.counts);
  const uint64_t n = s.dim.vertex_count();
  for (uint64_t r = 0; r < n; ++r) {
    if (filter && !filter->test(r)) continue;
    walker.path.assign(1, uint32_t(r));
    walker.on_path.set(r);
    walker.walk(uint32_t(r), 0);
    walker.on_path.reset(r);
  }
  return census;
}

}  // namespace

CycleCensus census_short_cycles(const PercolationSample& s,
                                uint32_t max_length) {
  return census_impl(s, max_length, nullptr);
}

CycleCensus census_short_cycles(const PercolationSample& s,
                                uint32_t max_length, const Bitset& filter) {
  if (filter.size() != s.dim.vertex_count())
    throw std::invalid_argument("census_short_cycles: filter size mismatch");
  return census_impl(s, max_length, &filter);
}

uint64_t host_four_cycles(Dimension dim) {
  const uint64_t d = dim.d();
  if (d < 2) return 0;
  return d * (d - 1) / 2 * (uint64_t(1) << (d - 2));
}

uint64_t host_six_cycles(Dimension dim) {
  const uint64_t d = dim.d();
  if (d < 3) return 0;
  return d * (d - 1) * (d - 2) / 6 * (uint64_t(1) << (d - 3)) * 16;
}

// ---------------------------------------------------------------------------
// Long-cycle search.

namespace {

struct SearchRng {
  uint64_t state;
  uint64_t next() { return mix64(state++); }
  uint64_t below(uint64_t m) { return m ? next() % m : 0; }
};

}  // namespace

std::optional<CycleCertificate> long_cycle_search(const PercolationSample& s,
                                                  uint32_t restarts,
                                                  uint64_t seed) {
  const Dimension dim = s.dim;
  const uint32_t d = dim.d();
  const ComponentLabeling labeling = label_components(s);
  const ComponentInfo& l1 = labeling.largest();
  if (l1.edges < l1.size) return std::nullopt;  // the component is a tree
  const std::vector<uint32_t> members = labeling.members(l1.rep);

  std::vector<uint32_t> roots;
  for (uint32_t v : members)
    if (parity(v) == 0) roots.push_back(v);
  if (roots.empty()) return std::nullopt;

  SearchRng rng{seed ? seed : mix64(s.seed ^ 0x10060CC1EULL)};
  const uint64_t n = dim.vertex_count();
  std::vector<uint32_t> best;

  // Phase A per restart: randomized depth-first search. The recursion stack
  // is always a path, so every retained edge from the current vertex to an
  // ancestor at depth difference >= 3 closes a cycle; keep the longest.
  // Stamps make per-restart state reset O(1).
  struct Frame {
    uint32_t v;
    uint8_t next;
    std::array<uint8_t, 30> dirs;
  };
  std::vector<Frame> stack;
  std::vector<uint32_t> path;  // path[k] = vertex at depth k
  stack.reserve(members.size());
  path.reserve(members.size());
  std::vector<uint32_t> visit_stamp(n, 0), stack_stamp(n, 0), depth_of(n, 0);

  auto fresh_frame = [&](uint32_t v) {
    Frame f;
    f.v = v;
    f.next = 0;
    for (uint32_t i = 0; i < d; ++i) f.dirs[i] = uint8_t(i);
    for (uint32_t i = d; i > 1; --i)
      std::swap(f.dirs[i - 1], f.dirs[size_t(rng.below(i))]);
    return f;
  };

  for (uint32_t restart = 1; restart <= restarts; ++restart) {
    const uint32_t root = roots[rng.below(roots.size())];
    stack.clear();
    path.assign(1, root);
    stack.push_back(fresh_frame(root));
    visit_stamp[root] = restart;
    stack_stamp[root] = restart;
    depth_of[root] = 0;

    while (!stack.empty()) {
      Frame& f = stack.back();
      const uint32_t u = f.v;
      if (f.next == 0) {
        // First visit: scan for the deepest-reaching chord to an ancestor.
        for (uint32_t i = 0; i < d; ++i) {
          const uint32_t w = u ^ (uint32_t(1) << i);
          if (!s.has_edge(u, i) || stack_stamp[w] != restart) continue;
          const uint32_t span = depth_of[u] - depth_of[w] + 1;
          if (span >= 4 && span > best.size())
            best.assign(path.begin() + depth_of[w], path.end());
        }
      }
      bool descended = false;
      while (f.next < d) {
        const uint32_t i = f.dirs[f.next++];
        const uint32_t w = u ^ (uint32_t(1) << i);
        if (!s.has_edge(u, i) || visit_stamp[w] == restart) continue;
        visit_stamp[w] = restart;
        stack_stamp[w] = restart;
        depth_of[w] = depth_of[u] + 1;
        path.push_back(w);
        stack.push_back(fresh_frame(w));
        descended = true;
        break;
      }
      if (!descended) {
        stack_stamp[u] = 0;
        stack.pop_back();
        path.pop_back();
      }
    }
  }

  // Phase B per restart: rotation extension. Grow a path greedily; at dead
  // ends record the best suffix cycle any chord closes, then reverse along a
  // random chord so the walk can keep extending from a new endpoint.
  Bitset on_path(n);
  std::vector<int64_t> pos(n, -1);
  const uint32_t rotation_cap = 4 * d;

  for (uint32_t restart = 0; restart < restarts; ++restart) {
    const uint32_t root = roots[rng.below(roots.size())];
    path.assign(1, root);
    on_path.set(root);
    pos[root] = 0;

    auto record_chords = [&]() {
      const uint32_t u = path.back();
      for (uint32_t i = 0; i < d; ++i) {
        const uint32_t w = u ^ (uint32_t(1) << i);
        if (!s.has_edge(u, i) || !on_path.test(w)) continue;
        const size_t j = size_t(pos[w]);
        const size_t span = path.size() - j;
        if (span >= 4 && span > best.size())
          best.assign(path.begin() + ptrdiff_t(j), path.end());
      }
    };

    uint32_t stuck = 0;
    std::vector<uint32_t> cand;
    while (true) {
      const uint32_t u = path.back();
      cand.clear();
      for (uint32_t i = 0; i < d; ++i) {
        const uint32_t w = u ^ (uint32_t(1) << i);
        if (s.has_edge(u, i) && !on_path.test(w)) cand.push_back(w);
      }
      if (!cand.empty()) {
        const uint32_t w = cand[rng.below(cand.size())];
        pos[w] = int64_t(path.size());
        path.push_back(w);
        on_path.set(w);
        stuck = 0;
        continue;
      }
      record_chords();
      if (stuck >= rotation_cap) break;
      // Rotate along a chord u ~ path[j]: reverse the suffix after j so
      // path[j+1] becomes the new endpoint.
      cand.clear();
      for (uint32_t i = 0; i < d; ++i) {
        const uint32_t w = u ^ (uint32_t(1) << i);
        if (!s.has_edge(u, i) || !on_path.test(w)) continue;
        if (path.size() >= 2 && w == path[path.size() - 2]) continue;
        if (int64_t(path.size()) - pos[w] < 3) continue;  // degenerate suffix
        cand.push_back(w);
      }
      if (cand.empty()) break;
      const uint32_t w = cand[rng.below(cand.size())];
      const size_t j = size_t(pos[w]);
      std::reverse(path.begin() + ptrdiff_t(j) + 1, path.end());
      for (size_t k = j + 1; k < path.size(); ++k) pos[path[k]] = int64_t(k);
      ++stuck;
    }

    for (uint32_t v : path) {
      on_path.reset(v);
      pos[v] = -1;
    }
  }

  if (best.empty()) return std::nullopt;
  CycleCertificate cert{std::move(best)};
  check_cycle(cert, s);
  return cert;
}

// ---------------------------------------------------------------------------
// Minor construction and validation.

MinorValidation validate_minor(const MinorCertificate& cert,
                               const PercolationSample& s) {
  const Dimension dim = s.dim;
  const uint64_t n = dim.vertex_count();
  if (cert.t != cert.branch_sets.size())
    return {false, "t = " + std::to_string(cert.t) + " but " +
                       std::to_string(cert.branch_sets.size()) +
                       " branch sets"};
  if (cert.branch_sets.empty()) return {false, "no branch sets"};

  std::vector<int64_t> owner(n, -1);
  for (size_t k = 0; k < cert.branch_sets.size(); ++k) {
    const auto& set = cert.branch_sets[k];
    if (set.empty()) return {false, "set " + std::to_string(k) + " is empty"};
    for (uint32_t v : set) {
      if (!dim.contains(v))
        return {false, "set " + std::to_string(k) + " has out-of-range vertex " +
                           std::to_string(v)};
      if (owner[v] == int64_t(k))
        return {false, "set " + std::to_string(k) + " repeats vertex " +
                           std::to_string(v)};
      if (owner[v] >= 0)
        return {false, "sets " + std::to_string(owner[v]) + " and " +
                           std::to_string(k) + " overlap at vertex " +
                           std::to_string(v)};
      owner[v] = int64_t(k);
    }
  }

  // Connectivity of each set in the sample, by BFS inside the set.
  for (size_t k = 0; k < cert.branch_sets.size(); ++k) {
    const auto& set = cert.branch_sets[k];
    Bitset reached(n);
    std::queue<uint32_t> q;
    q.push(set[0]);
    reached.set(set[0]);
    uint64_t hit = 1;
    while (!q.empty()) {
      const uint32_t u = q.front();
      q.pop();
      for (uint32_t i = 0; i < dim.d(); ++i) {
        const uint32_t w = u ^ (uint32_t(1) << i);
        if (!s.has_edge(u, i) || reached.test(w)) continue;
        if (owner[w] != int64_t(k)) continue;
        reached.set(w);
        ++hit;
        q.push(w);
      }
    }
    if (hit != set.size())
      return {false, "set " + std::to_string(k) +
                         " is not connected in the sample"};
  }

  // Pairwise adjacency via one pass over retained edges out of owned
  // vertices.
  const size_t t = cert.branch_sets.size();
  std::vector<uint8_t> linked(t * t, 0);
  for (uint64_t v = 0; v < n; ++v) {
    if (owner[v] < 0) continue;
    for (uint32_t i = 0; i < dim.d(); ++i) {
      const uint32_t w = uint32_t(v) ^ (uint32_t(1) << i);
      if (!s.has_edge(uint32_t(v), i) || owner[w] < 0) continue;
      linked[size_t(owner[v]) * t + size_t(owner[w])] = 1;
    }
  }
  for (size_t a = 0; a < t; ++a)
    for (size_t b = a + 1; b < t; ++b)
      if (!linked[a * t + b])
        return {false, "sets " + std::to_string(a) + " and " +
                           std::to_string(b) + " have no joining edge"};
  return {true, ""};
}

namespace {

struct MinorBuilder {
  const PercolationSample& s;
  uint64_t n;
  std::vector<int64_t> assign;              // vertex -> set index or -1
  std::vector<std::vector<uint32_t>> sets;  // branch sets under construction
  std::vector<uint8_t> adj, impossible;     // t*t matrices
  std::vector<uint32_t> conn;               // established links per set
  std::vector<uint32_t> stamp, parent;      // BFS scratch, stamp-marked
  uint32_t tick = 0;

  explicit MinorBuilder(const PercolationSample& sample, size_t t)
      : s(sample), n(sample.dim.vertex_count()), assign(n, -1),
        sets(t), adj(t * t, 0), impossible(t * t, 0), conn(t, 0),
        stamp(n, 0), parent(n, 0) {}

  void link(size_t a, size_t b) {
    if (a == b || adj[a * sets.size() + b]) return;
    adj[a * sets.size() + b] = adj[b * sets.size() + a] = 1;
    ++conn[a];
    ++conn[b];
  }

  void absorb(uint32_t v, size_t into) {
    assign[v] = int64_t(into);
    sets[into].push_back(v);
    for (uint32_t i = 0; i < s.dim.d(); ++i) {
      const uint32_t w = v ^ (uint32_t(1) << i);
      if (s.has_edge(v, i) && assign[w] >= 0)
        link(into, size_t(assign[w]));
    }
  }

  // BFS from set i through free vertices; on reaching a neighbor of set j,
  // absorb the connecting chain into set i. False when no such path exists.
  bool connect(size_t i, size_t j) {
    ++tick;
    std::queue<uint32_t> q;
    for (uint32_t v : sets[i]) {
      stamp[v] = tick;
      parent[v] = v;
      q.push(v);
    }
    while (!q.empty()) {
      const uint32_t u = q.front();
      q.pop();
      for (uint32_t dir = 0; dir < s.dim.d(); ++dir) {
        const uint32_t w = u ^ (uint32_t(1) << dir);
        if (!s.has_edge(u, dir)) continue;
        if (assign[w] == int64_t(j)) {
          // Chain back from u over free vertices into set i.
          for (uint32_t x = u; assign[x] != int64_t(i); x = parent[x])
            absorb(x, i);
          link(i, j);
          return true;
        }
        if (assign[w] != -1 || stamp[w] == tick) continue;
        stamp[w] = tick;
        parent[w] = u;
        q.push(w);
      }
    }
    return false;
  }
};

}  // namespace

uint32_t default_minor_target(Dimension dim) {
  const double dd = double(dim.d());
  const double raw = std::ceil(std::sqrt(double(dim.vertex_count())) /
                               (dd * dd * dd));
  return std::max<uint32_t>(2, uint32_t(raw));
}

MinorCertificate build_minor(const PercolationSample& s,
                             const std::vector<PieceDecomposition>& pieces,
                             uint32_t target_t, uint64_t budget) {
  const Dimension dim = s.dim;
  const uint64_t n = dim.vertex_count();
  if (target_t == 0) target_t = default_minor_target(dim);

  const ComponentLabeling labeling = label_components(s);
  const uint32_t host = labeling.largest().rep;

  // Candidate seeds: pieces lying entirely in the largest component, largest
  // first (ties by smallest vertex) so seeds are the fattest material.
  std::vector<const std::vector<uint32_t>*> cand;
  for (const PieceDecomposition& pd : pieces)
    for (const auto& piece : pd.pieces) {
      bool inside = !piece.empty();
      for (uint32_t v : piece) {
        check_vertex(v, dim, "build_minor");
        if (labeling.rep_of(v) != host) inside = false;
      }
      if (inside) cand.push_back(&piece);
    }
  auto piece_min = [](const std::vector<uint32_t>* p) {
    return *std::min_element(p->begin(), p->end());
  };
  std::stable_sort(cand.begin(), cand.end(),
                   [&](const std::vector<uint32_t>* a,
                       const std::vector<uint32_t>* b) {
                     if (a->size() != b->size()) return a->size() > b->size();
                     return piece_min(a) < piece_min(b);
                   });
  if (cand.size() > target_t) cand.resize(target_t);

  MinorCertificate out;
  if (cand.size() >= 2) {
    MinorBuilder builder(s, cand.size());
    for (size_t k = 0; k < cand.size(); ++k)
      for (uint32_t v : *cand[k]) {
        if (builder.assign[v] != -1)
          throw std::invalid_argument("build_minor: pieces overlap at vertex " +
                                      std::to_string(v));
        builder.assign[v] = int64_t(k);
        builder.sets[k].push_back(v);
      }
    const size_t t = cand.size();
    for (uint64_t v = 0; v < n; ++v) {
      if (builder.assign[v] < 0) continue;
      for (uint32_t i = 0; i < dim.d(); ++i) {
        const uint32_t w = uint32_t(v) ^ (uint32_t(1) << i);
        if (s.has_edge(uint32_t(v), i) && builder.assign[w] >= 0)
          builder.link(size_t(builder.assign[v]), size_t(builder.assign[w]));
      }
    }

    uint64_t attempts = 0;
    while (budget == 0 || attempts < budget) {
      // Least-connected open pair, ties lexicographic.
      size_t bi = t, bj = t;
      uint64_t best_conn = UINT64_MAX;
      for (size_t a = 0; a < t; ++a)
        for (size_t b = a + 1; b < t; ++b) {
          if (builder.adj[a * t + b] || builder.impossible[a * t + b])
            continue;
          const uint64_t c = builder.conn[a] + builder.conn[b];
          if (c < best_conn) {
            best_conn = c;
            bi = a;
            bj = b;
          }
        }
      if (bi == t) break;
      ++attempts;
      if (!builder.connect(bi, bj))
        builder.impossible[bi * t + bj] = builder.impossible[bj * t + bi] = 1;
    }

    // Peel down to a clique: drop the set with the fewest links among the
    // survivors until all remaining pairs are linked. Ties drop the later
    // (smaller) seed.
    std::vector<uint8_t> active(t, 1);
    while (true) {
      bool open = false;
      for (size_t a = 0; a < t && !open; ++a)
        for (size_t b = a + 1; b < t && !open; ++b)
          if (active[a] && active[b] && !builder.adj[a * t + b]) open = true;
      if (!open) break;
      size_t victim = t;
      uint64_t fewest = UINT64_MAX;
      for (size_t a = 0; a < t; ++a) {
        if (!active[a]) continue;
        uint64_t links = 0;
        for (size_t b = 0; b < t; ++b)
          if (b != a && active[b] && builder.adj[a * t + b]) ++links;
        if (victim == t || links < fewest ||
            (links == fewest && a > victim)) {
          fewest = links;
          victim = a;
        }
      }
      active[victim] = 0;
    }
    for (size_t k = 0; k < t; ++k)
      if (active[k]) out.branch_sets.push_back(builder.sets[k]);
    out.t = uint32_t(out.branch_sets.size());
  }

  if (out.branch_sets.size() < 2) {
    // Fall back to the smallest retained edge as a two-set witness, or a
    // lone vertex on an edgeless sample.
    out.branch_sets.clear();
    const uint64_t m = dim.edge_count();
    uint64_t found = m;
    for (uint64_t e = 0; e < m; ++e)
      if (s.has_edge_id(e)) {
        found = e;
        break;
      }
    if (found < m) {
      const EdgeId id = edge_from_index(found, dim);
      out.branch_sets.push_back({id.base});
      out.branch_sets.push_back({id.base ^ (uint32_t(1) << id.direction)});
      out.t = 2;
    } else {
      out.branch_sets.push_back({0});
      out.t = 1;
    }
  }

  const MinorValidation check = validate_minor(out, s);
  if (!check.pass)
    throw std::logic_error("build_minor produced an invalid certificate: " +
                           check.violation);
  return out;
}

SeparatorReport separator_refutation(const PercolationSample& s, uint32_t t,
                                     uint32_t samples) {
  const Dimension dim = s.dim;
  const uint64_t n = dim.vertex_count();
  const ComponentLabeling labeling = label_components(s);
  const ComponentInfo& l1 = labeling.largest();

  SeparatorReport report;
  report.requested_t = t;
  report.largest_component = l1.size;
  if (l1.size < 2 || samples == 0) return report;

  const double alpha = double(l1.size) / (4.0 * double(n));
  uint64_t best = UINT64_MAX;
  for (uint32_t run = 0; run < samples; ++run) {
    WorstCutOptions opt;
    opt.seed = mix64(mix64(s.seed ^ 0x5E9A8A70ULL) + run);
    const ExpansionCertificate cert = worst_cut_heuristic(s, alpha, opt);
    best = std::min(best, cert.vertex_boundary);
    ++report.runs;
  }
  report.min_vertex_boundary = best;

  const double d = double(dim.d());
  const double ld = std::log(d);
  report.beta_vertex = double(best) * d * d * d * ld * ld * ld / double(n);
  report.implied_t = report.beta_vertex * std::sqrt(double(n)) /
                     (report.constant_c * d * d * d * ld * ld * ld);
  return report;
}

// ---------------------------------------------------------------------------
// JSON round-trip.

std::string cycle_to_json(const CycleCertificate& cert) {
  nlohmann::json j;
  j["kind"] = "cycle";
  j["length"] = cert.vertices.size();
  j["vertices"] = cert.vertices;
  return j.dump();
}

CycleCertificate cycle_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "cycle")
      throw std::invalid_argument("cycle_from_json: kind is not \"cycle\"");
    CycleCertificate cert;
    cert.vertices = j.at("vertices").get<std::vector<uint32_t>>();
    if (j.contains("length") &&
        j.at("length").get<uint64_t>() != cert.vertices.size())
      throw std::invalid_argument("cycle_from_json: length field mismatch");
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("cycle_from_json: ") + e.what());
  }
}

std::string minor_to_json(const MinorCertificate& cert) {
  nlohmann::json j;
  j["kind"] = "minor";
  j["t"] = cert.t;
  j["branch_sets"] = cert.branch_sets;
  return j.dump();
}

MinorCertificate minor_from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("kind").get<std::string>() != "minor")
      throw std::invalid_argument("minor_from_json: kind is not \"minor\"");
    MinorCertificate cert;
    cert.t = j.at("t").get<uint32_t>();
    cert.branch_sets =
        j.at("branch_sets").get<std::vector<std::vector<uint32_t>>>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("minor_from_json: ") + e.what());
  }
}

}  // namespace cubelab
