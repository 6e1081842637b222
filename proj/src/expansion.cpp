#include "cubelab/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cubelab/format.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

// Tiny counter-based generator for probe randomization. Not used for edge
// sampling (that is edge_stream's job); only probe orderings come from here.
struct ProbeRng {
  uint64_t state;
  uint64_t next() { return mix64(state++); }
  uint64_t below(uint64_t m) { return m ? next() % m : 0; }
};

Bitset member_bitset(Dimension dim, const std::vector<uint32_t>& set,
                     const char* where) {
  if (set.empty())
    throw std::invalid_argument(std::string(where) + ": empty vertex set");
  Bitset bits(dim.vertex_count());
  for (uint32_t v : set) {
    check_vertex(v, dim, where);
    if (bits.test(v))
      throw std::invalid_argument(std::string(where) + ": duplicate vertex " +
                                  std::to_string(v));
    bits.set(v);
  }
  return bits;
}

}  // namespace

CutReport cut_report(const PercolationSample& s,
                     const std::vector<uint32_t>& set) {
  const Dimension dim = s.dim;
  const Bitset in_set = member_bitset(dim, set, "cut_report");

  Bitset host_seen(dim.vertex_count()), sample_seen(dim.vertex_count());
  CutReport r;
  r.set_size = set.size();
  for (uint32_t v : set) {
    for (uint32_t i = 0; i < dim.d(); ++i) {
      const uint32_t w = v ^ (uint32_t(1) << i);
      if (in_set.test(w)) continue;
      r.edge_boundary_host += 1;
      if (!host_seen.test(w)) {
        host_seen.set(w);
        r.vertex_boundary_host += 1;
      }
      if (s.has_edge(v, i)) {
        r.edge_boundary_sample += 1;
        if (!sample_seen.test(w)) {
          sample_seen.set(w);
          r.vertex_boundary_sample += 1;
        }
      }
    }
  }
  return r;
}

std::vector<uint32_t> sample_vertex_boundary(const PercolationSample& s,
                                             const std::vector<uint32_t>& set) {
  const Dimension dim = s.dim;
  const Bitset in_set = member_bitset(dim, set, "sample_vertex_boundary");
  Bitset seen(dim.vertex_count());
  std::vector<uint32_t> out;
  for (uint32_t v : set)
    for (uint32_t i = 0; i < dim.d(); ++i) {
      const uint32_t w = v ^ (uint32_t(1) << i);
      if (!in_set.test(w) && s.has_edge(v, i) && !seen.test(w)) {
        seen.set(w);
        out.push_back(w);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

IsoBound iso_matching_bound(Dimension dim, uint64_t set_size) {
  const uint64_t half = dim.vertex_count() / 2;
  if (set_size < 1 || set_size > half)
    throw std::invalid_argument("iso_matching_bound: size must be in [1, 2^d/2]");

  // binom[i] = C(d, i); values stay well under 2^63 for d <= 30.
  const uint32_t d = dim.d();
  std::vector<uint64_t> binom(d + 1);
  binom[0] = 1;
  for (uint32_t i = 1; i <= d; ++i)
    binom[i] = binom[i - 1] * (d - i + 1) / i;

  uint64_t cum = 0;
  uint32_t k = 0;
  for (uint32_t i = 0; i <= d; ++i) {
    if (cum + binom[i] > set_size) {
      // set_size sits strictly inside layer i, so the full layers are 0..i-1.
      // i >= 1 because cum + C(d,0) = 1 <= set_size.
      k = i - 1;
      break;
    }
    cum += binom[i];
    k = i;
    if (cum == set_size) break;
  }
  const double lambda = double(set_size - cum) / double(binom[k + 1]);
  const double bound = (1.0 - lambda) * double(binom[k]) + lambda * double(binom[k + 1]);
  return IsoBound{k, lambda, bound};
}

namespace {

// Kuhn's augmenting-path maximum matching from the set side into its
// complement; fine at d <= 10 where both sides have at most 1024 vertices.
struct Matcher {
  const std::vector<std::vector<uint32_t>>& adj;  // left -> right indices
  std::vector<int32_t>& match_right;
  std::vector<uint8_t> visited;

  bool augment(uint32_t left) {
    for (uint32_t r : adj[left]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (match_right[r] < 0 || augment(uint32_t(match_right[r]))) {
        match_right[r] = int32_t(left);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

IsoCheck verify_iso_matching(Dimension dim, const std::vector<uint32_t>& set) {
  if (dim.d() > 10)
    throw std::invalid_argument("verify_iso_matching: exact check is d <= 10 only");
  const Bitset in_set = member_bitset(dim, set, "verify_iso_matching");
  const IsoBound bound = iso_matching_bound(dim, set.size());

  const uint64_t n = dim.vertex_count();
  std::vector<int32_t> right_index(n, -1);
  uint32_t rights = 0;
  for (uint64_t v = 0; v < n; ++v)
    if (!in_set.test(v)) right_index[v] = int32_t(rights++);

  std::vector<std::vector<uint32_t>> adj(set.size());
  for (size_t a = 0; a < set.size(); ++a)
    for (uint32_t i = 0; i < dim.d(); ++i) {
      const uint32_t w = set[a] ^ (uint32_t(1) << i);
      if (right_index[w] >= 0) adj[a].push_back(uint32_t(right_index[w]));
    }

  std::vector<int32_t> match_right(rights, -1);
  Matcher m{adj, match_right, {}};
  uint64_t matched = 0;
  for (size_t a = 0; a < set.size(); ++a) {
    m.visited.assign(rights, 0);
    if (m.augment(uint32_t(a))) ++matched;
  }
  return IsoCheck{bound, matched, double(matched) >= bound.bound};
}

MiddleLayerReport middle_layer_probe(const PercolationSample& s) {
  const ComponentLabeling labeling = label_components(s);
  const ComponentInfo& l1 = labeling.largest();
  const uint32_t split = (s.dim.d() + 1) / 2;

  std::vector<uint32_t> below;
  uint64_t above = 0;
  for (uint32_t v : labeling.members(l1.rep))
    if (layer(v) < split)
      below.push_back(v);
    else
      ++above;

  MiddleLayerReport r;
  r.below = below.size();
  r.above = above;
  if (!below.empty()) r.cut = cut_report(s, below);
  return r;
}

// ---------------------------------------------------------------------------
// Sparsest-cut search.

namespace {

struct CutSearchContext {
  const PercolationSample& s;
  std::vector<uint32_t> members;          // L1, ascending codes
  std::vector<std::vector<uint32_t>> adj; // retained neighbors, by member idx
  std::vector<int32_t> member_idx;        // vertex code -> index or -1
  uint64_t lo = 0, hi = 0;

  explicit CutSearchContext(const PercolationSample& sample,
                            std::vector<uint32_t> mem)
      : s(sample), members(std::move(mem)) {
    member_idx.assign(size_t(s.dim.vertex_count()), -1);
    for (size_t i = 0; i < members.size(); ++i)
      member_idx[members[i]] = int32_t(i);
    adj.resize(members.size());
    for (size_t i = 0; i < members.size(); ++i)
      for (uint32_t dir = 0; dir < s.dim.d(); ++dir)
        if (s.has_edge(members[i], dir))
          adj[i].push_back(members[i] ^ (uint32_t(1) << dir));
  }
};

// Working cut state: membership flags by member index plus the exact sample
// edge boundary, maintained incrementally.
struct CutState {
  const CutSearchContext& ctx;
  std::vector<uint8_t> in_s;  // by member index
  uint64_t size = 0;
  uint64_t boundary = 0;

  explicit CutState(const CutSearchContext& c)
      : ctx(c), in_s(c.members.size(), 0) {}

  void clear() {
    std::fill(in_s.begin(), in_s.end(), 0);
    size = 0;
    boundary = 0;
  }

  uint32_t deg(size_t i) const { return uint32_t(ctx.adj[i].size()); }

  uint32_t deg_in_s(size_t i) const {
    uint32_t c = 0;
    for (uint32_t w : ctx.adj[i]) c += in_s[size_t(ctx.member_idx[w])];
    return c;
  }

  // Boundary change if member i were toggled, without applying it.
  int64_t toggle_delta(size_t i) const {
    const int64_t ds = deg_in_s(i), dd = deg(i);
    return in_s[i] ? 2 * ds - dd : dd - 2 * ds;
  }

  void toggle(size_t i) {
    boundary = uint64_t(int64_t(boundary) + toggle_delta(i));
    size += in_s[i] ? uint64_t(-1) : 1;
    in_s[i] ^= 1;
  }

  std::vector<uint32_t> snapshot() const {
    std::vector<uint32_t> out;
    for (size_t i = 0; i < in_s.size(); ++i)
      if (in_s[i]) out.push_back(ctx.members[i]);
    return out;
  }

  uint64_t vertex_boundary() const {
    Bitset seen(ctx.s.dim.vertex_count());
    uint64_t count = 0;
    for (size_t i = 0; i < in_s.size(); ++i) {
      if (!in_s[i]) continue;
      for (uint32_t w : ctx.adj[i]) {
        if (in_s[size_t(ctx.member_idx[w])] || seen.test(w)) continue;
        seen.set(w);
        ++count;
      }
    }
    return count;
  }
};

// Force |S| into [lo, hi] by code-order insertions/removals. Crude on
// purpose; the local search cleans up afterwards.
void repair_window(CutState& st) {
  for (size_t i = 0; st.size < st.ctx.lo && i < st.in_s.size(); ++i)
    if (!st.in_s[i]) st.toggle(i);
  for (size_t i = st.in_s.size(); st.size > st.ctx.hi && i-- > 0;)
    if (st.in_s[i]) st.toggle(i);
}

// First-improvement descent: single-vertex moves that respect the window,
// plus sampled swap pairs once single moves stall (swaps keep |S| fixed, so
// they work even when the size is pinned at a window edge).
void local_search(CutState& st, ProbeRng& rng, uint64_t move_budget) {
  const size_t m = st.in_s.size();
  std::vector<uint32_t> perm(m);
  for (size_t i = 0; i < m; ++i) perm[i] = uint32_t(i);
  for (size_t i = m; i > 1; --i)
    std::swap(perm[i - 1], perm[size_t(rng.below(i))]);

  uint64_t moves = 0;
  bool improved = true;
  while (improved && moves < move_budget) {
    improved = false;
    for (uint32_t i : perm) {
      if (moves >= move_budget) break;
      const bool inside = st.in_s[i];
      if (inside && st.size <= st.ctx.lo) continue;
      if (!inside && st.size >= st.ctx.hi) continue;
      if (st.toggle_delta(i) < 0) {
        st.toggle(i);
        ++moves;
        improved = true;
      }
    }
    if (!improved && moves < move_budget) {
      // Swap phase: sample (u in S, w outside) pairs.
      for (uint64_t t = 0; t < 2 * m && moves < move_budget; ++t) {
        const uint32_t u = perm[size_t(rng.below(m))];
        const uint32_t w = perm[size_t(rng.below(m))];
        if (!st.in_s[u] || st.in_s[w]) continue;
        const int64_t d_out = st.toggle_delta(u);
        // After removing u, w's in-set degree drops by 1 if u ~ w retained.
        int64_t adj_fix = 0;
        for (uint32_t nb : st.ctx.adj[u])
          if (st.ctx.member_idx[nb] == int32_t(w)) adj_fix = 2;
        const int64_t d_in = st.toggle_delta(w) + adj_fix;
        if (d_out + d_in < 0) {
          st.toggle(u);
          st.toggle(w);
          moves += 2;
          improved = true;
        }
      }
    }
  }
}

void track_best(const CutState& st, ExpansionCertificate& cert,
                uint64_t& best_vertex) {
  if (st.size < st.ctx.lo || st.size > st.ctx.hi) return;
  if (cert.set.empty() || st.boundary < cert.edge_boundary) {
    cert.edge_boundary = st.boundary;
    cert.set = st.snapshot();
    cert.set_size = st.size;
  }
  const uint64_t vb = st.vertex_boundary();
  if (vb < best_vertex) best_vertex = vb;
}

void finalize_certificate(ExpansionCertificate& cert, Dimension dim,
                          uint64_t best_vertex) {
  const double d = double(dim.d());
  const double n = double(dim.vertex_count());
  const double ld = std::log(d);
  cert.d = dim.d();
  cert.vertex_boundary = best_vertex;
  cert.beta_edge = double(cert.edge_boundary) * d * d * d * ld * ld / n;
  cert.beta_vertex = double(best_vertex) * d * d * d * ld * ld * ld / n;
}

}  // namespace

ExpansionCertificate worst_cut_exact(const PercolationSample& s,
                                     uint64_t size_lo, uint64_t size_hi) {
  const ComponentLabeling labeling = label_components(s);
  const ComponentInfo& l1 = labeling.largest();
  if (l1.size > 26)
    throw std::invalid_argument(
        "worst_cut_exact: component too large for exhaustive scan (max 26)");
  if (size_lo < 1 || size_lo > size_hi || size_hi > l1.size / 2)
    throw std::invalid_argument(
        "worst_cut_exact: window must satisfy 1 <= lo <= hi <= |L1|/2");

  const std::vector<uint32_t> members = labeling.members(l1.rep);
  const size_t m = members.size();

  std::vector<uint32_t> adj(m, 0);  // masks over member indices
  std::vector<int32_t> idx(size_t(s.dim.vertex_count()), -1);
  for (size_t i = 0; i < m; ++i) idx[members[i]] = int32_t(i);
  for (size_t i = 0; i < m; ++i)
    for (uint32_t dir = 0; dir < s.dim.d(); ++dir)
      if (s.has_edge(members[i], dir)) {
        const int32_t j = idx[members[i] ^ (uint32_t(1) << dir)];
        adj[i] |= uint32_t(1) << uint32_t(j);  // sample edges stay inside L1
      }

  // Gray-code walk over all subsets: one membership toggle per step keeps
  // both boundary updates O(deg). cnt[j] counts j's retained neighbors in
  // the current set, so the vertex boundary is the number of outside
  // vertices with cnt > 0 and can be adjusted as cnt values cross zero.
  uint32_t cur = 0;
  uint64_t count = 0, vertex_bd = 0;
  int64_t edge_bd = 0;  // deltas go negative; keep the accumulator signed
  std::vector<uint8_t> cnt(m, 0);
  int64_t best_edge = INT64_MAX;
  uint64_t best_vertex = UINT64_MAX;
  uint32_t best_mask = 0;
  for (uint64_t k = 1; k < (uint64_t(1) << m); ++k) {
    const uint32_t bit = uint32_t(std::countr_zero(k));
    const uint32_t mask = uint32_t(1) << bit;
    if (!(cur & mask)) {
      const int64_t in_nb = std::popcount(adj[bit] & cur);
      edge_bd += int64_t(std::popcount(adj[bit])) - 2 * in_nb;
      if (cnt[bit] > 0) --vertex_bd;  // bit leaves the outside boundary
      cur |= mask;
      ++count;
      for (uint32_t rest = adj[bit]; rest;) {
        const uint32_t j = uint32_t(std::countr_zero(rest));
        rest &= rest - 1;
        if (++cnt[j] == 1 && !((cur >> j) & 1u)) ++vertex_bd;
      }
    } else {
      cur &= ~mask;
      --count;
      const int64_t in_nb = std::popcount(adj[bit] & cur);
      edge_bd -= int64_t(std::popcount(adj[bit])) - 2 * in_nb;
      for (uint32_t rest = adj[bit]; rest;) {
        const uint32_t j = uint32_t(std::countr_zero(rest));
        rest &= rest - 1;
        if (--cnt[j] == 0 && !((cur >> j) & 1u)) --vertex_bd;
      }
      if (cnt[bit] > 0) ++vertex_bd;  // bit rejoins the outside boundary
    }
    if (count >= size_lo && count <= size_hi) {
      if (edge_bd < best_edge) {
        best_edge = edge_bd;
        best_mask = cur;
      }
      if (vertex_bd < best_vertex) best_vertex = vertex_bd;
    }
  }

  ExpansionCertificate cert;
  cert.alpha = double(size_lo) / double(s.dim.vertex_count());
  cert.edge_boundary = uint64_t(best_edge);
  for (size_t i = 0; i < m; ++i)
    if ((best_mask >> i) & 1u) cert.set.push_back(members[i]);
  cert.set_size = cert.set.size();
  cert.exhaustive = true;
  cert.probe_inventory = "exhaustive";
  finalize_certificate(cert, s.dim, best_vertex);
  return cert;
}

ExpansionCertificate worst_cut_heuristic(const PercolationSample& s,
                                         double alpha,
                                         const WorstCutOptions& opt) {
  if (!(alpha > 0.0 && alpha <= 0.5))
    throw std::invalid_argument("worst_cut_heuristic: alpha must be in (0, 1/2]");

  const Dimension dim = s.dim;
  const ComponentLabeling labeling = label_components(s);
  const ComponentInfo& l1 = labeling.largest();
  const uint64_t lo =
      std::max<uint64_t>(1, uint64_t(std::ceil(alpha * double(dim.vertex_count()))));
  const uint64_t hi = l1.size / 2;
  if (lo > hi)
    throw std::invalid_argument(
        "worst_cut_heuristic: largest component too small for alpha window");

  CutSearchContext ctx(s, labeling.members(l1.rep));
  ctx.lo = lo;
  ctx.hi = hi;

  const uint64_t budget =
      opt.move_budget ? opt.move_budget : 50 * uint64_t(ctx.members.size());
  ProbeRng rng{opt.seed ? opt.seed : mix64(s.seed ^ 0xC07B00D5ULL)};

  ExpansionCertificate cert;
  cert.alpha = alpha;
  uint64_t best_vertex = UINT64_MAX;
  CutState st(ctx);

  auto refine_and_track = [&]() {
    repair_window(st);
    // Recompute the boundary from scratch; probes build S arbitrarily.
    st.boundary = 0;
    for (size_t i = 0; i < st.in_s.size(); ++i)
      if (st.in_s[i]) st.boundary += st.deg(i) - st.deg_in_s(i);
    track_best(st, cert, best_vertex);
    local_search(st, rng, budget);
    track_best(st, cert, best_vertex);
  };

  // Probe 1: equator split of the component.
  const uint32_t split = (dim.d() + 1) / 2;
  st.clear();
  for (size_t i = 0; i < ctx.members.size(); ++i)
    if (layer(ctx.members[i]) < split) {
      st.in_s[i] = 1;
      ++st.size;
    }
  if (st.size > ctx.hi) {  // take the other side when the split is lopsided
    for (size_t i = 0; i < ctx.members.size(); ++i) st.in_s[i] ^= 1;
    st.size = ctx.members.size() - st.size;
  }
  refine_and_track();

  // Probe 2: every coordinate halving.
  for (uint32_t dir = 0; dir < dim.d(); ++dir) {
    st.clear();
    for (size_t i = 0; i < ctx.members.size(); ++i)
      if (!((ctx.members[i] >> dir) & 1u)) {
        st.in_s[i] = 1;
        ++st.size;
      }
    if (st.size > ctx.hi) {
      for (size_t i = 0; i < ctx.members.size(); ++i) st.in_s[i] ^= 1;
      st.size = ctx.members.size() - st.size;
    }
    refine_and_track();
  }

  // Probe 3: piece-respecting random balanced bipartitions.
  uint32_t partition_runs = 0;
  const uint64_t ell =
      opt.piece_ell ? opt.piece_ell
                    : uint64_t(std::ceil(std::pow(double(dim.d()), 1.5)));
  if (l1.size >= ell && opt.partition_starts > 0) {
    const std::vector<PieceDecomposition> cover = piece_cover(s, l1.size, ell);
    std::vector<std::vector<uint32_t>> pieces;
    for (const auto& pd : cover)
      if (pd.host_component == l1.rep)
        for (const auto& piece : pd.pieces) pieces.push_back(piece);
    if (!pieces.empty()) {
      std::vector<uint32_t> order(pieces.size());
      for (size_t i = 0; i < pieces.size(); ++i) order[i] = uint32_t(i);
      for (uint32_t run = 0; run < opt.partition_starts; ++run) {
        for (size_t i = order.size(); i > 1; --i)
          std::swap(order[i - 1], order[size_t(rng.below(i))]);
        st.clear();
        // Greedy packing toward the balanced end of the window.
        for (uint32_t pi : order) {
          if (st.size + pieces[pi].size() > ctx.hi) continue;
          for (uint32_t v : pieces[pi]) {
            st.in_s[size_t(ctx.member_idx[v])] = 1;
            ++st.size;
          }
        }
        refine_and_track();
        ++partition_runs;
      }
    }
  }

  // Probe 4: random sets of a random admissible size.
  for (uint32_t run = 0; run < opt.random_starts; ++run) {
    const uint64_t want = ctx.lo + rng.below(ctx.hi - ctx.lo + 1);
    st.clear();
    std::vector<uint32_t> pool(ctx.members.size());
    for (size_t i = 0; i < pool.size(); ++i) pool[i] = uint32_t(i);
    for (uint64_t picked = 0; picked < want; ++picked) {
      const size_t j = picked + size_t(rng.below(pool.size() - picked));
      std::swap(pool[picked], pool[j]);
      st.in_s[pool[picked]] = 1;
      ++st.size;
    }
    refine_and_track();
  }

  // Probe 5: greedy connected droplets. From each start vertex, grow a
  // connected set by repeatedly absorbing the frontier vertex whose
  // absorption raises the sample boundary the least, remember the size at
  // which the boundary bottomed out inside the window, and rebuild the set
  // at that size. This is the probe that finds chunks dangling behind a
  // single bridge edge, which no fixed-size move sequence reaches.
  const size_t m = ctx.members.size();
  uint64_t droplet_runs =
      opt.droplet_starts ? opt.droplet_starts
                         : (m <= 1024 ? uint64_t(m) : uint64_t(2 * dim.d()));
  droplet_runs = std::min<uint64_t>(droplet_runs, m);
  if (droplet_runs > 0 && ctx.hi >= 1) {
    std::vector<uint32_t> starts(m);
    for (size_t i = 0; i < m; ++i) starts[i] = uint32_t(i);
    if (droplet_runs < m)
      for (uint64_t i = 0; i < droplet_runs; ++i)
        std::swap(starts[i], starts[i + rng.below(m - i)]);

    // Bucketed frontier: absorbing w changes the boundary by
    // deg(w) - 2*deg_in_s(w), a small integer in [-d, d]. Entries go stale
    // when a later absorption lowers a frontier vertex's delta; stale pops
    // are detected by rechecking the stored delta.
    const int64_t offset = dim.d();
    std::vector<std::vector<uint32_t>> buckets(2 * size_t(dim.d()) + 1);
    std::vector<int64_t> delta(m, 0);
    std::vector<uint8_t> seen(m, 0);
    std::vector<uint32_t> touched, added;

    for (uint64_t run = 0; run < droplet_runs; ++run) {
      const uint32_t start = starts[run];
      st.clear();
      for (auto& b : buckets) b.clear();
      for (uint32_t t : touched) {
        seen[t] = 0;
        delta[t] = 0;
      }
      touched.clear();
      added.clear();

      size_t low = buckets.size();
      auto absorb = [&](uint32_t idx) {
        st.toggle(idx);
        added.push_back(idx);
        for (uint32_t w : ctx.adj[idx]) {
          const uint32_t wi = uint32_t(ctx.member_idx[w]);
          if (st.in_s[wi]) continue;
          if (!seen[wi]) {
            seen[wi] = 1;
            touched.push_back(wi);
            delta[wi] = int64_t(st.deg(wi)) - 2;
          } else {
            delta[wi] -= 2;
          }
          const size_t b = size_t(delta[wi] + offset);
          buckets[b].push_back(wi);
          low = std::min(low, b);
        }
      };

      absorb(start);
      uint64_t best_boundary = UINT64_MAX, best_size = 0;
      if (st.size >= ctx.lo && st.size <= ctx.hi) {
        best_boundary = st.boundary;
        best_size = st.size;
      }
      while (st.size < ctx.hi) {
        uint32_t pick = UINT32_MAX;
        while (low < buckets.size()) {
          auto& b = buckets[low];
          while (!b.empty()) {
            const uint32_t wi = b.back();
            b.pop_back();
            if (!st.in_s[wi] && size_t(delta[wi] + offset) == low) {
              pick = wi;
              break;
            }
          }
          if (pick != UINT32_MAX) break;
          ++low;
        }
        if (pick == UINT32_MAX) break;  // frontier exhausted
        absorb(pick);
        if (st.size >= ctx.lo && st.size <= ctx.hi &&
            st.boundary < best_boundary) {
          best_boundary = st.boundary;
          best_size = st.size;
        }
      }
      if (best_size == 0) continue;
      st.clear();
      for (uint64_t k = 0; k < best_size; ++k) st.toggle(added[k]);
      refine_and_track();
    }
  }

  cert.probe_inventory = "equator;coordinates:" + std::to_string(dim.d()) +
                         ";partitions:" + std::to_string(partition_runs) +
                         ";random:" + std::to_string(opt.random_starts) +
                         ";droplets:" + std::to_string(droplet_runs) +
                         ";local_search";
  finalize_certificate(cert, dim, best_vertex);
  return cert;
}

namespace {

std::string certificate_csv_row(const ExpansionCertificate& c, double epsilon,
                                uint64_t seed) {
  std::string row;
  row += std::to_string(c.d) + "," + format_g12(epsilon) + "," +
         std::to_string(seed) + "," + format_g12(c.alpha) + "," +
         std::to_string(c.set_size) + "," + std::to_string(c.edge_boundary) +
         "," + std::to_string(c.vertex_boundary) + "," +
         format_g12(c.beta_edge) + "," + format_g12(c.beta_vertex) + "," +
         (c.exhaustive ? "exhaustive" : "heuristic");
  return row;
}

}  // namespace

std::string certificates_csv(const std::vector<ExpansionCertificate>& certs,
                             double epsilon, uint64_t seed) {
  std::string out =
      "d,epsilon,seed,alpha,S_size,edge_boundary,vertex_boundary,beta_edge,"
      "beta_vertex,probe_kind\n";
  for (const auto& c : certs) out += certificate_csv_row(c, epsilon, seed) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Partition probe.

PartitionProbe partition_probe(const PercolationSample& s1,
                               const std::vector<std::vector<uint32_t>>& pieces,
                               const std::vector<uint8_t>& assignment,
                               double q2, uint64_t seed,
                               const PartitionProbeOptions& opt) {
  const Dimension dim = s1.dim;
  if (assignment.size() != pieces.size())
    throw std::invalid_argument("partition_probe: assignment size mismatch");
  if (!(q2 >= 0.0 && q2 <= 1.0))
    throw std::invalid_argument("partition_probe: q2 must be in [0, 1]");

  const uint64_t n = dim.vertex_count();
  Bitset in_a(n), in_b(n);
  PartitionProbe out;
  for (size_t pi = 0; pi < pieces.size(); ++pi) {
    if (assignment[pi] > 1)
      throw std::invalid_argument("partition_probe: assignment entries must be 0 or 1");
    Bitset& side = assignment[pi] ? in_b : in_a;
    std::vector<uint32_t>& list = assignment[pi] ? out.class_b : out.class_a;
    for (uint32_t v : pieces[pi]) {
      check_vertex(v, dim, "partition_probe");
      if (in_a.test(v) || in_b.test(v))
        throw std::invalid_argument("partition_probe: pieces overlap at vertex " +
                                    std::to_string(v));
      side.set(v);
      list.push_back(v);
    }
  }
  std::sort(out.class_a.begin(), out.class_a.end());
  std::sort(out.class_b.begin(), out.class_b.end());

  const uint64_t min_side =
      uint64_t(std::ceil(opt.min_side_fraction * double(n)));
  if (out.class_a.size() < std::max<uint64_t>(1, min_side) ||
      out.class_b.size() < std::max<uint64_t>(1, min_side))
    throw std::invalid_argument("partition_probe: degenerate partition");

  // Closed neighborhoods in the first-round sample.
  auto closed_neighborhood = [&](const Bitset& side) {
    Bitset closed = side;
    for (uint64_t v = 0; v < n; ++v) {
      if (!side.test(v)) continue;
      for (uint32_t i = 0; i < dim.d(); ++i)
        if (s1.has_edge(uint32_t(v), i)) closed.set(v ^ (uint64_t(1) << i));
    }
    return closed;
  };
  const Bitset na = closed_neighborhood(in_a);
  const Bitset nb = closed_neighborhood(in_b);

  for (uint64_t v = 0; v < n; ++v)
    if (na.test(v) && nb.test(v)) out.shared.push_back(uint32_t(v));

  // Fresh round; path predicates read the union of both rounds.
  const PercolationSample s2 = sprinkle(s1, q2, seed);
  auto union_edge = [&](uint32_t v, uint32_t i) { return s2.has_edge(v, i); };

  auto touches = [&](uint32_t v, const Bitset& side) {
    if (side.test(v)) return true;
    for (uint32_t i = 0; i < dim.d(); ++i)
      if (union_edge(v, i) && side.test(v ^ (uint32_t(1) << i))) return true;
    return false;
  };

  const double threshold =
      opt.shared_threshold_factor * double(n) / std::sqrt(double(dim.d()));
  out.used_large_case = double(out.shared.size()) >= threshold;

  if (out.used_large_case) {
    // Majority parity keeps the witness hubs pairwise nonadjacent, so their
    // incident edge sets are disjoint.
    uint64_t even = 0;
    for (uint32_t v : out.shared) even += (parity(v) == 0);
    const uint32_t wanted = 2 * even >= out.shared.size() ? 0 : 1;
    for (uint32_t x : out.shared) {
      if (parity(x) != wanted) continue;
      if (touches(x, in_a) && touches(x, in_b)) ++out.found_paths;
    }
  } else {
    // Greedy host matching from N(A) into its complement, code order.
    Bitset used(n);
    for (uint64_t u = 0; u < n; ++u) {
      if (!na.test(u) || used.test(u)) continue;
      for (uint32_t i = 0; i < dim.d(); ++i) {
        const uint32_t w = uint32_t(u) ^ (uint32_t(1) << i);
        if (na.test(w) || used.test(w)) continue;
        used.set(u);
        used.set(w);
        out.matching.emplace_back(uint32_t(u), w);
        break;
      }
    }
    const Bitset in_d = [&] {
      Bitset d_bits(n);
      for (uint32_t v : out.shared) d_bits.set(v);
      return d_bits;
    }();
    for (auto [u, w] : out.matching) {
      if (in_d.test(u) || in_d.test(w)) continue;
      const uint32_t dir = uint32_t(std::countr_zero(u ^ w));
      if (!union_edge(u & ~(uint32_t(1) << dir), dir)) continue;
      if (touches(u, in_a) && touches(w, in_b)) ++out.found_paths;
    }
  }
  return out;
}

}  // namespace cubelab
