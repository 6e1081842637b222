#include "cubelab/sample.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace cubelab {

namespace {

void check_probability(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(where) +
                                ": probability must be in [0, 1]");
}

// Fill whole 64-bit words at a time; bit j of word w is edge 64*w + j.
Bitset draw_edges(Dimension dim, double p, uint64_t seed) {
  Bitset edges(dim.edge_count());
  const uint64_t m = dim.edge_count();
  uint64_t e = 0;
  for (size_t w = 0; w < edges.word_count(); ++w) {
    uint64_t bits = 0;
    const uint64_t hi = (w + 1) * 64 < m ? (w + 1) * 64 : m;
    for (uint64_t j = 0; e < hi; ++e, ++j)
      if (unit_double(edge_stream(seed, e)) < p) bits |= uint64_t(1) << j;
    edges.set_word(w, bits);
  }
  return edges;
}

}  // namespace

PercolationSample sample(Dimension dim, double p, uint64_t seed) {
  check_probability(p, "sample");
  return PercolationSample{dim, p, seed, draw_edges(dim, p, seed)};
}

double residual_probability(double p, double q1) {
  check_probability(p, "residual_probability");
  check_probability(q1, "residual_probability");
  if (q1 > p)
    throw std::invalid_argument("residual_probability: q1 exceeds target p");
  if (q1 >= 1.0)
    throw std::invalid_argument("residual_probability: q1 must be < 1");
  return (p - q1) / (1.0 - q1);
}

PercolationSample sprinkle(const PercolationSample& base, double q,
                           uint64_t seed) {
  check_probability(q, "sprinkle");
  PercolationSample out = base;
  out.edges.unite(draw_edges(base.dim, q, seed));
  out.p = 1.0 - (1.0 - base.p) * (1.0 - q);
  out.seed = seed;
  return out;
}

namespace {

constexpr char kMagic[8] = {'C', 'U', 'B', 'E', 'S', 'M', 'P', '1'};

void put_u32(std::string& buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(char((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(const unsigned char* p) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

uint64_t get_u64(const unsigned char* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

void save_sample(const PercolationSample& s, const std::string& path) {
  std::string buf;
  buf.reserve(32 + 8 * s.edges.word_count());
  buf.append(kMagic, sizeof kMagic);
  put_u32(buf, s.dim.d());
  put_u32(buf, 0);
  put_u64(buf, std::bit_cast<uint64_t>(s.p));
  put_u64(buf, s.seed);
  for (size_t i = 0; i < s.edges.word_count(); ++i) put_u64(buf, s.edges.word(i));

  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("save_sample: cannot open " + path);
  const size_t n = std::fwrite(buf.data(), 1, buf.size(), f);
  const int rc = std::fclose(f);
  if (n != buf.size() || rc != 0)
    throw std::runtime_error("save_sample: short write to " + path);
}

PercolationSample load_sample(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("load_sample: cannot open " + path);
  std::string buf;
  char chunk[65536];
  size_t n;
  while ((n = std::fread(chunk, 1, sizeof chunk, f)) > 0) buf.append(chunk, n);
  std::fclose(f);

  const auto* raw = reinterpret_cast<const unsigned char*>(buf.data());
  if (buf.size() < 32 || std::memcmp(raw, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("load_sample: bad magic in " + path);
  const uint32_t d = get_u32(raw + 8);
  Dimension dim(d);  // validates the range
  const double p = std::bit_cast<double>(get_u64(raw + 16));
  if (!(p >= 0.0 && p <= 1.0))
    throw std::runtime_error("load_sample: stored p out of [0, 1]");
  const uint64_t seed = get_u64(raw + 24);

  Bitset edges(dim.edge_count());
  const size_t want = 32 + 8 * edges.word_count();
  if (buf.size() != want)
    throw std::runtime_error("load_sample: file size mismatch in " + path);
  for (size_t i = 0; i < edges.word_count(); ++i)
    edges.set_word(i, get_u64(raw + 32 + 8 * i));
  // set_word trims the tail, so a file with stray bits past n*d/2 would not
  // round-trip; reject it instead of silently dropping them.
  if ((dim.edge_count() & 63) != 0) {
    const uint64_t tail = get_u64(raw + 32 + 8 * (edges.word_count() - 1));
    if (tail != edges.word(edges.word_count() - 1))
      throw std::runtime_error("load_sample: nonzero bits past edge count");
  }
  return PercolationSample{dim, p, seed, std::move(edges)};
}

}  // namespace cubelab
