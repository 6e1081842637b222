#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cubelab {

// Runtime-sized bitset with 64-bit indices, large enough for the edge set of
// Q^30. Trailing bits of the last word stay zero so count() and equality can
// work on whole words.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(uint64_t bits) : nbits_(bits), words_((bits + 63) / 64, 0) {}

  uint64_t size() const { return nbits_; }

  bool test(uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(uint64_t i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(uint64_t i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  uint64_t count() const {
    uint64_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }

  // Raw word access, used by bulk generation and serialization.
  size_t word_count() const { return words_.size(); }
  uint64_t word(size_t i) const { return words_[i]; }
  void set_word(size_t i, uint64_t w) {
    words_[i] = w;
    if (i + 1 == words_.size()) trim();
  }

  void unite(const Bitset& o) {
    require_same(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }

  // True when o's set bits are a subset of this bitset's.
  bool contains(const Bitset& o) const {
    require_same(o);
    for (size_t i = 0; i < words_.size(); ++i)
      if (o.words_[i] & ~words_[i]) return false;
    return true;
  }

  bool operator==(const Bitset&) const = default;

 private:
  void trim() {
    if (nbits_ & 63) words_.back() &= (uint64_t(1) << (nbits_ & 63)) - 1;
  }
  void require_same(const Bitset& o) const {
    if (nbits_ != o.nbits_) throw std::invalid_argument("Bitset: size mismatch");
  }

  uint64_t nbits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace cubelab
