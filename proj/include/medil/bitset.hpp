#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace medil {

// Fixed-size (set at construction) bitset with word-level set algebra.
// Unlike std::bitset the size is a runtime value; unlike
// boost::dynamic_bitset the hot predicates (intersects, intersect_count,
// is_subset_of) never allocate.
class Bitset {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size)
      : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= bit(i); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~bit(i); }
  void set(std::size_t i, bool value) noexcept {
    if (value) {
      set(i);
    } else {
      reset(i);
    }
  }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (word_type w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const noexcept {
    return std::any_of(words_.begin(), words_.end(),
                       [](word_type w) { return w != 0; });
  }
  bool none() const noexcept { return !any(); }

  bool intersects(const Bitset& o) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }
  std::size_t intersect_count(const Bitset& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }
  // this ∩ mask ⊆ other ∩ mask
  bool is_subset_of(const Bitset& o, const Bitset& mask) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & mask.words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool is_subset_of(const Bitset& o) const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  // this \ o
  Bitset& subtract(const Bitset& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  // Index of the first set bit at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= size_) return size_;
    std::size_t k = from / kWordBits;
    word_type w = words_[k] & (~word_type{0} << (from % kWordBits));
    while (true) {
      if (w) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return size_;
      w = words_[k];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_type w = words_[k];
      while (w) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  static word_type bit(std::size_t i) noexcept {
    return word_type{1} << (i % kWordBits);
  }

  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

}  // namespace medil
