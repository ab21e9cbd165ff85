#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace faultbound {

// Packed bit sequence: bit t lives at word t/64, lane t%64. Bits at or past
// size() in the last word must stay zero; call mask_tail() after writing raw
// words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::uint64_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }

  std::uint64_t word(std::size_t i) const { return words_[i]; }
  void set_word(std::size_t i, std::uint64_t v) { words_[i] = v; }

  std::span<const std::uint64_t> words() const { return words_; }

  bool get(std::uint64_t t) const { return (words_[t >> 6] >> (t & 63)) & 1; }

  void set(std::uint64_t t, bool v) {
    const std::uint64_t m = 1ULL << (t & 63);
    if (v)
      words_[t >> 6] |= m;
    else
      words_[t >> 6] &= ~m;
  }

  std::uint64_t tail_mask() const {
    const unsigned r = size_ & 63;
    return r == 0 ? ~0ULL : (1ULL << r) - 1;
  }

  void mask_tail() {
    if (!words_.empty()) words_.back() &= tail_mask();
  }

  std::uint64_t count_ones() const {
    std::uint64_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  // Transitions between consecutive bits t-1 -> t for t in [1, size).
  std::uint64_t count_transitions() const {
    if (size_ < 2) return 0;
    std::uint64_t n = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      const std::uint64_t w = words_[i];
      std::uint64_t d = w ^ ((w << 1) | carry);
      if (i == 0) d &= ~1ULL;
      if (i + 1 == words_.size()) d &= tail_mask();
      n += std::popcount(d);
      carry = w >> 63;
    }
    return n;
  }

  bool operator==(const BitVec&) const = default;

 private:
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace faultbound
