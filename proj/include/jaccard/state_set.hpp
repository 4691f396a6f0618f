#pragma once

#include <cstdint>
#include <vector>

namespace jaccard::detail {

// Membership set over multinomial states keyed by (n1, n2, n3).
// Open-addressed table whose entries are 64-bit occupancy masks for runs of
// 64 consecutive n1 values at fixed (n2, n3), so the expanding wavefront of
// a concentration-set search touches few distinct entries.
class StateKeySet {
 public:
  StateKeySet() { rehash(1024); }

  // Marks the state; returns true when it was not present before.
  bool insert(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3) {
    std::uint64_t& bits = chunk(n1 >> 6, n2, n3);
    const std::uint64_t bit = 1ULL << (n1 & 63U);
    if (bits & bit) return false;
    bits |= bit;
    return true;
  }

  // Occupancy word for the 64-state run at (n2, n3, n1_block), created on
  // first touch. The reference is valid until the next chunk() call.
  std::uint64_t& chunk(std::uint32_t n1_block, std::uint32_t n2,
                       std::uint32_t n3) {
    const std::uint64_t key = (static_cast<std::uint64_t>(n2) << 43) |
                              (static_cast<std::uint64_t>(n3) << 22) |
                              static_cast<std::uint64_t>(n1_block);
    std::size_t idx = slot_of(key);
    if (keys_[idx] == kEmpty) {
      if ((chunks_ + 1) * 10 > capacity_ * 6) {
        rehash(capacity_ * 2);
        idx = slot_of(key);
      }
      keys_[idx] = key;
      bits_[idx] = 0;
      ++chunks_;
    }
    return bits_[idx];
  }

  bool contains(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3) const {
    const std::uint64_t key = (static_cast<std::uint64_t>(n2) << 43) |
                              (static_cast<std::uint64_t>(n3) << 22) |
                              static_cast<std::uint64_t>(n1 >> 6);
    std::size_t idx = slot_of(key);
    return keys_[idx] != kEmpty && (bits_[idx] & (1ULL << (n1 & 63U)));
  }

 private:
  static constexpr std::uint64_t kEmpty = ~0ULL;

  std::size_t slot_of(std::uint64_t key) const {
    std::size_t idx = static_cast<std::size_t>(
        (key * 0x9E3779B97F4A7C15ULL) >> shift_);
    while (keys_[idx] != kEmpty && keys_[idx] != key) {
      idx = (idx + 1) & (capacity_ - 1);
    }
    return idx;
  }

  void rehash(std::size_t new_capacity) {
    std::vector<std::uint64_t> old_keys = std::move(keys_);
    std::vector<std::uint64_t> old_bits = std::move(bits_);
    capacity_ = new_capacity;
    shift_ = 64;
    for (std::size_t c = capacity_; c > 1; c >>= 1) --shift_;
    keys_.assign(capacity_, kEmpty);
    bits_.assign(capacity_, 0);
    for (std::size_t i = 0; i < old_keys.size(); ++i) {
      if (old_keys[i] == kEmpty) continue;
      std::size_t idx = slot_of(old_keys[i]);
      keys_[idx] = old_keys[i];
      bits_[idx] = old_bits[i];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> bits_;
  std::size_t capacity_ = 0;
  std::size_t chunks_ = 0;
  unsigned shift_ = 64;
};

// Same contract as StateKeySet, but rows (n2, n3) index a flat offset table
// and each row owns a run of occupancy words allocated on first touch.
// Probes are two loads. Quadratic in m, so only used for moderate m.
class DenseStateSet {
 public:
  explicit DenseStateSet(std::uint32_t m)
      : words_per_row_(m / 64 + 1),
        stride_(m + 1),
        row_offset_(static_cast<std::size_t>(m + 1) * (m + 1), 0),
        pool_(words_per_row_, 0) {}  // offset 0 is the never-issued sentinel

  bool insert(std::uint32_t n1, std::uint32_t n2, std::uint32_t n3) {
    std::uint64_t& bits = chunk(n1 >> 6, n2, n3);
    const std::uint64_t bit = 1ULL << (n1 & 63U);
    if (bits & bit) return false;
    bits |= bit;
    return true;
  }

  std::uint64_t& chunk(std::uint32_t n1_block, std::uint32_t n2,
                       std::uint32_t n3) {
    std::uint32_t& offset =
        row_offset_[static_cast<std::size_t>(n2) * stride_ + n3];
    if (offset == 0) {
      offset = static_cast<std::uint32_t>(pool_.size());
      pool_.resize(pool_.size() + words_per_row_, 0);
    }
    return pool_[offset + n1_block];
  }

 private:
  std::uint32_t words_per_row_;
  std::uint32_t stride_;
  std::vector<std::uint32_t> row_offset_;
  std::vector<std::uint64_t> pool_;
};

}  // namespace jaccard::detail
