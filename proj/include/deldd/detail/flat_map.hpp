#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace deldd::detail {

struct Key128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  bool operator==(const Key128&) const = default;
};

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Open-addressing map from 128-bit keys to 32-bit values with linear probing.
/// The all-ones key is reserved as the empty marker. No erase.
class FlatMap128 {
 public:
  explicit FlatMap128(std::size_t initial_capacity = 1024) { rehash(round_up(initial_capacity)); }

  const std::uint32_t* find(const Key128& key) const {
    std::size_t i = slot_of(key);
    while (true) {
      const Slot& s = slots_[i];
      if (s.key == key) return &s.value;
      if (s.key == kEmpty) return nullptr;
      i = (i + 1) & mask_;
    }
  }

  /// Inserts or overwrites.
  void insert(const Key128& key, std::uint32_t value) {
    if ((size_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t i = slot_of(key);
    while (true) {
      Slot& s = slots_[i];
      if (s.key == kEmpty) {
        s.key = key;
        s.value = value;
        ++size_;
        return;
      }
      if (s.key == key) {
        s.value = value;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  std::size_t size() const { return size_; }

  void clear() {
    slots_.assign(1024, Slot{});
    mask_ = slots_.size() - 1;
    size_ = 0;
  }

 private:
  static constexpr Key128 kEmpty{~0ULL, ~0ULL};
  struct Slot {
    Key128 key = kEmpty;
    std::uint32_t value = 0;
  };

  static std::size_t round_up(std::size_t n) {
    std::size_t c = 16;
    while (c < n) c <<= 1;
    return c;
  }

  std::size_t slot_of(const Key128& key) const {
    return static_cast<std::size_t>(mix64(key.hi ^ mix64(key.lo))) & mask_;
  }

  void rehash(std::size_t capacity) {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(capacity, Slot{});
    mask_ = capacity - 1;
    size_ = 0;
    for (const Slot& s : old) {
      if (!(s.key == kEmpty)) insert(s.key, s.value);
    }
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace deldd::detail
