#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fgl/edge_mask.hpp"

namespace fgl {

/// Open-addressing win/loss cache keyed by (token, removed-edge mask).
///
/// Starts small and doubles while under half load until `capacity` slots are
/// allocated; from then on a store that finds its probe window full evicts the
/// entry with the shallowest remaining subtree. Lookups never return a wrong
/// value, but an evicted position is simply searched again.
class TranspositionTable {
 public:
  explicit TranspositionTable(std::size_t capacity = std::size_t{1} << 22)
      : capacity_(round_up(capacity < kMinSlots ? kMinSlots : capacity)),
        slots_(std::min(capacity_, kInitialSlots)) {}

  [[nodiscard]] std::optional<bool> lookup(std::uint32_t token, const EdgeMask& key) const {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = index_of(token, key) & mask;
    for (std::size_t p = 0; p < kProbe; ++p, i = (i + 1) & mask) {
      const Slot& s = slots_[i];
      if (!s.used) return std::nullopt;
      if (s.token == token && s.lo == key.word(0) && s.hi == key.word(1)) return s.win;
    }
    return std::nullopt;
  }

  /// `removed` is the number of edges already used; fewer means a deeper subtree.
  void store(std::uint32_t token, const EdgeMask& key, bool win, std::size_t removed) {
    if (slots_.size() < capacity_ && (size_ + 1) * 2 > slots_.size()) grow();
    place(Slot{key.word(0), key.word(1), token, static_cast<std::uint16_t>(removed), true, win});
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t slot_count() const { return slots_.size(); }
  [[nodiscard]] std::size_t evictions() const { return evictions_; }

  void clear() {
    slots_.assign(std::min(capacity_, kInitialSlots), Slot{});
    size_ = 0;
    evictions_ = 0;
  }

 private:
  struct Slot {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint32_t token = 0;
    std::uint16_t removed = 0;
    bool used = false;
    bool win = false;
  };

  static constexpr std::size_t kProbe = 8;
  static constexpr std::size_t kMinSlots = 64;
  static constexpr std::size_t kInitialSlots = std::size_t{1} << 12;

  static std::size_t round_up(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
  }

  static std::size_t index_of(std::uint32_t token, const EdgeMask& key) {
    return static_cast<std::size_t>(key.hash() ^ (std::uint64_t{token} * 0x9e3779b97f4a7c15ULL));
  }

  void place(const Slot& in) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = index_of(in.token, EdgeMask::from_words(in.lo, in.hi)) & mask;
    std::size_t victim = i;
    for (std::size_t p = 0; p < kProbe; ++p, i = (i + 1) & mask) {
      Slot& s = slots_[i];
      if (!s.used) {
        s = in;
        ++size_;
        return;
      }
      if (s.token == in.token && s.lo == in.lo && s.hi == in.hi) {
        s.win = in.win;
        return;
      }
      if (s.removed > slots_[victim].removed) victim = i;
    }
    slots_[victim] = in;
    ++evictions_;
  }

  void grow() {
    std::vector<Slot> old(slots_.size() * 2);
    old.swap(slots_);
    size_ = 0;
    for (const Slot& s : old) {
      if (s.used) place(s);
    }
  }

  std::size_t capacity_;
  std::vector<Slot> slots_;
  std::size_t size_ = 0;
  std::size_t evictions_ = 0;
};

}  // namespace fgl
