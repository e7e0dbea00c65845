#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace fgl {

/// Fixed-capacity bitset over edge ids, used as the removed-edge set of a game
/// position and as the key of the transposition table.
class EdgeMask {
 public:
  static constexpr std::size_t kCapacity = 128;

  constexpr EdgeMask() = default;

  static constexpr EdgeMask from_words(std::uint64_t lo, std::uint64_t hi) {
    EdgeMask m;
    m.words_ = {lo, hi};
    return m;
  }

  static constexpr EdgeMask single(std::size_t e) {
    EdgeMask m;
    m.set(e);
    return m;
  }

  constexpr void set(std::size_t e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  constexpr void reset(std::size_t e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  [[nodiscard]] constexpr bool test(std::size_t e) const {
    return (words_[e >> 6] >> (e & 63)) & 1U;
  }

  [[nodiscard]] constexpr bool none() const { return (words_[0] | words_[1]) == 0; }
  [[nodiscard]] constexpr bool any() const { return !none(); }
  [[nodiscard]] constexpr std::size_t count() const {
    return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
  }

  /// Index of the lowest set bit; undefined on an empty mask.
  [[nodiscard]] constexpr std::size_t lowest() const {
    return words_[0] != 0 ? static_cast<std::size_t>(std::countr_zero(words_[0]))
                          : 64 + static_cast<std::size_t>(std::countr_zero(words_[1]));
  }
  constexpr void clear_lowest() {
    if (words_[0] != 0) {
      words_[0] &= words_[0] - 1;
    } else {
      words_[1] &= words_[1] - 1;
    }
  }

  /// Calls f(e) for every set bit in ascending order.
  template <typename F>
  constexpr void for_each(F&& f) const {
    for (std::size_t w = 0; w < 2; ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  constexpr EdgeMask& operator|=(const EdgeMask& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  constexpr EdgeMask& operator&=(const EdgeMask& o) {
    words_[0] &= o.words_[0];
    words_[1] &= o.words_[1];
    return *this;
  }
  friend constexpr EdgeMask operator|(EdgeMask a, const EdgeMask& b) { return a |= b; }
  friend constexpr EdgeMask operator&(EdgeMask a, const EdgeMask& b) { return a &= b; }
  friend constexpr EdgeMask operator~(EdgeMask a) {
    a.words_[0] = ~a.words_[0];
    a.words_[1] = ~a.words_[1];
    return a;
  }
  friend constexpr bool operator==(const EdgeMask&, const EdgeMask&) = default;

  [[nodiscard]] constexpr std::uint64_t word(std::size_t i) const { return words_[i]; }

  [[nodiscard]] std::uint64_t hash() const {
    // splitmix64 finaliser over both words
    auto mix = [](std::uint64_t z) {
      z += 0x9e3779b97f4a7c15ULL;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    };
    return mix(words_[0] ^ mix(words_[1]));
  }

 private:
  std::array<std::uint64_t, 2> words_{};
};

}  // namespace fgl

template <>
struct std::hash<fgl::EdgeMask> {
  std::size_t operator()(const fgl::EdgeMask& m) const noexcept {
    return static_cast<std::size_t>(m.hash());
  }
};
