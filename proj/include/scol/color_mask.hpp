#ifndef SCOL_COLOR_MASK_HPP
#define SCOL_COLOR_MASK_HPP

#include <bit>
#include <cassert>
#include <cstdint>

namespace scol {

using Color = int;  // 1-based, palette [q]

/// Fixed 128-bit color set; color c occupies bit c-1.
class ColorMask {
 public:
  static constexpr int kMaxColor = 128;

  constexpr ColorMask() = default;

  static constexpr ColorMask single(Color c) {
    ColorMask m;
    m.set(c);
    return m;
  }

  constexpr void set(Color c) {
    assert(c >= 1 && c <= kMaxColor);
    const int b = c - 1;
    w_[b >> 6] |= std::uint64_t{1} << (b & 63);
  }
  constexpr void reset(Color c) {
    const int b = c - 1;
    w_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }
  constexpr bool test(Color c) const {
    const int b = c - 1;
    return (w_[b >> 6] >> (b & 63)) & 1U;
  }
  constexpr int count() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
  constexpr bool empty() const { return (w_[0] | w_[1]) == 0; }

  constexpr ColorMask operator&(const ColorMask& o) const { return {w_[0] & o.w_[0], w_[1] & o.w_[1]}; }
  constexpr ColorMask operator|(const ColorMask& o) const { return {w_[0] | o.w_[0], w_[1] | o.w_[1]}; }
  constexpr ColorMask without(const ColorMask& o) const { return {w_[0] & ~o.w_[0], w_[1] & ~o.w_[1]}; }
  constexpr ColorMask& operator|=(const ColorMask& o) {
    w_[0] |= o.w_[0];
    w_[1] |= o.w_[1];
    return *this;
  }
  constexpr bool operator==(const ColorMask&) const = default;

  /// The k-th smallest color in the set (k is 0-based, k < count()).
  constexpr Color nth(int k) const {
    const int low = std::popcount(w_[0]);
    if (k < low) return select64(w_[0], k) + 1;
    return select64(w_[1], k - low) + 65;
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (int h = 0; h < 2; ++h) {
      std::uint64_t w = w_[h];
      while (w) {
        f(static_cast<Color>(std::countr_zero(w) + 64 * h + 1));
        w &= w - 1;
      }
    }
  }

 private:
  constexpr ColorMask(std::uint64_t lo, std::uint64_t hi) : w_{lo, hi} {}

  static constexpr int select64(std::uint64_t w, int k) {
    int base = 0;
    for (int width = 32; width >= 8; width >>= 1) {
      const std::uint64_t lowmask = (std::uint64_t{1} << width) - 1;
      const int c = std::popcount(w & lowmask);
      if (k >= c) {
        k -= c;
        w >>= width;
        base += width;
      } else {
        w &= lowmask;
      }
    }
    for (; k > 0; --k) w &= w - 1;
    return base + std::countr_zero(w);
  }

  std::uint64_t w_[2] = {0, 0};
};

}  // namespace scol

#endif  // SCOL_COLOR_MASK_HPP
