#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>

namespace nml {

/// Set of indices < 32 stored as a bitmask. The tag keeps subsets of
/// different carriers (atoms, models, formulas) from mixing.
template <class Tag>
struct Mask {
  std::uint32_t bits = 0;

  constexpr Mask() = default;
  constexpr explicit Mask(std::uint32_t b) : bits(b) {}

  static constexpr Mask full(unsigned n) {
    return Mask(n >= 32 ? ~0u : ((1u << n) - 1u));
  }
  static constexpr Mask singleton(unsigned i) { return Mask(1u << i); }

  constexpr bool contains(unsigned i) const { return (bits >> i) & 1u; }
  constexpr bool subset_of(Mask o) const { return (bits & ~o.bits) == 0; }
  constexpr bool empty() const { return bits == 0; }
  constexpr int count() const { return std::popcount(bits); }

  constexpr Mask operator|(Mask o) const { return Mask(bits | o.bits); }
  constexpr Mask operator&(Mask o) const { return Mask(bits & o.bits); }
  constexpr Mask operator-(Mask o) const { return Mask(bits & ~o.bits); }
  constexpr Mask& operator|=(Mask o) { bits |= o.bits; return *this; }
  constexpr Mask& operator&=(Mask o) { bits &= o.bits; return *this; }

  constexpr auto operator<=>(const Mask&) const = default;
};

/// Calls fn(sub) for every submask of `mask`, from `mask` down to 0.
template <class Tag, class Fn>
constexpr void for_each_submask(Mask<Tag> mask, Fn&& fn) {
  std::uint32_t s = mask.bits;
  while (true) {
    fn(Mask<Tag>(s));
    if (s == 0) break;
    s = (s - 1) & mask.bits;
  }
}

/// As for_each_submask, but stops as soon as fn returns true. Returns
/// whether it stopped early.
template <class Tag, class Fn>
constexpr bool any_submask(Mask<Tag> mask, Fn&& fn) {
  std::uint32_t s = mask.bits;
  while (true) {
    if (fn(Mask<Tag>(s))) return true;
    if (s == 0) return false;
    s = (s - 1) & mask.bits;
  }
}

/// Every set B with lo ⊆ B ⊆ hi, i.e. lo | (submasks of hi \ lo).
/// Requires lo ⊆ hi.
template <class Tag, class Fn>
constexpr bool any_between(Mask<Tag> lo, Mask<Tag> hi, Fn&& fn) {
  return any_submask(hi - lo, [&](Mask<Tag> s) { return fn(s | lo); });
}

struct AtomTag {};
struct ModelTag {};

using AtomSet = Mask<AtomTag>;
using ModelMask = Mask<ModelTag>;

}  // namespace nml

template <class Tag>
struct std::hash<nml::Mask<Tag>> {
  std::size_t operator()(nml::Mask<Tag> m) const noexcept {
    return std::hash<std::uint32_t>{}(m.bits);
  }
};
