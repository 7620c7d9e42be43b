// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace toxizk {

using u128 = unsigned __int128;

/// Fixed 256-bit unsigned integer, four little-endian 64-bit limbs.
struct U256 {
  std::array<std::uint64_t, 4> limb{};

  constexpr U256() = default;
  constexpr explicit U256(std::uint64_t v) : limb{v, 0, 0, 0} {}
  constexpr U256(std::uint64_t l0, std::uint64_t l1, std::uint64_t l2,
                 std::uint64_t l3)
      : limb{l0, l1, l2, l3} {}

  constexpr bool operator==(const U256&) const = default;

  constexpr bool is_zero() const {
    return (limb[0] | limb[1] | limb[2] | limb[3]) == 0;
  }

  constexpr bool bit(std::size_t i) const {
    return i < 256 && ((limb[i / 64] >> (i % 64)) & 1u) != 0;
  }

  constexpr std::size_t bit_length() const {
    for (int i = 3; i >= 0; --i) {
      if (limb[i] != 0) {
        return static_cast<std::size_t>(i) * 64 +
               (64 - static_cast<std::size_t>(__builtin_clzll(limb[i])));
      }
    }
    return 0;
  }

  /// Extracts `width` (≤ 64) bits starting at bit `offset`.
  constexpr std::uint64_t bits(std::size_t offset, std::size_t width) const {
    if (offset >= 256) return 0;
    const std::size_t idx = offset / 64;
    const std::size_t sh = offset % 64;
    std::uint64_t v = limb[idx] >> sh;
    if (sh != 0 && idx + 1 < 4) v |= limb[idx + 1] << (64 - sh);
    return width >= 64 ? v : (v & ((std::uint64_t{1} << width) - 1));
  }

  /// Parses an optionally 0x-prefixed hex string of at most 64 digits.
  static std::optional<U256> from_hex(std::string_view s);
  /// Parses a decimal string; nullopt on overflow or stray characters.
  static std::optional<U256> from_dec(std::string_view s);

  /// 64 lowercase hex digits, no prefix.
  std::string to_hex() const;
  std::string to_dec() const;

  std::array<std::uint8_t, 32> to_be_bytes() const;
  static U256 from_be_bytes(std::span<const std::uint8_t, 32> bytes);
};

constexpr int compare(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.limb[i] != b.limb[i]) return a.limb[i] < b.limb[i] ? -1 : 1;
  }
  return 0;
}

constexpr bool operator<(const U256& a, const U256& b) {
  return compare(a, b) < 0;
}

/// out = a + b, returns the carry out of the top limb.
constexpr std::uint64_t add_carry(const U256& a, const U256& b, U256& out) {
  std::uint64_t carry = 0;
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    const u128 s = static_cast<u128>(a.limb[i]) + b.limb[i] + carry;
    out.limb[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return carry;
}

/// out = a - b, returns the borrow out of the top limb.
constexpr std::uint64_t sub_borrow(const U256& a, const U256& b, U256& out) {
  std::uint64_t borrow = 0;
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    const u128 d = static_cast<u128>(a.limb[i]) - b.limb[i] - borrow;
    out.limb[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1u;
  }
  return borrow;
}

constexpr U256 shr1(const U256& a) {
  U256 r;
  for (int i = 0; i < 4; ++i) {
    r.limb[i] = a.limb[i] >> 1;
    if (i < 3) r.limb[i] |= a.limb[i + 1] << 63;
  }
  return r;
}

/// Divides in place by a small divisor, returns the remainder.
constexpr std::uint64_t divmod_small(U256& a, std::uint64_t d) {
  u128 rem = 0;
  for (int i = 3; i >= 0; --i) {
    const u128 cur = (rem << 64) | a.limb[i];
    a.limb[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  return static_cast<std::uint64_t>(rem);
}

}  // namespace toxizk
