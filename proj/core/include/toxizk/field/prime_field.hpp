// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "toxizk/errors.hpp"
#include "toxizk/field/bigint.hpp"
#include "toxizk/random.hpp"

namespace toxizk {

namespace detail {

constexpr std::uint64_t neg_inverse_mod_2_64(std::uint64_t p0) {
  std::uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - p0 * inv;
  return ~inv + 1;
}

/// 2^shift mod p, by repeated modular doubling.
constexpr U256 pow2_mod(std::size_t shift, const U256& p) {
  U256 x(1);
  for (std::size_t i = 0; i < shift; ++i) {
    U256 d;
    const std::uint64_t carry = add_carry(x, x, d);
    U256 reduced;
    if (carry != 0 || sub_borrow(d, p, reduced) == 0) {
      sub_borrow(d, p, reduced);
      x = reduced;
    } else {
      x = d;
    }
  }
  return x;
}

}  // namespace detail

/// Prime field element in Montgomery form. `Tag` supplies `kModulus`, which
/// must leave the top bit of the most significant limb clear.
template <class Tag>
class PrimeField {
 public:
  static constexpr U256 kModulus = Tag::kModulus;
  static constexpr std::uint64_t kInv =
      detail::neg_inverse_mod_2_64(kModulus.limb[0]);
  static constexpr U256 kR = detail::pow2_mod(256, kModulus);
  static constexpr U256 kR2 = detail::pow2_mod(512, kModulus);
  static constexpr std::size_t kBits = kModulus.bit_length();

  static_assert((kModulus.limb[3] >> 63) == 0);

  constexpr PrimeField() = default;

  static constexpr PrimeField zero() { return PrimeField(); }
  static constexpr PrimeField one() { return from_mont(kR); }

  static constexpr PrimeField from_u64(std::uint64_t v) {
    return from_canonical(U256(v));
  }

  /// Requires v < p.
  static constexpr PrimeField from_canonical(const U256& v) {
    PrimeField r;
    r.mont_ = mont_mul(v, kR2);
    return r;
  }

  /// Reduces any 256-bit value mod p.
  static constexpr PrimeField from_u256_reduce(U256 v) {
    while (!(v < kModulus)) sub_borrow(v, kModulus, v);
    return from_canonical(v);
  }

  static constexpr PrimeField from_mont(const U256& m) {
    PrimeField r;
    r.mont_ = m;
    return r;
  }

  static constexpr bool is_canonical(const U256& v) { return v < kModulus; }

  /// Signed small integer, mapped to p - |v| when negative.
  static constexpr PrimeField from_i64(std::int64_t v) {
    if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
    return -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
  }

  constexpr U256 to_u256() const { return mont_mul(mont_, U256(1)); }
  constexpr const U256& mont() const { return mont_; }

  constexpr bool is_zero() const { return mont_.is_zero(); }
  constexpr bool is_one() const { return mont_ == kR; }
  constexpr bool operator==(const PrimeField&) const = default;

  constexpr PrimeField operator+(const PrimeField& o) const {
    PrimeField r;
    const std::uint64_t carry = add_carry(mont_, o.mont_, r.mont_);
    U256 t;
    if (sub_borrow(r.mont_, kModulus, t) == 0 || carry != 0) r.mont_ = t;
    return r;
  }

  constexpr PrimeField operator-(const PrimeField& o) const {
    PrimeField r;
    if (sub_borrow(mont_, o.mont_, r.mont_) != 0) {
      add_carry(r.mont_, kModulus, r.mont_);
    }
    return r;
  }

  constexpr PrimeField operator-() const {
    if (is_zero()) return *this;
    PrimeField r;
    sub_borrow(kModulus, mont_, r.mont_);
    return r;
  }

  constexpr PrimeField operator*(const PrimeField& o) const {
    return from_mont(mont_mul(mont_, o.mont_));
  }

  constexpr PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
  constexpr PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
  constexpr PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }

  constexpr PrimeField square() const { return *this * *this; }
  constexpr PrimeField dbl() const { return *this + *this; }

  constexpr PrimeField pow(const U256& e) const {
    PrimeField result = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      result = result.square();
      if (e.bit(i)) result *= *this;
    }
    return result;
  }

  /// Multiplicative inverse; the inverse of zero is zero.
  constexpr PrimeField inverse() const {
    U256 e;
    sub_borrow(kModulus, U256(2), e);
    return pow(e);
  }

  static PrimeField random(RandomSource& rng) {
    // Rejection sampling over [0, 2^kBits) keeps the distribution exactly uniform.
    for (;;) {
      std::array<std::uint8_t, 32> buf{};
      rng.fill(buf);
      U256 v = U256::from_be_bytes(buf);
      for (std::size_t i = kBits; i < 256; ++i) {
        v.limb[i / 64] &= ~(std::uint64_t{1} << (i % 64));
      }
      if (v < kModulus) return from_canonical(v);
    }
  }

  std::array<std::uint8_t, 32> to_bytes() const { return to_u256().to_be_bytes(); }

  /// Canonical 32-byte big-endian decoding; values ≥ p are rejected.
  static PrimeField from_bytes(std::span<const std::uint8_t, 32> bytes) {
    const U256 v = U256::from_be_bytes(bytes);
    if (!is_canonical(v)) throw DecodeError("field element not below modulus");
    return from_canonical(v);
  }

  /// 0x-prefixed 64-digit hex.
  std::string to_hex() const { return "0x" + to_u256().to_hex(); }

  static PrimeField from_hex(std::string_view s) {
    if (s.size() != 66 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
      throw DecodeError("field element must be 0x followed by 64 hex digits");
    }
    const auto v = U256::from_hex(s);
    if (!v) throw DecodeError("invalid hex digit in field element");
    if (!is_canonical(*v)) throw DecodeError("field element not below modulus");
    return from_canonical(*v);
  }

 private:
  static constexpr U256 mont_mul(const U256& a, const U256& b) {
    std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
#pragma GCC unroll 4
    for (int i = 0; i < 4; ++i) {
      std::uint64_t carry = 0;
#pragma GCC unroll 4
      for (int j = 0; j < 4; ++j) {
        const u128 uv = static_cast<u128>(a.limb[j]) * b.limb[i] + t[j] + carry;
        t[j] = static_cast<std::uint64_t>(uv);
        carry = static_cast<std::uint64_t>(uv >> 64);
      }
      u128 uv = static_cast<u128>(t[4]) + carry;
      t[4] = static_cast<std::uint64_t>(uv);
      t[5] = static_cast<std::uint64_t>(uv >> 64);

      const std::uint64_t m = t[0] * kInv;
      uv = static_cast<u128>(m) * kModulus.limb[0] + t[0];
      carry = static_cast<std::uint64_t>(uv >> 64);
#pragma GCC unroll 3
      for (int j = 1; j < 4; ++j) {
        uv = static_cast<u128>(m) * kModulus.limb[j] + t[j] + carry;
        t[j - 1] = static_cast<std::uint64_t>(uv);
        carry = static_cast<std::uint64_t>(uv >> 64);
      }
      uv = static_cast<u128>(t[4]) + carry;
      t[3] = static_cast<std::uint64_t>(uv);
      t[4] = t[5] + static_cast<std::uint64_t>(uv >> 64);
    }
    U256 r(t[0], t[1], t[2], t[3]);
    U256 reduced;
    if (sub_borrow(r, kModulus, reduced) == 0 || t[4] != 0) r = reduced;
    return r;
  }

  U256 mont_;
};

struct FrTag {
  // Group order of alt-bn128.
  static constexpr U256 kModulus{0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                                 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
};

struct FqTag {
  // Base field of alt-bn128.
  static constexpr U256 kModulus{0x3c208c16d87cfd47ULL, 0x97816a916871ca8dULL,
                                 0xb85045b68181585dULL, 0x30644e72e131a029ULL};
};

/// Scalar field of BN254; every circuit value lives here.
using Fr = PrimeField<FrTag>;
/// Base field of BN254, coordinates of curve points.
using Fq = PrimeField<FqTag>;

}  // namespace toxizk
