// SPDX-License-Identifier: Apache-2.0
#include "toxizk/field/bigint.hpp"

#include <algorithm>

namespace toxizk {
namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::optional<U256> U256::from_hex(std::string_view s) {
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
  }
  if (s.empty() || s.size() > 64) return std::nullopt;
  U256 r;
  std::size_t nibble = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it, ++nibble) {
    const int d = hex_digit(*it);
    if (d < 0) return std::nullopt;
    r.limb[nibble / 16] |= static_cast<std::uint64_t>(d) << (4 * (nibble % 16));
  }
  return r;
}

std::optional<U256> U256::from_dec(std::string_view s) {
  if (s.empty()) return std::nullopt;
  U256 r;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    // r = r * 10 + digit
    std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
    for (auto& l : r.limb) {
      const u128 v = static_cast<u128>(l) * 10 + carry;
      l = static_cast<std::uint64_t>(v);
      carry = static_cast<std::uint64_t>(v >> 64);
    }
    if (carry != 0) return std::nullopt;
  }
  return r;
}

std::string U256::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(64, '0');
  for (std::size_t i = 0; i < 64; ++i) {
    const std::uint64_t nib = (limb[i / 16] >> (4 * (i % 16))) & 0xf;
    out[63 - i] = kDigits[nib];
  }
  return out;
}

std::string U256::to_dec() const {
  if (is_zero()) return "0";
  U256 t = *this;
  std::string out;
  while (!t.is_zero()) {
    out.push_back(static_cast<char>('0' + divmod_small(t, 10)));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::array<std::uint8_t, 32> U256::to_be_bytes() const {
  std::array<std::uint8_t, 32> out{};
  for (std::size_t i = 0; i < 32; ++i) {
    out[31 - i] = static_cast<std::uint8_t>(limb[i / 8] >> (8 * (i % 8)));
  }
  return out;
}

U256 U256::from_be_bytes(std::span<const std::uint8_t, 32> bytes) {
  U256 r;
  for (std::size_t i = 0; i < 32; ++i) {
    r.limb[i / 8] |= static_cast<std::uint64_t>(bytes[31 - i]) << (8 * (i % 8));
  }
  return r;
}

}  // namespace toxizk
