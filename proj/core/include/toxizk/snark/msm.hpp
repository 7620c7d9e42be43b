// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "toxizk/errors.hpp"
#include "toxizk/snark/curve.hpp"

namespace toxizk::snark {

/// Bucket window width minimising windows * (points + 2 * buckets).
inline unsigned msm_window_bits(std::size_t n) {
  unsigned best = 1;
  std::size_t best_cost = static_cast<std::size_t>(-1);
  for (unsigned c = 1; c <= 16; ++c) {
    const std::size_t windows = (254 + c - 1) / c;
    const std::size_t cost = windows * (n + (std::size_t{2} << c));
    if (cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  return best;
}

/// sum(scalars[i] * bases[i]) by Pippenger's bucket method. Scalars of 0 and
/// 1 (boolean wires dominate R1CS witnesses) bypass the buckets.
template <class Curve>
Jacobian<Curve> msm(std::span<const Affine<typename Curve::Field>> bases, std::span<const U256> scalars) {
  using J = Jacobian<Curve>;
  if (bases.size() != scalars.size()) throw ProverError("msm: length mismatch");

  J ones;
  std::vector<std::size_t> large;
  large.reserve(scalars.size());
  std::size_t max_bits = 0;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    const std::size_t bits = scalars[i].bit_length();
    if (bits == 0 || bases[i].infinity) continue;
    if (bits == 1) {
      ones = ones.add_affine(bases[i]);
      continue;
    }
    large.push_back(i);
    max_bits = std::max(max_bits, bits);
  }
  if (large.empty()) return ones;

  const unsigned c = msm_window_bits(large.size());
  const std::size_t windows = (max_bits + c - 1) / c;
  std::vector<J> buckets(std::size_t{1} << c);
  J acc;
  for (std::size_t w = windows; w-- > 0;) {
    for (unsigned k = 0; k < c; ++k) acc = acc.dbl();
    std::fill(buckets.begin(), buckets.end(), J{});
    for (std::size_t i : large) {
      const auto d = static_cast<std::size_t>(scalars[i].bits(w * c, c));
      if (d != 0) buckets[d] = buckets[d].add_affine(bases[i]);
    }
    J running;
    J window_sum;
    for (std::size_t d = buckets.size(); d-- > 1;) {
      running += buckets[d];
      window_sum += running;
    }
    acc += window_sum;
  }
  return acc + ones;
}

}  // namespace toxizk::snark
