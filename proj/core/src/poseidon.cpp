// SPDX-License-Identifier: Apache-2.0
#include "toxizk/poseidon.hpp"

#include <array>
#include <mutex>
#include <string>

#include "poseidon_constants.hpp"

namespace toxizk {
namespace {

constexpr std::size_t kFullRounds = 8;
// Indexed by width - 2.
constexpr std::array<std::size_t, poseidon_data::kNumWidths> kPartialRounds = {
    56, 57, 56, 60, 60, 63, 64, 63};

PoseidonParams build_params(std::size_t width) {
  const auto& raw = poseidon_data::kRawParams[width - poseidon_data::kMinWidth];
  PoseidonParams p;
  p.width = raw.width;
  p.full_rounds = kFullRounds;
  p.partial_rounds = kPartialRounds[width - poseidon_data::kMinWidth];
  p.round_constants.reserve(raw.num_constants);
  for (std::size_t i = 0; i < raw.num_constants; ++i) {
    p.round_constants.push_back(Fr::from_canonical(raw.round_constants[i]));
  }
  p.mds.reserve(width * width);
  for (std::size_t i = 0; i < width * width; ++i) {
    p.mds.push_back(Fr::from_canonical(raw.mds[i]));
  }
  p.validate();
  return p;
}

}  // namespace

void PoseidonParams::validate() const {
  if (width < 2) throw ParameterError("poseidon width must be at least 2");
  if (round_constants.size() != width * total_rounds()) {
    throw ParameterError("poseidon round constant count mismatch");
  }
  if (mds.size() != width * width || !is_invertible(mds, width)) {
    throw ParameterError("poseidon MDS matrix is not invertible");
  }
}

bool is_invertible(std::span<const Fr> matrix, std::size_t n) {
  std::vector<Fr> m(matrix.begin(), matrix.end());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col].is_zero()) ++pivot;
    if (pivot == n) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[pivot * n + k], m[col * n + k]);
    }
    const Fr inv = m[col * n + col].inverse();
    for (std::size_t row = col + 1; row < n; ++row) {
      const Fr factor = m[row * n + col] * inv;
      if (factor.is_zero()) continue;
      for (std::size_t k = col; k < n; ++k) m[row * n + k] -= factor * m[col * n + k];
    }
  }
  return true;
}

const PoseidonParams& poseidon_params(std::size_t width) {
  if (width < kPoseidonMinWidth || width > kPoseidonMaxWidth) {
    throw ParameterError("no poseidon instance for width " + std::to_string(width));
  }
  static std::array<PoseidonParams, poseidon_data::kNumWidths> cache;
  static std::array<std::once_flag, poseidon_data::kNumWidths> once;
  const std::size_t idx = width - kPoseidonMinWidth;
  std::call_once(once[idx], [&] { cache[idx] = build_params(width); });
  return cache[idx];
}

std::vector<Fr> poseidon_permute(std::span<const Fr> state,
                                 const PoseidonParams& params) {
  if (state.size() != params.width) {
    throw ParameterError("poseidon state length " + std::to_string(state.size()) +
                         " does not match width " + std::to_string(params.width));
  }
  const std::size_t t = params.width;
  std::vector<Fr> cur(state.begin(), state.end());
  std::vector<Fr> next(t);
  for (std::size_t r = 0; r < params.total_rounds(); ++r) {
    for (std::size_t i = 0; i < t; ++i) cur[i] += params.constant(r, i);
    if (params.is_full_round(r)) {
      for (auto& x : cur) x = poseidon_sbox(x);
    } else {
      cur[0] = poseidon_sbox(cur[0]);
    }
    for (std::size_t i = 0; i < t; ++i) {
      Fr acc;
      for (std::size_t j = 0; j < t; ++j) acc += params.mds_at(i, j) * cur[j];
      next[i] = acc;
    }
    cur.swap(next);
  }
  return cur;
}

Fr poseidon_hash(std::span<const Fr> inputs) {
  if (inputs.empty() || inputs.size() > kPoseidonMaxWidth - 1) {
    throw ParameterError("poseidon hash takes 1 to 8 inputs, got " +
                         std::to_string(inputs.size()));
  }
  const auto& params = poseidon_params(inputs.size() + 1);
  std::vector<Fr> state;
  state.reserve(params.width);
  state.push_back(Fr::zero());
  state.insert(state.end(), inputs.begin(), inputs.end());
  return poseidon_permute(state, params)[0];
}

}  // namespace toxizk
