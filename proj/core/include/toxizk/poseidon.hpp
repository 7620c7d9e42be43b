// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toxizk/field/prime_field.hpp"

namespace toxizk {

/// One Poseidon instance over the BN254 scalar field with the x^5 S-box.
///
/// Round constants and MDS matrices are the widely deployed circomlib set
/// (Grain LFSR generation, 128-bit security, 8 full rounds). The capacity
/// element sits in slot 0; inputs occupy slots 1..width-1.
struct PoseidonParams {
  std::size_t width = 0;
  std::size_t full_rounds = 0;
  std::size_t partial_rounds = 0;
  std::vector<Fr> round_constants;  // width * (full_rounds + partial_rounds)
  std::vector<Fr> mds;              // row-major width x width

  std::size_t total_rounds() const { return full_rounds + partial_rounds; }
  const Fr& constant(std::size_t round, std::size_t slot) const {
    return round_constants[round * width + slot];
  }
  const Fr& mds_at(std::size_t row, std::size_t col) const {
    return mds[row * width + col];
  }
  bool is_full_round(std::size_t round) const {
    return round < full_rounds / 2 || round >= full_rounds / 2 + partial_rounds;
  }

  /// Throws ParameterError if the constant count is wrong or the MDS matrix
  /// is singular.
  void validate() const;
};

inline constexpr std::size_t kPoseidonMinWidth = 2;
inline constexpr std::size_t kPoseidonMaxWidth = 9;

/// Cached parameters for width 2..9. Throws ParameterError otherwise.
const PoseidonParams& poseidon_params(std::size_t width);

/// Full Poseidon permutation; state.size() must equal params.width.
std::vector<Fr> poseidon_permute(std::span<const Fr> state,
                                 const PoseidonParams& params);

/// Single-permutation hash of 1..8 inputs with the width-(n+1) instance.
/// Returns slot 0 of the permuted state.
Fr poseidon_hash(std::span<const Fr> inputs);

inline Fr poseidon_sbox(const Fr& x) {
  const Fr x2 = x.square();
  return x2.square() * x;
}

/// Gauss-Jordan determinant test over Fr.
bool is_invertible(std::span<const Fr> matrix, std::size_t n);

}  // namespace toxizk
