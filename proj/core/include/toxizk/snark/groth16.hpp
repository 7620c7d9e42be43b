// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "toxizk/circuit/r1cs.hpp"
#include "toxizk/random.hpp"
#include "toxizk/snark/curve.hpp"
#include "toxizk/snark/pairing.hpp"

namespace toxizk::snark {

using Digest = std::array<std::uint8_t, 32>;

/// BLAKE2b-256 of the canonical encoding of a constraint system.
Digest circuit_digest(const circuit::ConstraintSystem& cs);

struct Proof {
  G1Affine a;
  G2Affine b;
  G1Affine c;

  bool operator==(const Proof&) const = default;
};

struct VerifyingKey {
  G1Affine alpha1;
  G2Affine beta2;
  G2Affine gamma2;
  G2Affine delta2;
  /// IC[0] for the constant wire, then one per public value.
  std::vector<G1Affine> ic;

  std::size_t num_public() const { return ic.empty() ? 0 : ic.size() - 1; }
  bool operator==(const VerifyingKey&) const = default;
};

struct ProvingKey {
  Digest digest{};
  std::size_t num_wires = 0;
  std::size_t num_public = 0;
  std::size_t domain_size = 0;
  G1Affine alpha1;
  G1Affine beta1;
  G1Affine delta1;
  G2Affine beta2;
  G2Affine delta2;
  std::vector<G1Affine> a_query;
  std::vector<G1Affine> b_g1_query;
  std::vector<G2Affine> b_g2_query;
  /// Private wires only, indexed from num_public + 1.
  std::vector<G1Affine> l_query;
  std::vector<G1Affine> h_query;

  bool operator==(const ProvingKey&) const = default;
};

struct Keypair {
  ProvingKey pk;
  VerifyingKey vk;
};

/// Circuit-specific setup. The trapdoor values live only on this stack frame.
Keypair setup(const circuit::ConstraintSystem& cs, RandomSource& rng);

/// Throws ProverError when `assignment` does not satisfy `cs` or `cs` is not
/// the system `pk` was generated for.
Proof prove(const ProvingKey& pk, const circuit::ConstraintSystem& cs,
            std::span<const Fr> assignment, RandomSource& rng);

/// Verifying key with the G2 line coefficients precomputed.
class PreparedVerifyingKey {
 public:
  explicit PreparedVerifyingKey(VerifyingKey vk);

  const VerifyingKey& key() const { return vk_; }
  /// Throws ParameterError when the number of public values is wrong.
  bool verify(std::span<const Fr> public_values, const Proof& proof) const;

 private:
  VerifyingKey vk_;
  G2Prepared beta_;
  G2Prepared gamma_;
  G2Prepared delta_;
};

bool verify(const VerifyingKey& vk, std::span<const Fr> public_values, const Proof& proof);

}  // namespace toxizk::snark
