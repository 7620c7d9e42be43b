// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "json.hpp"
#include "toxizk/circuit/eval_circuit.hpp"
#include "toxizk/errors.hpp"
#include "toxizk/poseidon.hpp"

using namespace toxizk;

namespace {

nlohmann::json vectors() {
  std::ifstream in(std::string(TOXIZK_FIXTURE_DIR) + "/poseidon_vectors.json");
  return nlohmann::json::parse(in);
}

std::vector<Fr> hex_list(const nlohmann::json& j) {
  std::vector<Fr> out;
  for (const auto& s : j) out.push_back(Fr::from_hex(s.get<std::string>()));
  return out;
}

// x -> x^(1/5): 5 * d = 1 mod (r - 1).
const U256 kInvSboxExp = *U256::from_hex("26b6a528b427b35493736af8679aad17535cb9d394945a0dcfe7f7a98ccccccd");

std::vector<Fr> invert_matrix(const std::vector<Fr>& m, std::size_t n) {
  std::vector<Fr> a = m, inv(n * n, Fr::zero());
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = Fr::one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (a[piv * n + col].is_zero()) ++piv;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(a[piv * n + k], a[col * n + k]);
      std::swap(inv[piv * n + k], inv[col * n + k]);
    }
    const Fr s = a[col * n + col].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a[col * n + k] *= s;
      inv[col * n + k] *= s;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const Fr f = a[row * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row * n + k] -= f * a[col * n + k];
        inv[row * n + k] -= f * inv[col * n + k];
      }
    }
  }
  return inv;
}

// Runs the rounds backwards: inverse mix, inverse S-box, subtract constants.
std::vector<Fr> inverse_permute(std::vector<Fr> state, const PoseidonParams& p) {
  const std::size_t t = p.width;
  const auto mds_inv = invert_matrix(p.mds, t);
  for (std::size_t r = p.total_rounds(); r-- > 0;) {
    std::vector<Fr> next(t, Fr::zero());
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) next[i] += mds_inv[i * t + j] * state[j];
    }
    state = next;
    for (std::size_t i = 0; i < t; ++i) {
      if (p.is_full_round(r) || i == 0) state[i] = state[i].pow(kInvSboxExp);
      state[i] -= p.constant(r, i);
    }
  }
  return state;
}

}  // namespace

TEST(Poseidon, FrozenPermutationVectors) {
  const auto v = vectors();
  EXPECT_EQ(poseidon_permute(std::vector<Fr>(3, Fr::zero()), poseidon_params(3)), hex_list(v["permute_zero_w3"]));
  const auto w8 = poseidon_permute(std::vector<Fr>(8, Fr::zero()), poseidon_params(8));
  EXPECT_EQ(w8, hex_list(v["permute_zero_w8"]));
  const std::vector<Fr> seq = {Fr::zero(), Fr::from_u64(1), Fr::from_u64(2)};
  EXPECT_EQ(poseidon_permute(seq, poseidon_params(3)), hex_list(v["permute_seq_w3"]));
}

TEST(Poseidon, FrozenHashVectorsForEveryArity) {
  const auto expected = hex_list(vectors()["hash_arity"]);
  ASSERT_EQ(expected.size(), 8u);
  for (std::size_t n = 1; n <= 8; ++n) {
    std::vector<Fr> in;
    for (std::size_t i = 1; i <= n; ++i) in.push_back(Fr::from_u64(i));
    EXPECT_EQ(poseidon_hash(in), expected[n - 1]) << "arity " << n;
  }
}

TEST(Poseidon, CommitmentAndNullifierVectors) {
  const auto v = vectors();
  const Fr salt = Fr::from_hex("0x1234567890abcdef1234567890abcdef1234567890abcdef1234567890abcdef");
  const MetricVector m{1, kScale, 812345, 2500000, 0, 650000};
  const Fr c = circuit::commitment(m, salt);
  EXPECT_EQ(c, Fr::from_hex(v["commit"].get<std::string>()));
  EXPECT_EQ(circuit::nullifier(c, TaskType::kBinary), Fr::from_hex(v["nullifier_t0"].get<std::string>()));
  EXPECT_EQ(circuit::nullifier(c, TaskType::kRegression), Fr::from_hex(v["nullifier_t1"].get<std::string>()));
}

TEST(Poseidon, InversePermutationRecoversInput) {
  SeededRandom rng(17);
  for (std::size_t width = kPoseidonMinWidth; width <= kPoseidonMaxWidth; ++width) {
    const auto& p = poseidon_params(width);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<Fr> in(width);
      for (auto& x : in) x = Fr::random(rng);
      const auto out = poseidon_permute(in, p);
      EXPECT_EQ(inverse_permute(out, p), in) << "width " << width;
    }
  }
}

TEST(Poseidon, ParametersAreWellFormed) {
  for (std::size_t width = kPoseidonMinWidth; width <= kPoseidonMaxWidth; ++width) {
    const auto& p = poseidon_params(width);
    EXPECT_EQ(p.width, width);
    EXPECT_EQ(p.full_rounds, 8u);
    EXPECT_EQ(p.round_constants.size(), width * p.total_rounds());
    EXPECT_TRUE(is_invertible(p.mds, width));
    EXPECT_NO_THROW(p.validate());
  }
  EXPECT_THROW(poseidon_params(1), ParameterError);
  EXPECT_THROW(poseidon_params(10), ParameterError);
}

TEST(Poseidon, RejectsBadShapes) {
  EXPECT_THROW(poseidon_hash({}), ParameterError);
  std::vector<Fr> nine(9, Fr::one());
  EXPECT_THROW(poseidon_hash(nine), ParameterError);
  std::vector<Fr> two(2, Fr::one());
  EXPECT_THROW(poseidon_permute(two, poseidon_params(3)), ParameterError);

  PoseidonParams broken = poseidon_params(3);
  broken.round_constants.pop_back();
  EXPECT_THROW(broken.validate(), ParameterError);
  PoseidonParams singular = poseidon_params(3);
  for (std::size_t j = 0; j < 3; ++j) singular.mds[3 + j] = singular.mds[j];
  EXPECT_THROW(singular.validate(), ParameterError);
}

TEST(Poseidon, PropertyNoCollisionsAndInputSensitivity) {
  SeededRandom rng(99);
  std::set<U256> seen;
  for (int i = 0; i < 500; ++i) {
    std::vector<Fr> in = {Fr::random(rng), Fr::random(rng)};
    const Fr h = poseidon_hash(in);
    EXPECT_TRUE(seen.insert(h.to_u256()).second);
    in[1] += Fr::one();
    EXPECT_NE(poseidon_hash(in), h);
  }
  // Arity is part of the instance: appending a zero changes the digest.
  const std::vector<Fr> a = {Fr::from_u64(7)};
  const std::vector<Fr> b = {Fr::from_u64(7), Fr::zero()};
  EXPECT_NE(poseidon_hash(a), poseidon_hash(b));
}
