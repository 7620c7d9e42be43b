// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "toxizk/snark/groth16.hpp"

namespace toxizk::snark {

/// Fixed binary proof size: A (64) | B (128) | C (64), big-endian coordinates,
/// identity encoded as all-zero bytes.
inline constexpr std::size_t kProofBytes = 256;

std::vector<std::uint8_t> proof_to_bytes(const Proof& p);
/// DecodeError on wrong length, non-canonical coordinates, points off the
/// curve or outside the prime-order subgroup.
Proof proof_from_bytes(std::span<const std::uint8_t> bytes);

/// {"pi_a": [x, y], "pi_b": [[x0, x1], [y0, y1]], "pi_c": [x, y]} in 0x-hex.
nlohmann::ordered_json proof_to_json(const Proof& p);
Proof proof_from_json(const nlohmann::json& j);

/// Verifying key in the snarkjs layout (decimal strings, projective triples)
/// so third-party tooling can check proofs.
nlohmann::ordered_json vk_to_json(const VerifyingKey& vk);
VerifyingKey vk_from_json(const nlohmann::json& j);

void write_proving_key(std::ostream& out, const ProvingKey& pk);
ProvingKey read_proving_key(std::istream& in);

void save_proving_key(const std::filesystem::path& path, const ProvingKey& pk);
ProvingKey load_proving_key(const std::filesystem::path& path);
void save_verifying_key(const std::filesystem::path& path, const VerifyingKey& vk);
VerifyingKey load_verifying_key(const std::filesystem::path& path);

/// Proof together with the public values it was made for.
struct ProofBundle {
  std::string molecule_id;
  std::string task_id;
  std::vector<Fr> public_values;  // normative order, 9 entries
  Proof proof;

  bool operator==(const ProofBundle&) const = default;

  std::string to_json() const;
  /// DecodeError on malformed JSON, wrong arity, bad field or point encodings.
  static ProofBundle parse(std::string_view text);
  static ProofBundle from_json(const nlohmann::json& j);
};

/// Field element as 0x-prefixed 64-digit hex, or plain decimal.
Fr decode_fr(const nlohmann::json& j);

}  // namespace toxizk::snark
