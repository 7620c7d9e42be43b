// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "toxizk/pipeline/pipeline.hpp"

namespace toxizk::pipeline {

struct SecurityOptions {
  std::size_t completeness = 50;
  std::size_t invalid_smiles = 30;
  std::size_t failing = 30;
  std::size_t forged = 20;
  std::size_t zk_samples = 20;
  std::size_t replay_trials = 20;
  TaskType task = TaskType::kBinary;
  /// Scratch registry files live here.
  std::filesystem::path scratch_dir;
};

struct Tally {
  std::size_t passed = 0;
  std::size_t total = 0;

  bool ok() const { return total > 0 && passed == total; }
};

struct ZeroKnowledgeResult {
  std::size_t samples = 0;
  double mean_bit_entropy = 0;  // mean over commitment bits of the per-bit Shannon entropy
  bool commitments_distinct = false;
  std::vector<std::string> leakage_findings;

  bool passed() const { return leakage_findings.empty(); }
};

struct AttackScenario {
  std::string name;
  Tally tally;
  std::string detail;
};

struct SecurityReport {
  Tally completeness;
  Tally soundness;  // invalid SMILES + threshold violations
  Tally forgery;    // forged witnesses rejected by the prover
  ZeroKnowledgeResult zero_knowledge;
  std::vector<AttackScenario> attacks;

  const AttackScenario* attack(const std::string& name) const;
  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

/// Mean over bit positions of H(p_i), p_i the empirical frequency of bit i
/// among `values`; 1.0 for perfectly balanced bits.
double mean_bit_entropy(const std::vector<Fr>& values);

/// Per-bit frequency of ones among `values`, bits 0..Fr::kBits-1.
std::vector<double> bit_frequencies(const std::vector<Fr>& values);

/// Probability that bit `bit` is set in a uniformly random element of F_r.
/// 1/2 up to negligible error except for the top two bits.
double uniform_bit_frequency(std::size_t bit);

/// Direct-equality and affine-relation scan of `outputs` against each column
/// of `secrets` (same number of samples). Returns one finding per relation.
std::vector<std::string> leakage_scan(const std::vector<std::vector<Fr>>& secrets,
                                      const std::vector<std::string>& secret_names,
                                      const std::vector<Fr>& outputs, const std::string& output_name);

/// Throws ParameterError when the configured corpus is below the minimum
/// sizes (50 passing, 60 failing or invalid, 20 samples).
SecurityReport security_suite(const Keys& keys, const SecurityOptions& options, RandomSource& rng);

}  // namespace toxizk::pipeline
