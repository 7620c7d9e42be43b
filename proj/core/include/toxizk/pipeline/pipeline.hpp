// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toxizk/circuit/eval_circuit.hpp"
#include "toxizk/data_processor.hpp"
#include "toxizk/nullifier_registry.hpp"
#include "toxizk/random.hpp"
#include "toxizk/snark/groth16.hpp"
#include "toxizk/snark/serialize.hpp"

namespace toxizk::pipeline {

enum class Phase { kNormalize, kPrecheck, kSalt, kWitness, kProve, kVerify, kNullifier };
const char* to_string(Phase p);

/// Key material for the evaluation circuit, with the verifying key prepared.
class Keys {
 public:
  /// Throws SetupError when `pk` was generated for a different circuit.
  Keys(snark::ProvingKey pk, snark::VerifyingKey vk);

  static Keys generate(RandomSource& rng);

  const snark::ProvingKey& pk() const { return pk_; }
  const snark::VerifyingKey& vk() const { return pvk_.key(); }
  const snark::PreparedVerifyingKey& pvk() const { return pvk_; }
  const circuit::ConstraintSystem& cs() const { return circuit::eval_circuit(); }

 private:
  snark::ProvingKey pk_;
  snark::PreparedVerifyingKey pvk_;
};

using SaltKey = std::array<std::uint8_t, 32>;

struct RunOptions {
  /// Thresholds for every record; per-record task defaults when unset.
  std::optional<ThresholdSet> thresholds;
  /// Derive each salt from this key and (molecule_id, task_id) instead of
  /// fresh randomness, so resubmitting a record reproduces its nullifier.
  std::optional<SaltKey> salt_key;
  /// Fixed salt (single-record runs and tests).
  std::optional<Fr> salt;
};

struct PhaseTimings {
  double normalize = 0;
  double precheck = 0;
  double witness = 0;
  double prove = 0;
  double verify = 0;
  double nullifier = 0;

  double total() const { return normalize + precheck + witness + prove + verify + nullifier; }
};

enum class Outcome {
  kAccepted,  // proof verified, result 1, nullifier fresh
  kFailed,    // proof verified, result 0
  kReplay,    // proof verified, nullifier already spent
  kRejected,  // a phase raised an error; no verified bundle
};
const char* to_string(Outcome o);

struct MoleculeResult {
  std::string molecule_id;
  std::string task_id;
  Outcome outcome = Outcome::kRejected;
  bool proof_verified = false;
  std::optional<std::uint64_t> result;
  std::optional<NullifierStatus> nullifier_status;
  std::optional<snark::ProofBundle> bundle;
  std::optional<Phase> error_phase;
  std::string error;
  std::vector<std::string> warnings;
  PhaseTimings timings;

  /// valid ∧ result = 1 ∧ fresh nullifier.
  bool success() const { return outcome == Outcome::kAccepted; }
  nlohmann::ordered_json to_json(bool include_bundle = false) const;
};

/// normalize → precheck → salt → witness → prove → verify → nullifier.
/// Phase errors are captured in the result, never thrown. `registry` may be
/// null to skip the nullifier phase.
MoleculeResult run_single(const EvaluationRecord& record, const Keys& keys, const RunOptions& options,
                          NullifierRegistry* registry, RandomSource& rng);

struct SubmitResult {
  bool verified = false;
  std::optional<std::uint64_t> result;
  std::optional<NullifierStatus> nullifier_status;

  bool success() const {
    return verified && result == 1 && nullifier_status == NullifierStatus::kFresh;
  }
};

/// Verifier side: checks a received bundle and, when it verifies, spends its
/// nullifier. Throws ParameterError for a bundle with the wrong arity.
SubmitResult submit(const snark::ProofBundle& bundle, const snark::PreparedVerifyingKey& vk,
                    NullifierRegistry* registry);

struct RunReport {
  std::vector<MoleculeResult> molecules;
  std::vector<LineIssue> ingest_rejects;
  unsigned workers = 1;
  double total_seconds = 0;
  std::optional<double> peak_memory_mb;

  std::size_t attempted() const { return molecules.size() + ingest_rejects.size(); }
  std::size_t count(Outcome o) const;
  std::size_t succeeded() const { return count(Outcome::kAccepted); }
  std::size_t failed() const { return count(Outcome::kFailed) + count(Outcome::kReplay); }
  std::size_t rejected() const { return count(Outcome::kRejected) + ingest_rejects.size(); }
  double success_rate() const;
  double throughput() const;
  double per_molecule_seconds() const;

  nlohmann::ordered_json to_json(bool include_bundles = false) const;
};

using RngFactory = std::function<std::unique_ptr<RandomSource>(std::size_t worker)>;
RngFactory system_rng_factory();

/// Parallel batch run; results are ordered as `records`.
RunReport run_batch(const std::vector<EvaluationRecord>& records, const Keys& keys, const RunOptions& options,
                    NullifierRegistry* registry, unsigned workers, const RngFactory& rng = system_rng_factory());

/// Peak resident set size of this process, where the platform reports it.
std::optional<double> peak_memory_mb();

/// Salt ← U(F_r) by rejection sampling.
Fr sample_salt(RandomSource& rng);
/// Deterministic salt for (key, molecule_id, task_id), also uniform.
Fr derive_salt(const SaltKey& key, const std::string& molecule_id, const std::string& task_id);

}  // namespace toxizk::pipeline
