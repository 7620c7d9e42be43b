// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "toxizk/circuit/r1cs.hpp"
#include "toxizk/data_processor.hpp"

namespace toxizk::circuit {

/// Fixed wire positions. Public values are ordered inputs first:
/// [t, θ_safe, θ_qed, θ_sas, θ_lip, θ_sim, result, commitment, nullifier].
namespace layout {
inline constexpr Wire kTaskType = 1;
inline constexpr Wire kThetaBegin = 2;  // five thresholds
inline constexpr Wire kResult = 7;
inline constexpr Wire kCommitment = 8;
inline constexpr Wire kNullifier = 9;
inline constexpr Wire kMetricsBegin = 10;  // six metrics, then the salt
inline constexpr Wire kSalt = 16;

inline constexpr std::size_t kNumPublicInputs = 6;
inline constexpr std::size_t kNumPublicOutputs = 3;
inline constexpr std::size_t kNumPrivateInputs = 7;
inline constexpr std::size_t kNumPublicValues = kNumPublicInputs + kNumPublicOutputs;
inline constexpr std::size_t kResultSlot = 6;  // index into the public value vector
}  // namespace layout

/// Raw circuit inputs. The task type is a bare field element so callers can
/// present out-of-domain values (e.g. t = 2) and watch the circuit reject them.
struct CircuitInputs {
  MetricVector metrics;
  Fr salt;
  Fr task_type;
  std::array<std::uint64_t, 5> thresholds{};

  static CircuitInputs make(const MetricVector& v, const Fr& salt, const ThresholdSet& theta,
                            TaskType t);

  std::array<Fr, layout::kNumPublicInputs> public_inputs() const;
  std::array<Fr, layout::kNumPrivateInputs> private_inputs() const;
};

/// Complete wire assignment for the evaluation circuit.
struct Witness {
  std::vector<Fr> values;

  std::vector<Fr> public_values() const {
    return {values.begin() + 1, values.begin() + 1 + layout::kNumPublicValues};
  }
  const Fr& result() const { return values.at(layout::kResult); }
  const Fr& commitment() const { return values.at(layout::kCommitment); }
  const Fr& nullifier() const { return values.at(layout::kNullifier); }
};

/// The evaluation circuit. Thresholds and task type are public inputs, so a
/// single system serves every task; it is synthesised once and cached.
const ConstraintSystem& eval_circuit();

/// Fresh synthesis of the circuit (deterministic).
ConstraintSystem synthesize();

/// Checks that `theta` fits the circuit (values < 2^32, canonical directions
/// for `t`) and returns the circuit. Throws SynthesisError otherwise.
ConstraintSystem synthesize(const ThresholdSet& theta, TaskType t);

/// Witness generation. Throws WitnessError if any metric or threshold is
/// ≥ 2^32. Out-of-domain task types yield an assignment that violates the
/// booleanity constraint rather than an exception.
Witness compute_witness(const CircuitInputs& in);
Witness compute_witness(const MetricVector& v, const Fr& salt, const ThresholdSet& theta,
                        TaskType t);

/// Reference evaluation of the threshold rules, outside the circuit.
std::uint64_t eval_native(const MetricVector& v, const ThresholdSet& theta, TaskType t);

/// Poseidon over (v_valid, v_safe, v_qed, v_sas, v_lip, v_sim, salt).
Fr commitment(const MetricVector& v, const Fr& salt);
/// Poseidon over (commitment, t).
Fr nullifier(const Fr& commitment, TaskType t);

}  // namespace toxizk::circuit
