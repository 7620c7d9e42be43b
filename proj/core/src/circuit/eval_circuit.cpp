// SPDX-License-Identifier: Apache-2.0
#include "toxizk/circuit/eval_circuit.hpp"

#include "toxizk/circuit/gadgets.hpp"
#include "toxizk/errors.hpp"
#include "toxizk/poseidon.hpp"

namespace toxizk::circuit {
namespace {

constexpr std::array<Component, 5> kThresholdTags = {
    Component::kSafety, Component::kQed, Component::kSas, Component::kLipinski,
    Component::kSimilarity};
constexpr std::array<const char*, 5> kThresholdNames = {"safe", "qed", "sas", "lip", "sim"};
constexpr std::array<Component, 6> kMetricTags = {
    Component::kValidity, Component::kSafety,   Component::kQed,
    Component::kSas,      Component::kLipinski, Component::kSimilarity};
constexpr std::array<const char*, 6> kMetricNames = {"valid", "safe", "qed",
                                                     "sas",   "lip",  "sim"};

Fr fr(std::uint64_t v) { return Fr::from_u64(v); }

/// Emits the whole circuit into `b`. `in` is null during plain synthesis.
void build(Builder& b, const CircuitInputs* in) {
  const auto pub_in = in ? in->public_inputs() : std::array<Fr, layout::kNumPublicInputs>{};
  const auto priv_in = in ? in->private_inputs() : std::array<Fr, layout::kNumPrivateInputs>{};

  const Wire t = b.alloc_public_input(pub_in[0]);
  std::array<Wire, 5> theta{};
  for (std::size_t i = 0; i < 5; ++i) theta[i] = b.alloc_public_input(pub_in[1 + i]);
  const Wire result = b.alloc_public_output();
  const Wire commit_out = b.alloc_public_output();
  const Wire nullifier_out = b.alloc_public_output();
  std::array<Wire, 6> v{};
  for (std::size_t i = 0; i < 6; ++i) v[i] = b.alloc_private_input(priv_in[i]);
  const Wire salt = b.alloc_private_input(priv_in[6]);

  // Booleanity of the task type and of the validity flag.
  enforce_boolean(b, LC(t), Component::kGlue, "bool_t");
  enforce_boolean(b, LC(v[0]), Component::kValidity, "bool_valid");

  // Range checks: metrics and thresholds.
  for (std::size_t i = 0; i < 6; ++i) {
    range_check(b, LC(v[i]), kMetricBits, kMetricTags[i],
                std::string("range_") + kMetricNames[i]);
  }
  for (std::size_t i = 0; i < 5; ++i) {
    range_check(b, LC(theta[i]), kMetricBits, kThresholdTags[i],
                std::string("range_theta_") + kThresholdNames[i]);
  }

  // Safety: EQ 10^6 for binary tasks, GEQ θ_safe for regression, selected by t.
  const Wire safe_eq = is_equal_to(b, LC(v[1]), fr(kScale), Component::kSafety, "safe_eq");
  const Wire safe_geq =
      greater_or_equal(b, LC(v[1]), LC(theta[0]), kMetricBits, Component::kSafety, "safe_geq");
  const Wire check_safe =
      select(b, LC(t), LC(safe_eq), LC(safe_geq), Component::kSafety, "safe_mux");

  const Wire check_qed =
      greater_or_equal(b, LC(v[2]), LC(theta[1]), kMetricBits, Component::kQed, "qed_geq");
  const Wire check_sas =
      greater_or_equal(b, LC(theta[2]), LC(v[3]), kMetricBits, Component::kSas, "sas_leq");
  const Wire check_lip = greater_or_equal(b, LC(theta[3]), LC(v[4]), kMetricBits,
                                          Component::kLipinski, "lip_leq");
  const Wire check_sim = greater_or_equal(b, LC(v[5]), LC(theta[4]), kMetricBits,
                                          Component::kSimilarity, "sim_geq");

  const std::array<Wire, 6> checks = {v[0], check_safe, check_qed, check_sas, check_lip,
                                      check_sim};
  conjunction(b, checks, result, Component::kGlue, "and");

  std::array<TrackedValue, 7> preimage;
  for (std::size_t i = 0; i < 6; ++i) preimage[i] = {LC(v[i]), b.value(v[i])};
  preimage[6] = {LC(salt), b.value(salt)};
  const TrackedValue c = poseidon_hash_gadget(b, preimage, "poseidon_commitment");
  b.set_value(commit_out, c.value);
  b.enforce(c.lc, LC(kOne), LC(commit_out), {commit_out});

  const std::array<TrackedValue, 2> nf_in = {TrackedValue{LC(commit_out), c.value},
                                             TrackedValue{LC(t), b.value(t)}};
  const TrackedValue nf = poseidon_hash_gadget(b, nf_in, "poseidon_nullifier");
  b.set_value(nullifier_out, nf.value);
  b.enforce(nf.lc, LC(kOne), LC(nullifier_out), {nullifier_out});
}

}  // namespace

CircuitInputs CircuitInputs::make(const MetricVector& v, const Fr& salt,
                                  const ThresholdSet& theta, TaskType t) {
  CircuitInputs in;
  in.metrics = v;
  in.salt = salt;
  in.task_type = fr(encode(t));
  in.thresholds = theta.values();
  return in;
}

std::array<Fr, layout::kNumPublicInputs> CircuitInputs::public_inputs() const {
  return {task_type,         fr(thresholds[0]), fr(thresholds[1]),
          fr(thresholds[2]), fr(thresholds[3]), fr(thresholds[4])};
}

std::array<Fr, layout::kNumPrivateInputs> CircuitInputs::private_inputs() const {
  // Metrics ≥ p cannot occur: they are 64-bit.
  return {fr(metrics.valid), fr(metrics.safe), fr(metrics.qed), fr(metrics.sas),
          fr(metrics.lip),   fr(metrics.sim),  salt};
}

ConstraintSystem synthesize() {
  Builder b(Builder::Mode::kSynthesize);
  build(b, nullptr);
  return b.finish();
}

ConstraintSystem synthesize(const ThresholdSet& theta, TaskType t) {
  for (auto x : theta.values()) {
    if (x >= kMetricBound) throw SynthesisError("threshold value does not fit in 32 bits");
  }
  if (theta.directions != ThresholdSet::canonical_directions(t)) {
    throw SynthesisError("threshold directions differ from the circuit's comparators");
  }
  return synthesize();
}

const ConstraintSystem& eval_circuit() {
  static const ConstraintSystem cs = synthesize();
  return cs;
}

Witness compute_witness(const CircuitInputs& in) {
  Builder b(Builder::Mode::kWitnessOnly);
  build(b, &in);
  return Witness{b.take_values()};
}

Witness compute_witness(const MetricVector& v, const Fr& salt, const ThresholdSet& theta,
                        TaskType t) {
  return compute_witness(CircuitInputs::make(v, salt, theta, t));
}

std::uint64_t eval_native(const MetricVector& v, const ThresholdSet& theta, TaskType t) {
  const bool safe_ok = t == TaskType::kBinary ? v.safe == kScale : v.safe >= theta.safe;
  const bool ok = v.valid == 1 && safe_ok && v.qed >= theta.qed && v.sas <= theta.sas &&
                  v.lip <= theta.lip && v.sim >= theta.sim;
  return ok ? 1 : 0;
}

Fr commitment(const MetricVector& v, const Fr& salt) {
  const std::array<Fr, 7> in = {fr(v.valid), fr(v.safe), fr(v.qed), fr(v.sas),
                                fr(v.lip),   fr(v.sim),  salt};
  return poseidon_hash(in);
}

Fr nullifier(const Fr& c, TaskType t) {
  const std::array<Fr, 2> in = {c, fr(encode(t))};
  return poseidon_hash(in);
}

}  // namespace toxizk::circuit
