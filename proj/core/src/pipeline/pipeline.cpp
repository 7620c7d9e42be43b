// SPDX-License-Identifier: Apache-2.0
#include "toxizk/pipeline/pipeline.hpp"

#include <sodium.h>
#include <sys/resource.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "toxizk/errors.hpp"

namespace toxizk::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// BLAKE2b-keyed counter-mode stream, used only to feed rejection sampling.
class KeyedStream final : public RandomSource {
 public:
  KeyedStream(const SaltKey& key, const std::string& molecule_id, const std::string& task_id)
      : key_(key) {
    label_ = molecule_id;
    label_.push_back('\0');
    label_ += task_id;
  }

  void fill(std::span<std::uint8_t> out) override {
    std::size_t pos = 0;
    while (pos < out.size()) {
      std::array<std::uint8_t, 32> block{};
      crypto_generichash_state st;
      crypto_generichash_init(&st, key_.data(), key_.size(), block.size());
      crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(label_.data()), label_.size());
      std::uint8_t ctr[8];
      for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
      crypto_generichash_update(&st, ctr, sizeof ctr);
      crypto_generichash_final(&st, block.data(), block.size());
      ++counter_;
      const std::size_t n = std::min(block.size(), out.size() - pos);
      std::copy_n(block.begin(), n, out.begin() + static_cast<std::ptrdiff_t>(pos));
      pos += n;
    }
  }

 private:
  SaltKey key_;
  std::string label_;
  std::uint64_t counter_ = 0;
};

void check_thresholds(const ThresholdSet& theta, TaskType t) {
  for (auto x : theta.values()) {
    if (x >= kMetricBound) throw DataError("threshold value does not fit in 32 bits");
  }
  if (theta.directions != ThresholdSet::canonical_directions(t)) {
    throw DataError("threshold directions differ from the circuit's comparators");
  }
}

std::uint64_t result_of(const Fr& v) {
  if (v == Fr::zero()) return 0;
  if (v == Fr::one()) return 1;
  return 2;
}

}  // namespace

const char* to_string(Phase p) {
  switch (p) {
    case Phase::kNormalize:
      return "normalize";
    case Phase::kPrecheck:
      return "precheck";
    case Phase::kSalt:
      return "salt";
    case Phase::kWitness:
      return "witness";
    case Phase::kProve:
      return "prove";
    case Phase::kVerify:
      return "verify";
    case Phase::kNullifier:
      return "nullifier";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kAccepted:
      return "accepted";
    case Outcome::kFailed:
      return "failed";
    case Outcome::kReplay:
      return "replay";
    case Outcome::kRejected:
      return "rejected";
  }
  return "?";
}

Keys::Keys(snark::ProvingKey pk, snark::VerifyingKey vk) : pk_(std::move(pk)), pvk_(std::move(vk)) {
  if (pk_.digest != snark::circuit_digest(circuit::eval_circuit())) {
    throw SetupError("proving key was generated for a different circuit");
  }
  if (pvk_.key().num_public() != circuit::layout::kNumPublicValues) {
    throw SetupError("verifying key has the wrong number of public inputs");
  }
  if (pvk_.key().alpha1 != pk_.alpha1 || pvk_.key().beta2 != pk_.beta2 || pvk_.key().delta2 != pk_.delta2) {
    throw SetupError("proving and verifying keys come from different setups");
  }
}

Keys Keys::generate(RandomSource& rng) {
  auto kp = snark::setup(circuit::eval_circuit(), rng);
  return Keys(std::move(kp.pk), std::move(kp.vk));
}

Fr sample_salt(RandomSource& rng) { return Fr::random(rng); }

Fr derive_salt(const SaltKey& key, const std::string& molecule_id, const std::string& task_id) {
  if (sodium_init() < 0) throw SetupError("libsodium initialisation failed");
  KeyedStream stream(key, molecule_id, task_id);
  return Fr::random(stream);
}

MoleculeResult run_single(const EvaluationRecord& record, const Keys& keys, const RunOptions& options,
                          NullifierRegistry* registry, RandomSource& rng) {
  MoleculeResult out;
  out.molecule_id = record.molecule_id;
  out.task_id = record.task_id;
  Phase phase = Phase::kNormalize;
  try {
    auto t0 = Clock::now();
    const MetricVector v = normalize(record);
    out.timings.normalize = seconds_since(t0);

    phase = Phase::kPrecheck;
    t0 = Clock::now();
    const ThresholdSet theta = options.thresholds.value_or(ThresholdSet::defaults(record.task_type));
    check_thresholds(theta, record.task_type);
    const PrecheckReport pre = precheck(v, record.task_type);
    for (const auto& c : pre.checks) {
      if (c.status == CheckStatus::kFail) throw DataError("precheck '" + c.name + "' failed: " + c.detail);
      if (c.status == CheckStatus::kWarn) out.warnings.push_back(c.name + ": " + c.detail);
    }
    out.timings.precheck = seconds_since(t0);

    phase = Phase::kSalt;
    Fr salt;
    if (options.salt) {
      salt = *options.salt;
    } else if (options.salt_key) {
      salt = derive_salt(*options.salt_key, record.molecule_id, record.task_id);
    } else {
      salt = sample_salt(rng);
    }

    phase = Phase::kWitness;
    t0 = Clock::now();
    const circuit::Witness w = circuit::compute_witness(v, salt, theta, record.task_type);
    out.timings.witness = seconds_since(t0);

    phase = Phase::kProve;
    t0 = Clock::now();
    snark::ProofBundle bundle{record.molecule_id, record.task_id, w.public_values(),
                              snark::prove(keys.pk(), keys.cs(), w.values, rng)};
    out.timings.prove = seconds_since(t0);

    phase = Phase::kVerify;
    t0 = Clock::now();
    out.proof_verified = keys.pvk().verify(bundle.public_values, bundle.proof);
    out.timings.verify = seconds_since(t0);
    out.result = result_of(bundle.public_values[circuit::layout::kResultSlot]);
    out.bundle = std::move(bundle);
    if (!out.proof_verified) throw ProverError("freshly generated proof did not verify");

    phase = Phase::kNullifier;
    if (registry != nullptr) {
      t0 = Clock::now();
      out.nullifier_status =
          registry->check_and_insert(out.bundle->public_values[circuit::layout::kNumPublicValues - 1]);
      out.timings.nullifier = seconds_since(t0);
    }
    if (out.nullifier_status == NullifierStatus::kReplay) {
      out.outcome = Outcome::kReplay;
    } else {
      out.outcome = out.result == 1 ? Outcome::kAccepted : Outcome::kFailed;
    }
  } catch (const Error& e) {
    out.outcome = Outcome::kRejected;
    out.error_phase = phase;
    out.error = e.what();
  }
  return out;
}

SubmitResult submit(const snark::ProofBundle& bundle, const snark::PreparedVerifyingKey& vk,
                    NullifierRegistry* registry) {
  SubmitResult r;
  r.verified = vk.verify(bundle.public_values, bundle.proof);
  if (!r.verified) return r;
  r.result = result_of(bundle.public_values[circuit::layout::kResultSlot]);
  if (registry != nullptr) {
    r.nullifier_status = registry->check_and_insert(bundle.public_values[circuit::layout::kNumPublicValues - 1]);
  }
  return r;
}

nlohmann::ordered_json MoleculeResult::to_json(bool include_bundle) const {
  nlohmann::ordered_json j;
  j["molecule_id"] = molecule_id;
  j["task_id"] = task_id;
  j["outcome"] = to_string(outcome);
  j["success"] = success();
  j["proof_verified"] = proof_verified;
  j["verification_result"] = result ? nlohmann::ordered_json(*result) : nlohmann::ordered_json(nullptr);
  j["nullifier_status"] =
      nullifier_status ? nlohmann::ordered_json(to_string(*nullifier_status)) : nlohmann::ordered_json(nullptr);
  if (error_phase) {
    j["error_phase"] = to_string(*error_phase);
    j["error"] = error;
  }
  if (!warnings.empty()) j["warnings"] = warnings;
  j["timings_s"] = {{"normalize", timings.normalize}, {"precheck", timings.precheck},
                    {"witness", timings.witness},     {"prove", timings.prove},
                    {"verify", timings.verify},       {"nullifier", timings.nullifier},
                    {"total", timings.total()}};
  if (include_bundle && bundle) j["bundle"] = nlohmann::ordered_json::parse(bundle->to_json());
  return j;
}

std::size_t RunReport::count(Outcome o) const {
  std::size_t n = 0;
  for (const auto& m : molecules) n += m.outcome == o ? 1 : 0;
  return n;
}

double RunReport::success_rate() const {
  const std::size_t a = attempted();
  return a == 0 ? 0.0 : static_cast<double>(succeeded()) / static_cast<double>(a);
}

double RunReport::throughput() const {
  return total_seconds > 0 ? static_cast<double>(molecules.size()) / total_seconds : 0.0;
}

double RunReport::per_molecule_seconds() const {
  return molecules.empty() ? 0.0 : total_seconds / static_cast<double>(molecules.size());
}

nlohmann::ordered_json RunReport::to_json(bool include_bundles) const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json agg;
  agg["attempted"] = attempted();
  agg["succeeded"] = succeeded();
  agg["failed"] = failed();
  agg["replayed"] = count(Outcome::kReplay);
  agg["rejected"] = rejected();
  agg["success_rate"] = success_rate();
  agg["total_time_s"] = total_seconds;
  agg["time_per_molecule_s"] = per_molecule_seconds();
  agg["throughput_mol_per_s"] = throughput();
  agg["workers"] = workers;
  agg["peak_memory_mb"] = peak_memory_mb ? nlohmann::ordered_json(*peak_memory_mb) : nlohmann::ordered_json(nullptr);
  PhaseTimings sum;
  for (const auto& m : molecules) {
    sum.normalize += m.timings.normalize;
    sum.precheck += m.timings.precheck;
    sum.witness += m.timings.witness;
    sum.prove += m.timings.prove;
    sum.verify += m.timings.verify;
    sum.nullifier += m.timings.nullifier;
  }
  agg["phase_time_sum_s"] = {{"normalize", sum.normalize}, {"precheck", sum.precheck}, {"witness", sum.witness},
                             {"prove", sum.prove},         {"verify", sum.verify},     {"nullifier", sum.nullifier}};
  j["summary"] = agg;
  nlohmann::ordered_json mols = nlohmann::ordered_json::array();
  for (const auto& m : molecules) mols.push_back(m.to_json(include_bundles));
  j["molecules"] = mols;
  nlohmann::ordered_json rej = nlohmann::ordered_json::array();
  for (const auto& r : ingest_rejects) rej.push_back({{"line", r.line}, {"message", r.message}});
  j["ingest_rejects"] = rej;
  return j;
}

RngFactory system_rng_factory() {
  return [](std::size_t) { return std::make_unique<SystemRandom>(); };
}

std::optional<double> peak_memory_mb() {
  rusage ru{};
  if (::getrusage(RUSAGE_SELF, &ru) != 0) return std::nullopt;
  return static_cast<double>(ru.ru_maxrss) / 1024.0;  // Linux reports KiB
}

RunReport run_batch(const std::vector<EvaluationRecord>& records, const Keys& keys, const RunOptions& options,
                    NullifierRegistry* registry, unsigned workers, const RngFactory& rng) {
  if (records.empty()) throw ParameterError("batch needs at least one record");
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(records.size())));
  RunReport report;
  report.workers = workers;
  report.molecules.resize(records.size());
  std::atomic<std::size_t> next{0};
  const auto t0 = Clock::now();
  auto work = [&](std::size_t worker) {
    const auto source = rng(worker);
    for (std::size_t i = next++; i < records.size(); i = next++) {
      report.molecules[i] = run_single(records[i], keys, options, registry, *source);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  report.total_seconds = seconds_since(t0);
  report.peak_memory_mb = peak_memory_mb();
  return report;
}

}  // namespace toxizk::pipeline
