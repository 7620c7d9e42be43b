// SPDX-License-Identifier: Apache-2.0
#include "toxizk/pipeline/security.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "toxizk/errors.hpp"
#include "toxizk/pipeline/corpus.hpp"

namespace toxizk::pipeline {
namespace {

using circuit::layout::kNumPublicValues;
using circuit::layout::kResultSlot;

constexpr std::size_t kCommitmentSlot = kNumPublicValues - 2;
constexpr std::size_t kNullifierSlot = kNumPublicValues - 1;

MetricVector comfortable_pass(TaskType t) {
  MetricVector v;
  v.valid = 1;
  v.safe = t == TaskType::kBinary ? kScale : 800000;
  v.qed = 750000;
  v.sas = 3000000;
  v.lip = 0;
  v.sim = 700000;
  return v;
}

std::uint64_t* metric_slot(MetricVector& v, std::size_t threshold_index) {
  switch (threshold_index) {
    case 0:
      return &v.safe;
    case 1:
      return &v.qed;
    case 2:
      return &v.sas;
    case 3:
      return &v.lip;
    default:
      return &v.sim;
  }
}

constexpr std::array<const char*, 5> kThresholdNames = {"safe", "qed", "sas", "lip", "sim"};

AttackScenario boundary(const Keys& keys, TaskType t, RandomSource& rng) {
  AttackScenario s{"boundary", {}, ""};
  const ThresholdSet theta = ThresholdSet::defaults(t);
  const auto values = theta.values();
  for (std::size_t k = 0; k < 5; ++k) {
    for (int delta : {-1, 0, 1}) {
      MetricVector v = comfortable_pass(t);
      *metric_slot(v, k) = values[k] + static_cast<std::uint64_t>(static_cast<std::int64_t>(delta));
      ++s.tally.total;
      try {
        const auto w = circuit::compute_witness(v, sample_salt(rng), theta, t);
        const std::uint64_t expected = circuit::eval_native(v, theta, t);
        const auto proof = snark::prove(keys.pk(), keys.cs(), w.values, rng);
        const bool ok = keys.pvk().verify(w.public_values(), proof) && w.result() == Fr::from_u64(expected);
        if (ok) {
          ++s.tally.passed;
        } else {
          s.detail += std::string(kThresholdNames[k]) + (delta < 0 ? "-1 " : delta > 0 ? "+1 " : " ");
        }
      } catch (const Error& e) {
        s.detail += std::string(kThresholdNames[k]) + ": " + e.what() + "; ";
      }
    }
  }
  if (s.detail.empty()) s.detail = "circuit result matches the native rule at θ-1, θ, θ+1 for every threshold";
  return s;
}

AttackScenario type_confusion(const Keys& keys, TaskType t, RandomSource& rng) {
  AttackScenario s{"type_confusion", {}, ""};
  const ThresholdSet theta = ThresholdSet::defaults(t);
  for (const Fr bad : {Fr::from_u64(2), Fr::from_u64(3), -Fr::one()}) {
    ++s.tally.total;
    circuit::CircuitInputs in = circuit::CircuitInputs::make(comfortable_pass(t), sample_salt(rng), theta, t);
    in.task_type = bad;
    const auto w = circuit::compute_witness(in);
    bool rejected = !keys.cs().is_satisfied(w.values);
    try {
      (void)snark::prove(keys.pk(), keys.cs(), w.values, rng);
      rejected = false;
    } catch (const ProverError&) {
    }
    if (rejected) ++s.tally.passed;
  }
  s.detail = "task types outside {0,1} violate booleanity and cannot be proved";
  return s;
}

AttackScenario overflow_injection(TaskType t, RandomSource& rng) {
  AttackScenario s{"overflow_injection", {}, ""};
  const ThresholdSet theta = ThresholdSet::defaults(t);
  for (std::size_t m = 0; m < 6; ++m) {
    for (std::uint64_t value : {kMetricBound, kMetricBound + 5, std::uint64_t{1} << 63}) {
      MetricVector v = comfortable_pass(t);
      switch (m) {
        case 0:
          v.valid = value;
          break;
        case 1:
          v.safe = value;
          break;
        case 2:
          v.qed = value;
          break;
        case 3:
          v.sas = value;
          break;
        case 4:
          v.lip = value;
          break;
        default:
          v.sim = value;
          break;
      }
      ++s.tally.total;
      try {
        (void)circuit::compute_witness(v, sample_salt(rng), theta, t);
      } catch (const WitnessError&) {
        ++s.tally.passed;
      }
    }
  }
  s.detail = "metric values >= 2^32 are refused by witness generation";
  return s;
}

}  // namespace

std::vector<double> bit_frequencies(const std::vector<Fr>& values) {
  std::vector<std::size_t> ones(Fr::kBits, 0);
  for (const auto& v : values) {
    const U256 x = v.to_u256();
    for (std::size_t b = 0; b < Fr::kBits; ++b) ones[b] += x.bit(b) ? 1 : 0;
  }
  std::vector<double> out(Fr::kBits, 0.0);
  if (values.empty()) return out;
  for (std::size_t b = 0; b < Fr::kBits; ++b) {
    out[b] = static_cast<double>(ones[b]) / static_cast<double>(values.size());
  }
  return out;
}

double uniform_bit_frequency(std::size_t bit) {
  // #{x < r : x_bit = 1} = floor(r / 2^(bit+1)) * 2^bit + max(0, (r mod 2^(bit+1)) - 2^bit)
  const U256& r = Fr::kModulus;
  long double high = 0, rem = 0, total = 0;
  for (std::size_t j = Fr::kBits; j-- > 0;) {
    if (!r.bit(j)) continue;
    total += std::ldexp(1.0L, static_cast<int>(j));
    if (j > bit) {
      high += std::ldexp(1.0L, static_cast<int>(j - bit - 1));
    } else {
      rem += std::ldexp(1.0L, static_cast<int>(j));
    }
  }
  const long double half = std::ldexp(1.0L, static_cast<int>(bit));
  const long double count = high * half + std::max(0.0L, rem - half);
  return static_cast<double>(count / total);
}

double mean_bit_entropy(const std::vector<Fr>& values) {
  if (values.empty()) return 0.0;
  double sum = 0;
  for (double p : bit_frequencies(values)) {
    if (p > 0 && p < 1) sum += -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  }
  return sum / static_cast<double>(Fr::kBits);
}

std::vector<std::string> leakage_scan(const std::vector<std::vector<Fr>>& secrets,
                                      const std::vector<std::string>& secret_names, const std::vector<Fr>& outputs,
                                      const std::string& output_name) {
  std::vector<std::string> findings;
  for (std::size_t k = 0; k < secrets.size(); ++k) {
    const auto& col = secrets[k];
    if (col.size() != outputs.size()) throw ParameterError("leakage scan: sample count mismatch");
    for (std::size_t i = 0; i < col.size(); ++i) {
      if (col[i] == outputs[i]) {
        findings.push_back(output_name + " equals " + secret_names[k] + " in sample " + std::to_string(i));
        break;
      }
    }
    // Affine fit through two samples with distinct secrets, checked on the rest.
    std::size_t j = 1;
    while (j < col.size() && col[j] == col[0]) ++j;
    if (j >= col.size() || col.size() < 3) continue;
    const Fr a = (outputs[j] - outputs[0]) * (col[j] - col[0]).inverse();
    const Fr b = outputs[0] - a * col[0];
    bool holds = true;
    for (std::size_t i = 0; i < col.size() && holds; ++i) holds = outputs[i] == a * col[i] + b;
    if (holds) findings.push_back(output_name + " is an affine function of " + secret_names[k]);
  }
  return findings;
}

const AttackScenario* SecurityReport::attack(const std::string& name) const {
  for (const auto& a : attacks) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

bool SecurityReport::passed() const {
  bool ok = completeness.ok() && soundness.ok() && forgery.ok() && zero_knowledge.passed();
  for (const auto& a : attacks) ok = ok && a.tally.ok();
  return ok;
}

nlohmann::ordered_json SecurityReport::to_json() const {
  auto tally = [](const Tally& t) {
    return nlohmann::ordered_json{{"passed", t.passed},
                                  {"total", t.total},
                                  {"rate_percent", t.total ? 100.0 * static_cast<double>(t.passed) /
                                                                 static_cast<double>(t.total)
                                                           : 0.0},
                                  {"ok", t.ok()}};
  };
  nlohmann::ordered_json j;
  j["completeness"] = tally(completeness);
  j["soundness"] = tally(soundness);
  j["forged_witnesses"] = tally(forgery);
  j["zero_knowledge"] = {{"samples", zero_knowledge.samples},
                         {"mean_bit_entropy", zero_knowledge.mean_bit_entropy},
                         {"commitments_distinct", zero_knowledge.commitments_distinct},
                         {"leakage_findings", zero_knowledge.leakage_findings},
                         {"ok", zero_knowledge.passed()}};
  nlohmann::ordered_json at = nlohmann::ordered_json::object();
  for (const auto& a : attacks) {
    at[a.name] = tally(a.tally);
    at[a.name]["detail"] = a.detail;
  }
  j["attack_resistance"] = at;
  j["passed"] = passed();
  return j;
}

SecurityReport security_suite(const Keys& keys, const SecurityOptions& o, RandomSource& rng) {
  if (o.completeness < 50 || o.invalid_smiles + o.failing < 60 || o.zk_samples < 20 || o.forged < 1 ||
      o.replay_trials < 1) {
    throw ParameterError("security suite needs >= 50 passing, >= 60 failing/invalid records and >= 20 samples");
  }
  const auto scratch = o.scratch_dir.empty() ? std::filesystem::temp_directory_path() : o.scratch_dir;
  std::filesystem::create_directories(scratch);
  const auto reg_path = scratch / "security_registry.log";
  std::filesystem::remove(reg_path);

  SecurityReport report;
  CorpusGenerator gen(rng);
  {
    NullifierRegistry registry(reg_path);
    const RunOptions opts;

    for (const auto& r : gen.passing(o.completeness, o.task, "complete")) {
      ++report.completeness.total;
      if (run_single(r, keys, opts, &registry, rng).success()) ++report.completeness.passed;
    }

    auto rejected = [&](const EvaluationRecord& r) {
      const MoleculeResult m = run_single(r, keys, opts, &registry, rng);
      return m.outcome != Outcome::kAccepted && m.result != std::optional<std::uint64_t>(1);
    };
    for (const auto& r : gen.invalid_smiles(o.invalid_smiles, o.task, "invalid")) {
      ++report.soundness.total;
      if (rejected(r)) ++report.soundness.passed;
    }
    for (const auto& r : gen.failing(o.failing, o.task, "violating")) {
      ++report.soundness.total;
      if (rejected(r)) ++report.soundness.passed;
    }

    for (const auto& r : gen.failing(o.forged, o.task, "forged")) {
      ++report.forgery.total;
      const ThresholdSet theta = ThresholdSet::defaults(r.task_type);
      auto w = circuit::compute_witness(normalize(r), sample_salt(rng), theta, r.task_type);
      w.values[circuit::layout::kResult] = Fr::one();
      try {
        (void)snark::prove(keys.pk(), keys.cs(), w.values, rng);
      } catch (const ProverError&) {
        ++report.forgery.passed;
      }
    }

    AttackScenario replay{"replay", {}, "resubmitted bundles hit a spent nullifier"};
    for (const auto& r : gen.passing(o.replay_trials, o.task, "replay")) {
      ++replay.tally.total;
      const MoleculeResult first = run_single(r, keys, opts, &registry, rng);
      if (!first.success() || !first.bundle) continue;
      const SubmitResult again = submit(*first.bundle, keys.pvk(), &registry);
      if (again.verified && again.nullifier_status == NullifierStatus::kReplay && !again.success()) {
        ++replay.tally.passed;
      }
    }

    // Zero knowledge: fixed metrics, fresh salts.
    const EvaluationRecord fixed = gen.passing(o.task, "zk-fixed");
    std::vector<Fr> commitments;
    for (std::size_t i = 0; i < o.zk_samples; ++i) {
      const MoleculeResult m = run_single(fixed, keys, opts, nullptr, rng);
      if (m.bundle) commitments.push_back(m.bundle->public_values[kCommitmentSlot]);
    }
    auto& zk = report.zero_knowledge;
    zk.samples = commitments.size();
    zk.mean_bit_entropy = mean_bit_entropy(commitments);
    std::set<U256> distinct;
    for (const auto& c : commitments) distinct.insert(c.to_u256());
    zk.commitments_distinct = distinct.size() == commitments.size() && !commitments.empty();
    if (commitments.size() != o.zk_samples) zk.leakage_findings.push_back("some zero-knowledge samples failed to prove");
    if (!zk.commitments_distinct) zk.leakage_findings.push_back("repeated commitment across fresh salts");

    // Leakage: varied metrics and salts, public outputs against every secret.
    std::vector<std::vector<Fr>> secrets(7);
    std::vector<Fr> out_commit, out_null;
    for (std::size_t i = 0; i < o.zk_samples; ++i) {
      const EvaluationRecord r = gen.passing(o.task, "zk-" + std::to_string(i));
      const Fr salt = sample_salt(rng);
      RunOptions with_salt;
      with_salt.salt = salt;
      const MoleculeResult m = run_single(r, keys, with_salt, nullptr, rng);
      if (!m.bundle) continue;
      const auto arr = normalize(r).as_array();
      for (std::size_t k = 0; k < 6; ++k) secrets[k].push_back(Fr::from_u64(arr[k]));
      secrets[6].push_back(salt);
      out_commit.push_back(m.bundle->public_values[kCommitmentSlot]);
      out_null.push_back(m.bundle->public_values[kNullifierSlot]);
    }
    const std::vector<std::string> names = {"v_valid", "v_safe", "v_qed", "v_sas", "v_lip", "v_sim", "salt"};
    for (auto& f : leakage_scan(secrets, names, out_commit, "commitment")) zk.leakage_findings.push_back(f);
    for (auto& f : leakage_scan(secrets, names, out_null, "nullifier")) zk.leakage_findings.push_back(f);

    report.attacks.push_back(boundary(keys, o.task, rng));
    report.attacks.push_back(type_confusion(keys, o.task, rng));
    report.attacks.push_back(overflow_injection(o.task, rng));
    report.attacks.push_back(std::move(replay));
  }
  std::filesystem::remove(reg_path);
  return report;
}

}  // namespace toxizk::pipeline
