// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "json.hpp"
#include "toxizk/circuit/analyze.hpp"
#include "toxizk/circuit/eval_circuit.hpp"
#include "toxizk/errors.hpp"

using namespace toxizk;
using namespace toxizk::circuit;

namespace {

// Straight-line restatement of the threshold table, kept apart from eval_native.
std::uint64_t brute_force(const MetricVector& v, std::uint64_t th_safe, std::uint64_t th_qed, std::uint64_t th_sas,
                          std::uint64_t th_lip, std::uint64_t th_sim, bool regression) {
  if (v.valid != 1) return 0;
  if (!regression && v.safe != 1000000) return 0;
  if (regression && !(v.safe >= th_safe)) return 0;
  if (!(v.qed >= th_qed)) return 0;
  if (!(v.sas <= th_sas)) return 0;
  if (!(v.lip <= th_lip)) return 0;
  if (!(v.sim >= th_sim)) return 0;
  return 1;
}

std::uint64_t brute_force(const MetricVector& v, const ThresholdSet& th, TaskType t) {
  return brute_force(v, th.safe, th.qed, th.sas, th.lip, th.sim, t == TaskType::kRegression);
}

// Values cluster around the thresholds so both outcomes are frequent.
MetricVector random_vector(std::mt19937_64& rng, TaskType t) {
  auto near = [&](std::uint64_t center, std::uint64_t spread) {
    const std::int64_t d = static_cast<std::int64_t>(rng() % (2 * spread + 1)) - static_cast<std::int64_t>(spread);
    const std::int64_t x = static_cast<std::int64_t>(center) + d;
    return static_cast<std::uint64_t>(x < 0 ? 0 : x);
  };
  MetricVector v;
  v.valid = rng() % 16 == 0 ? 0 : 1;
  v.safe = t == TaskType::kBinary ? (rng() % 4 == 0 ? 0 : kScale) : 300000 + rng() % 700001;
  v.qed = rng() % 4 == 0 ? near(500000, 3) : 400000 + rng() % 600001;
  v.sas = rng() % 4 == 0 ? near(6000000, 3) : kScale + rng() % (6 * kScale + 1);
  v.lip = (rng() % 3) * kScale;
  v.sim = rng() % 4 == 0 ? near(400000, 3) : 300000 + rng() % 700001;
  return v;
}

Fr salt_of(std::uint64_t i) { return Fr::from_u64(0x5eed0000 + i); }

}  // namespace

TEST(EvalNative, Examples) {
  const auto th = ThresholdSet::defaults(TaskType::kBinary);
  const MetricVector best{1, kScale, kScale, kScale, 0, kScale};
  EXPECT_EQ(eval_native(best, th, TaskType::kBinary), 1u);
  MetricVector v = best;
  v.qed = 500000;
  EXPECT_EQ(eval_native(v, th, TaskType::kBinary), 1u);
  v.qed = 499999;
  EXPECT_EQ(eval_native(v, th, TaskType::kBinary), 0u);
  v = best;
  v.safe = 999999;
  EXPECT_EQ(eval_native(v, th, TaskType::kBinary), 0u);
  v.valid = 0;
  v.safe = kScale;
  EXPECT_EQ(eval_native(v, th, TaskType::kBinary), 0u);
}

TEST(Circuit, ShapeAndLayout) {
  const auto& cs = eval_circuit();
  EXPECT_EQ(cs.num_public_inputs, 6u);
  EXPECT_EQ(cs.num_public_outputs, 3u);
  EXPECT_EQ(cs.num_private_inputs, 7u);
  EXPECT_EQ(cs.producer.size(), cs.num_wires);
  for (const auto& c : cs.constraints) {
    EXPECT_LT(static_cast<std::size_t>(c.tag), kNumComponents);
    EXPECT_LT(c.gadget, cs.gadgets.size());
    for (const LC* lc : {&c.a, &c.b, &c.c}) {
      for (const auto& term : lc->terms()) ASSERT_LT(term.wire, cs.num_wires);
    }
  }
}

TEST(Circuit, SynthesisIsDeterministic) {
  EXPECT_EQ(synthesize(), synthesize());
  EXPECT_EQ(synthesize(), eval_circuit());
  EXPECT_EQ(synthesize(ThresholdSet::defaults(TaskType::kRegression), TaskType::kRegression), eval_circuit());
}

TEST(Circuit, SynthesisRejectsBadThresholds) {
  auto th = ThresholdSet::defaults(TaskType::kBinary);
  th.sas = kMetricBound;
  EXPECT_THROW(synthesize(th, TaskType::kBinary), SynthesisError);
  auto wrong_dir = ThresholdSet::defaults(TaskType::kBinary);
  EXPECT_THROW(synthesize(wrong_dir, TaskType::kRegression), SynthesisError);
}

TEST(Circuit, PassingAndFailingWitnesses) {
  const auto th = ThresholdSet::defaults(TaskType::kBinary);
  const MetricVector pass{1, kScale, 700000, 3000000, 0, 600000};
  const auto w = compute_witness(pass, salt_of(1), th, TaskType::kBinary);
  EXPECT_TRUE(eval_circuit().is_satisfied(w.values));
  EXPECT_EQ(w.result(), Fr::one());
  MetricVector fail = pass;
  fail.sas = 6000001;
  const auto wf = compute_witness(fail, salt_of(2), th, TaskType::kBinary);
  EXPECT_TRUE(eval_circuit().is_satisfied(wf.values));
  EXPECT_EQ(wf.result(), Fr::zero());

  const auto pub = w.public_values();
  ASSERT_EQ(pub.size(), 9u);
  EXPECT_EQ(pub[0], Fr::zero());
  EXPECT_EQ(pub[1], Fr::from_u64(th.safe));
  EXPECT_EQ(pub[3], Fr::from_u64(th.sas));
  EXPECT_EQ(pub[layout::kResultSlot], Fr::one());
  EXPECT_EQ(pub[7], commitment(pass, salt_of(1)));
  EXPECT_EQ(pub[8], nullifier(pub[7], TaskType::kBinary));
}

TEST(CircuitProperty, RandomVectorsMatchBothOracles) {
  std::mt19937_64 rng(41);
  std::size_t ones = 0, total = 0;
  for (TaskType t : {TaskType::kBinary, TaskType::kRegression}) {
    const auto th = ThresholdSet::defaults(t);
    for (int i = 0; i < 1500; ++i) {
      const MetricVector v = random_vector(rng, t);
      const auto w = compute_witness(v, salt_of(i), th, t);
      ASSERT_TRUE(eval_circuit().is_satisfied(w.values));
      const std::uint64_t native = eval_native(v, th, t);
      ASSERT_EQ(native, brute_force(v, th, t));
      ASSERT_EQ(w.result(), Fr::from_u64(native));
      ones += native;
      ++total;
    }
  }
  EXPECT_GT(ones, total / 10);
  EXPECT_LT(ones, total * 9 / 10);
}

TEST(CircuitProperty, FullBoundaryGrid) {
  for (TaskType t : {TaskType::kBinary, TaskType::kRegression}) {
    const auto th = ThresholdSet::defaults(t);
    const auto values = th.values();
    std::size_t points = 0;
    for (int code = 0; code < 243; ++code) {
      std::array<std::uint64_t, 5> m{};
      int c = code;
      for (std::size_t k = 0; k < 5; ++k, c /= 3) m[k] = values[k] + static_cast<std::uint64_t>(c % 3) - 1;
      const MetricVector v{1, m[0], m[1], m[2], m[3], m[4]};
      const auto w = compute_witness(v, salt_of(code), th, t);
      ASSERT_TRUE(eval_circuit().is_satisfied(w.values));
      const std::uint64_t native = eval_native(v, th, t);
      ASSERT_EQ(native, brute_force(v, th, t)) << code;
      ASSERT_EQ(w.result(), Fr::from_u64(native)) << code;
      ++points;
    }
    EXPECT_EQ(points, 243u);
  }
}

TEST(CircuitProperty, CustomThresholdsFollowThePublicInputs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const TaskType t = i % 2 ? TaskType::kRegression : TaskType::kBinary;
    auto th = ThresholdSet::defaults(t);
    if (t == TaskType::kRegression) th.safe = rng() % (kScale + 1);
    th.qed = rng() % (kScale + 1);
    th.sas = kScale + rng() % (9 * kScale);
    th.lip = (rng() % 3) * kScale;
    th.sim = rng() % (kScale + 1);
    const MetricVector v = random_vector(rng, t);
    const auto w = compute_witness(v, salt_of(i), th, t);
    ASSERT_TRUE(eval_circuit().is_satisfied(w.values));
    ASSERT_EQ(w.result(), Fr::from_u64(brute_force(v, th, t)));
  }
}

TEST(CircuitSoundness, FlippedResultIsUnsatisfiable) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const TaskType t = i % 2 ? TaskType::kRegression : TaskType::kBinary;
    const auto th = ThresholdSet::defaults(t);
    auto w = compute_witness(random_vector(rng, t), salt_of(i), th, t);
    w.values[layout::kResult] = Fr::one() - w.values[layout::kResult];
    ASSERT_FALSE(eval_circuit().is_satisfied(w.values));
  }
}

TEST(CircuitSoundness, TamperedOutputsAndInputs) {
  const auto th = ThresholdSet::defaults(TaskType::kBinary);
  const MetricVector pass{1, kScale, 700000, 3000000, 0, 600000};
  const auto w = compute_witness(pass, salt_of(3), th, TaskType::kBinary);
  for (Wire wire : {layout::kCommitment, layout::kNullifier, layout::kThetaBegin + 1, layout::kSalt}) {
    auto bad = w.values;
    bad[wire] += Fr::one();
    EXPECT_FALSE(eval_circuit().is_satisfied(bad)) << "wire " << wire;
  }
}

TEST(CircuitSoundness, TaskTypeOutsideBooleanRejected) {
  const MetricVector pass{1, kScale, 700000, 3000000, 0, 600000};
  for (const Fr t : {Fr::from_u64(2), Fr::from_u64(7), -Fr::one()}) {
    auto in = CircuitInputs::make(pass, salt_of(4), ThresholdSet::defaults(TaskType::kBinary), TaskType::kBinary);
    in.task_type = t;
    EXPECT_FALSE(eval_circuit().is_satisfied(compute_witness(in).values));
  }
}

TEST(CircuitSoundness, OverflowInjectionFailsWitnessGeneration) {
  const auto th = ThresholdSet::defaults(TaskType::kBinary);
  const MetricVector pass{1, kScale, 700000, 3000000, 0, 600000};
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::uint64_t bad : {kMetricBound, kMetricBound + 1, ~std::uint64_t{0}}) {
      MetricVector v = pass;
      std::array<std::uint64_t*, 6> f = {&v.valid, &v.safe, &v.qed, &v.sas, &v.lip, &v.sim};
      *f[k] = bad;
      EXPECT_THROW(compute_witness(v, salt_of(5), th, TaskType::kBinary), WitnessError) << k;
    }
  }
  auto big = th;
  big.sim = kMetricBound;
  EXPECT_THROW(compute_witness(pass, salt_of(5), big, TaskType::kBinary), WitnessError);
  MetricVector edge = pass;
  edge.sas = kMetricBound - 1;
  EXPECT_NO_THROW(compute_witness(edge, salt_of(5), th, TaskType::kBinary));
}

TEST(CircuitHash, NativeMatchesWires) {
  std::mt19937_64 rng(13);
  SeededRandom srng(13);
  for (int i = 0; i < 100; ++i) {
    const TaskType t = i % 2 ? TaskType::kRegression : TaskType::kBinary;
    const MetricVector v = random_vector(rng, t);
    const Fr s = Fr::random(srng);
    const auto w = compute_witness(v, s, ThresholdSet::defaults(t), t);
    ASSERT_EQ(w.commitment(), commitment(v, s));
    ASSERT_EQ(w.nullifier(), nullifier(commitment(v, s), t));
  }
}

TEST(CircuitHash, SaltsSeparateCommitmentsAndTaskSeparatesNullifiers) {
  SeededRandom rng(21);
  const MetricVector v{1, kScale, 700000, 3000000, 0, 600000};
  EXPECT_EQ(commitment(v, salt_of(1)), commitment(v, salt_of(1)));
  for (int i = 0; i < 1000; ++i) {
    ASSERT_NE(commitment(v, Fr::random(rng)), commitment(v, Fr::random(rng)));
  }
  for (int i = 0; i < 100; ++i) {
    const Fr c = Fr::random(rng);
    ASSERT_EQ(nullifier(c, TaskType::kBinary), nullifier(c, TaskType::kBinary));
    ASSERT_NE(nullifier(c, TaskType::kBinary), nullifier(c, TaskType::kRegression));
  }
}

TEST(CircuitHash, CommitmentBindingOverManyPairs) {
  std::mt19937_64 rng(77);
  SeededRandom srng(77);
  std::set<U256> seen;
  for (int i = 0; i < 100000; ++i) {
    const MetricVector v = random_vector(rng, TaskType::kRegression);
    ASSERT_TRUE(seen.insert(commitment(v, Fr::random(srng)).to_u256()).second);
  }
}

TEST(Analyze, ReportOnEvaluationCircuit) {
  const auto r = analyze(eval_circuit());
  EXPECT_EQ(r.total, eval_circuit().constraints.size());
  EXPECT_EQ(r.linear + r.nonlinear, r.total);
  std::size_t sum = 0;
  double share = 0;
  for (std::size_t k = 0; k < kNumComponents; ++k) {
    sum += r.per_component[k];
    share += r.share[k];
  }
  EXPECT_EQ(sum, r.total);
  EXPECT_NEAR(share, 100.0, 1e-9);
  EXPECT_GE(r.share_of(Component::kHash), 40.0);
  EXPECT_GE(r.total, 500u);
  EXPECT_LE(r.total, 20000u);
  EXPECT_EQ(r.num_public_inputs, 6u);
  EXPECT_EQ(r.num_private_inputs, 7u);
  EXPECT_EQ(r.num_public_outputs, 3u);
  EXPECT_GT(r.multiplicative_depth, 0u);
  EXPECT_GE(r.gadget_depth, 1u);
  EXPECT_GE(r.independent_groups, 1u);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["total_constraints"], r.total);
}

TEST(Analyze, EmptySystem) {
  const auto r = analyze(ConstraintSystem{});
  EXPECT_EQ(r.total, 0u);
  EXPECT_EQ(r.multiplicative_depth, 0u);
  EXPECT_EQ(r.independent_groups, 0u);
  EXPECT_EQ(r.count(Component::kHash), 0u);
}
