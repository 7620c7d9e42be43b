// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <vector>

#include "toxizk/circuit/eval_circuit.hpp"
#include "toxizk/pipeline/pipeline.hpp"
#include "toxizk/poseidon.hpp"
#include "toxizk/snark/msm.hpp"
#include "toxizk/snark/pairing.hpp"

using namespace toxizk;

namespace {

const pipeline::Keys& keys() {
  static const pipeline::Keys k = [] {
    SeededRandom rng(1);
    return pipeline::Keys::generate(rng);
  }();
  return k;
}

const MetricVector kPass{1, kScale, 700000, 3000000, 0, 600000};

circuit::Witness witness() {
  return circuit::compute_witness(kPass, Fr::from_u64(42), ThresholdSet::defaults(TaskType::kBinary),
                                  TaskType::kBinary);
}

void BM_FrMul(benchmark::State& state) {
  Fr a = Fr::from_u64(0x1234567), b = Fr::from_u64(0x89abcdef);
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FrMul);

void BM_FqMul(benchmark::State& state) {
  Fq a = Fq::from_u64(0x1234567), b = Fq::from_u64(0x89abcdef);
  for (auto _ : state) {
    a = a * b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FqMul);

void BM_Poseidon(benchmark::State& state) {
  std::vector<Fr> in;
  for (int64_t i = 0; i < state.range(0); ++i) in.push_back(Fr::from_u64(i + 1));
  for (auto _ : state) benchmark::DoNotOptimize(poseidon_hash(in));
}
BENCHMARK(BM_Poseidon)->Arg(2)->Arg(7);

void BM_Pairing(benchmark::State& state) {
  const auto p = snark::G1::generator().mul(Fr::from_u64(7)).to_affine();
  const auto q = snark::G2::generator().mul(Fr::from_u64(11)).to_affine();
  for (auto _ : state) benchmark::DoNotOptimize(snark::pairing(p, q));
  state.SetLabel("optimal ate");
}
BENCHMARK(BM_Pairing)->Unit(benchmark::kMillisecond);

void BM_MsmG1(benchmark::State& state) {
  SeededRandom rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<snark::G1> pts;
  std::vector<U256> scalars;
  const auto g = snark::G1::generator();
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(g.mul(Fr::from_u64(i + 2)));
    scalars.push_back(pipeline::sample_salt(rng).to_u256());
  }
  const auto bases = snark::batch_to_affine<snark::G1Curve>(pts);
  for (auto _ : state) benchmark::DoNotOptimize(snark::msm<snark::G1Curve>(bases, scalars));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_MsmG1)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Witness(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(witness());
}
BENCHMARK(BM_Witness)->Unit(benchmark::kMicrosecond);

void BM_Prove(benchmark::State& state) {
  const auto& k = keys();
  const auto w = witness();
  SeededRandom rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(snark::prove(k.pk(), k.cs(), w.values, rng));
}
BENCHMARK(BM_Prove)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto& k = keys();
  const auto w = witness();
  SeededRandom rng(6);
  const auto proof = snark::prove(k.pk(), k.cs(), w.values, rng);
  const auto pub = w.public_values();
  for (auto _ : state) benchmark::DoNotOptimize(k.pvk().verify(pub, proof));
}
BENCHMARK(BM_Verify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
