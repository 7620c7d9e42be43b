// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "toxizk/pipeline/pipeline.hpp"

namespace toxizk::pipeline {

struct Stat {
  double mean = 0;
  double stddev = 0;

  /// Coefficient of variation; 0 when the mean is 0.
  double cv() const { return mean != 0 ? stddev / mean : 0.0; }
  static Stat of(const std::vector<double>& xs);
};

struct BenchRun {
  std::size_t size = 0;
  unsigned repeat = 0;
  double total_seconds = 0;
  double per_molecule_seconds = 0;
  double throughput = 0;
  double success_rate = 0;
  std::optional<double> peak_memory_mb;
  PhaseTimings phase_mean;  // per molecule
};

struct BenchRow {
  std::size_t size = 0;
  std::size_t repeats = 0;
  Stat total_seconds;
  Stat per_molecule_seconds;
  Stat throughput;
  Stat success_rate;
  std::optional<double> peak_memory_mb;
  PhaseTimings phase_mean;
};

struct BenchReport {
  std::vector<BenchRun> runs;
  std::vector<BenchRow> rows;
  unsigned workers = 1;

  const BenchRow* row(std::size_t size) const;
  nlohmann::ordered_json to_json() const;
  /// Molecules, Avg Total Time, Time per Molecule, Throughput, Peak Memory,
  /// Success Rate, plus standard deviations and per-phase means.
  std::string to_csv() const;
};

struct BenchOptions {
  std::vector<std::size_t> sizes = {10, 50, 100};
  unsigned repeats = 3;
  unsigned workers = 1;
  TaskType task = TaskType::kBinary;
  /// Each run gets a fresh registry file in this directory.
  std::filesystem::path scratch_dir;
};

/// Runs the pipeline on synthetic passing corpora of each size. The corpus
/// is generated once from `corpus_rng`; run i uses its first `size` records.
BenchReport bench(const Keys& keys, const BenchOptions& options, RandomSource& corpus_rng,
                  const RngFactory& rng = system_rng_factory());

}  // namespace toxizk::pipeline
