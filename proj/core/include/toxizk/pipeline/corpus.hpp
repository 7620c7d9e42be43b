// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "toxizk/data_processor.hpp"
#include "toxizk/random.hpp"

namespace toxizk::pipeline {

/// Synthetic evaluation records drawn from the metric ranges of the default
/// thresholds. Molecule ids are "<prefix>-<index>".
class CorpusGenerator {
 public:
  explicit CorpusGenerator(RandomSource& rng) : rng_(rng) {}

  /// Valid SMILES and every metric inside its threshold.
  EvaluationRecord passing(TaskType t, const std::string& id);
  /// Valid SMILES, exactly one metric (chosen at random) outside its threshold.
  EvaluationRecord failing(TaskType t, const std::string& id);
  /// Syntactically broken SMILES, no validity flag; metrics would otherwise pass.
  EvaluationRecord invalid_smiles(TaskType t, const std::string& id);

  std::vector<EvaluationRecord> passing(std::size_t n, TaskType t, const std::string& prefix = "pass");
  std::vector<EvaluationRecord> failing(std::size_t n, TaskType t, const std::string& prefix = "fail");
  std::vector<EvaluationRecord> invalid_smiles(std::size_t n, TaskType t,
                                               const std::string& prefix = "invalid");

  std::string valid_smiles();
  std::string broken_smiles();

  double uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);

 private:
  RandomSource& rng_;
};

}  // namespace toxizk::pipeline
