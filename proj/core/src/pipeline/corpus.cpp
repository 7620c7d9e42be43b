// SPDX-License-Identifier: Apache-2.0
#include "toxizk/pipeline/corpus.hpp"

#include <array>

#include "toxizk/smiles.hpp"

namespace toxizk::pipeline {
namespace {

constexpr std::array<const char*, 12> kFragments = {
    "CCO", "c1ccccc1", "CC(=O)O", "N", "C(=O)N", "c1ccncc1", "OC", "CC(C)C", "C#N", "Cl", "S(=O)(=O)N", "C1CCCCC1"};

constexpr std::array<const char*, 8> kBroken = {
    "CC(C",       // unclosed branch
    "C1CCCC",     // unclosed ring
    "CC)C",       // stray close
    "C[NH4",      // unterminated bracket
    "CC$C",       // unknown character
    "C=",         // dangling bond
    "C()C",       // empty branch
    "c1ccccc1..C"  // misplaced dot
};

}  // namespace

double CorpusGenerator::uniform(double lo, double hi) {
  std::uint64_t bits = 0;
  rng_.fill({reinterpret_cast<std::uint8_t*>(&bits), sizeof bits});
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::uint64_t CorpusGenerator::below(std::uint64_t n) {
  // Rejection sampling for an unbiased index.
  const std::uint64_t limit = n == 0 ? 0 : (~std::uint64_t{0} / n) * n;
  for (;;) {
    std::uint64_t bits = 0;
    rng_.fill({reinterpret_cast<std::uint8_t*>(&bits), sizeof bits});
    if (bits < limit) return bits % n;
  }
}

std::string CorpusGenerator::valid_smiles() {
  for (;;) {
    std::string s = kFragments[below(kFragments.size())];
    const std::uint64_t extra = below(3);
    for (std::uint64_t i = 0; i < extra; ++i) s += kFragments[below(kFragments.size())];
    if (smiles::validate(s).valid) return s;
  }
}

std::string CorpusGenerator::broken_smiles() {
  std::string s = valid_smiles();
  const std::string tail = kBroken[below(kBroken.size())];
  // Keep the defect at the end so it cannot be repaired by what follows.
  return s + tail;
}

EvaluationRecord CorpusGenerator::passing(TaskType t, const std::string& id) {
  EvaluationRecord r;
  r.molecule_id = id;
  r.task_id = t == TaskType::kBinary ? "clintox" : "ld50";
  r.task_type = t;
  r.smiles = valid_smiles();
  if (t == TaskType::kBinary) {
    r.safety = SafetyLabel::kNonToxic;
  } else {
    r.safety = uniform(0.5, 1.0);
  }
  r.qed = uniform(0.5, 1.0);
  r.sas = uniform(1.0, 6.0);
  r.lipinski_violations = below(2);
  r.similarity = uniform(0.4, 1.0);
  return r;
}

EvaluationRecord CorpusGenerator::failing(TaskType t, const std::string& id) {
  EvaluationRecord r = passing(t, id);
  switch (below(5)) {
    case 0:
      if (t == TaskType::kBinary) {
        r.safety = SafetyLabel::kToxic;
      } else {
        r.safety = uniform(0.0, 0.499);
      }
      break;
    case 1:
      r.qed = uniform(0.0, 0.499);
      break;
    case 2:
      r.sas = uniform(6.001, 10.0);
      break;
    case 3:
      r.lipinski_violations = 2 + below(3);
      break;
    default:
      r.similarity = uniform(0.0, 0.399);
      break;
  }
  return r;
}

EvaluationRecord CorpusGenerator::invalid_smiles(TaskType t, const std::string& id) {
  EvaluationRecord r = passing(t, id);
  r.smiles = broken_smiles();
  return r;
}

std::vector<EvaluationRecord> CorpusGenerator::passing(std::size_t n, TaskType t, const std::string& prefix) {
  std::vector<EvaluationRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(passing(t, prefix + "-" + std::to_string(i)));
  return out;
}

std::vector<EvaluationRecord> CorpusGenerator::failing(std::size_t n, TaskType t, const std::string& prefix) {
  std::vector<EvaluationRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(failing(t, prefix + "-" + std::to_string(i)));
  return out;
}

std::vector<EvaluationRecord> CorpusGenerator::invalid_smiles(std::size_t n, TaskType t,
                                                              const std::string& prefix) {
  std::vector<EvaluationRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(invalid_smiles(t, prefix + "-" + std::to_string(i)));
  return out;
}

}  // namespace toxizk::pipeline
