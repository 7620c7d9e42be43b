// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "toxizk/errors.hpp"

namespace toxizk {

/// Every real-valued metric is carried as round(raw * 10^6).
inline constexpr std::uint64_t kScale = 1'000'000;
/// Bit width of every in-circuit range check.
inline constexpr unsigned kMetricBits = 32;
inline constexpr std::uint64_t kMetricBound = std::uint64_t{1} << kMetricBits;

enum class TaskType : std::uint8_t { kBinary = 0, kRegression = 1 };

inline std::uint64_t encode(TaskType t) { return static_cast<std::uint64_t>(t); }
const char* to_string(TaskType t);
/// Accepts "binary" / "regression".
std::optional<TaskType> parse_task_type(std::string_view s);

enum class Direction : std::uint8_t { kGeq, kLeq, kEq };
const char* to_string(Direction d);

enum class SafetyLabel : std::uint8_t { kToxic, kNonToxic };

/// Fixed-point evaluation vector. Fields are 64-bit so that values beyond
/// the circuit's 32-bit range can be represented and rejected downstream.
struct MetricVector {
  std::uint64_t valid = 0;
  std::uint64_t safe = 0;
  std::uint64_t qed = 0;
  std::uint64_t sas = 0;
  std::uint64_t lip = 0;
  std::uint64_t sim = 0;

  bool operator==(const MetricVector&) const = default;

  std::array<std::uint64_t, 6> as_array() const {
    return {valid, safe, qed, sas, lip, sim};
  }
};

/// The five thresholds in circuit order (safe, qed, sas, lip, sim), scaled.
struct ThresholdSet {
  std::uint64_t safe = 0;
  std::uint64_t qed = 0;
  std::uint64_t sas = 0;
  std::uint64_t lip = 0;
  std::uint64_t sim = 0;
  std::array<Direction, 5> directions{};

  bool operator==(const ThresholdSet&) const = default;

  std::array<std::uint64_t, 5> values() const { return {safe, qed, sas, lip, sim}; }

  /// Table defaults: binary safety must equal 10^6, regression safety ≥ 0.5,
  /// QED ≥ 0.5, SAS ≤ 6, Lipinski violations ≤ 1, similarity ≥ 0.4.
  static ThresholdSet defaults(TaskType t);

  /// Directions the circuit implements for task type `t`.
  static std::array<Direction, 5> canonical_directions(TaskType t);

  /// Regression safety as a strict ">" comparison: θ_safe + 1 under GEQ.
  ThresholdSet with_strict_safety() const;
};

/// Threshold overrides from a JSON object with any of the keys safe, qed,
/// sas, lip, sim given in raw (unscaled) units. Missing keys keep the task
/// defaults. Throws DataError on unknown keys or non-numeric values.
ThresholdSet parse_thresholds(std::string_view json_text, TaskType t);

struct EvaluationRecord {
  std::string molecule_id;
  std::string task_id;
  TaskType task_type = TaskType::kBinary;
  std::optional<std::string> smiles;
  std::optional<bool> validity_flag;
  std::variant<SafetyLabel, double> safety = SafetyLabel::kToxic;
  double qed = 0.0;
  double sas = 10.0;
  std::uint64_t lipinski_violations = 99;
  double similarity = 0.0;
};

struct LineIssue {
  std::size_t line;  // 1-based
  std::string message;
};

struct LoadResult {
  std::vector<EvaluationRecord> records;
  std::vector<LineIssue> rejects;
  std::vector<LineIssue> warnings;
  std::size_t lines = 0;  // non-blank lines seen
};

class EmptyInputError : public DataError {
 public:
  using DataError::DataError;
};

/// Parses one JSON object. Missing metric fields fall back to fail-closed
/// defaults and append a message to `warnings`; anything else that is wrong
/// throws DataError.
EvaluationRecord parse_record(std::string_view json_line,
                              std::vector<std::string>* warnings = nullptr);

std::string record_to_json(const EvaluationRecord& r);

/// JSON Lines ingestion. Malformed lines and duplicate (molecule_id, task_id)
/// pairs go to `rejects`; blank lines are skipped. Throws EmptyInputError when
/// no record survives.
LoadResult load_records(std::istream& in);
/// Same as above; IoError if the file cannot be opened.
LoadResult load_records(const std::filesystem::path& path);

/// Scales every metric by 10^6 with round-half-away-from-zero. Binary safety
/// maps toxic → 0 and non-toxic → 10^6; Lipinski counts are scaled as well.
/// Throws DataError if a scaled value reaches 2^32.
MetricVector normalize(const EvaluationRecord& record);

/// round(raw * 10^6) for a finite non-negative value.
std::uint64_t scale_real(double raw);

enum class CheckStatus : std::uint8_t { kPass, kWarn, kFail };
const char* to_string(CheckStatus s);

struct PrecheckReport {
  struct Check {
    std::string name;
    CheckStatus status;
    std::string detail;
  };
  std::vector<Check> checks;

  bool passed() const;  // no check failed (warnings allowed)
  const Check* find(std::string_view name) const;
};

/// Range and consistency checks on a normalised vector. Never throws.
PrecheckReport precheck(const MetricVector& v, TaskType t);

}  // namespace toxizk
