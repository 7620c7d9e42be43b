// SPDX-License-Identifier: Apache-2.0
#include "toxizk/data_processor.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "json.hpp"
#include "toxizk/smiles.hpp"

namespace toxizk {
namespace {

using json = nlohmann::json;

constexpr std::uint64_t kSasMin = 1 * kScale;
constexpr std::uint64_t kSasMax = 10 * kScale;
constexpr std::uint64_t kDefaultLipinski = 99;

double require_number(const json& obj, const char* key, double lo, double hi) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw DataError(std::string("'") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw DataError(std::string("'") + key + "' is not finite");
  if (d < lo || d > hi) {
    throw DataError(std::string("'") + key + "' = " + std::to_string(d) +
                    " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return d;
}

std::string require_string(const json& obj, const char* key) {
  if (!obj.contains(key)) throw DataError(std::string("missing '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_string()) throw DataError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

const char* to_string(TaskType t) {
  return t == TaskType::kBinary ? "binary" : "regression";
}

std::optional<TaskType> parse_task_type(std::string_view s) {
  if (s == "binary") return TaskType::kBinary;
  if (s == "regression") return TaskType::kRegression;
  return std::nullopt;
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kGeq: return "geq";
    case Direction::kLeq: return "leq";
    case Direction::kEq: return "eq";
  }
  return "?";
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kWarn: return "warn";
    case CheckStatus::kFail: return "fail";
  }
  return "?";
}

std::array<Direction, 5> ThresholdSet::canonical_directions(TaskType t) {
  return {t == TaskType::kBinary ? Direction::kEq : Direction::kGeq, Direction::kGeq,
          Direction::kLeq, Direction::kLeq, Direction::kGeq};
}

ThresholdSet ThresholdSet::defaults(TaskType t) {
  ThresholdSet th;
  th.safe = t == TaskType::kBinary ? kScale : 500'000;
  th.qed = 500'000;
  th.sas = 6'000'000;
  th.lip = 1'000'000;
  th.sim = 400'000;
  th.directions = canonical_directions(t);
  return th;
}

ThresholdSet ThresholdSet::with_strict_safety() const {
  ThresholdSet th = *this;
  if (th.directions[0] == Direction::kGeq) th.safe += 1;
  return th;
}

ThresholdSet parse_thresholds(std::string_view text, TaskType t) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed thresholds: ") + e.what());
  }
  if (!obj.is_object()) throw DataError("thresholds must be a JSON object");
  ThresholdSet th = ThresholdSet::defaults(t);
  for (const auto& [key, value] : obj.items()) {
    std::uint64_t* slot = key == "safe"  ? &th.safe
                          : key == "qed" ? &th.qed
                          : key == "sas" ? &th.sas
                          : key == "lip" ? &th.lip
                          : key == "sim" ? &th.sim
                                         : nullptr;
    if (!slot) throw DataError("unknown threshold '" + key + "'");
    if (!value.is_number()) throw DataError("threshold '" + key + "' must be a number");
    const double d = value.get<double>();
    if (!std::isfinite(d) || d < 0) throw DataError("threshold '" + key + "' must be finite and non-negative");
    *slot = scale_real(d);
    if (*slot >= kMetricBound) throw DataError("threshold '" + key + "' exceeds the 32-bit range");
  }
  return th;
}

EvaluationRecord parse_record(std::string_view line, std::vector<std::string>* warnings) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw DataError("record must be a JSON object");

  EvaluationRecord r;
  try {
    r.molecule_id = require_string(obj, "molecule_id");
    if (r.molecule_id.empty()) throw DataError("'molecule_id' is empty");
    r.task_id = require_string(obj, "task_id");
    const auto tt = parse_task_type(require_string(obj, "task_type"));
    if (!tt) throw DataError("'task_type' must be \"binary\" or \"regression\"");
    r.task_type = *tt;

    if (obj.contains("smiles") && !obj["smiles"].is_null()) {
      r.smiles = require_string(obj, "smiles");
    }
    if (obj.contains("valid") && !obj["valid"].is_null()) {
      if (!obj["valid"].is_boolean()) throw DataError("'valid' must be a boolean");
      r.validity_flag = obj["valid"].get<bool>();
    }
    // Metrics of a molecule flagged invalid are never evaluated upstream, so
    // their absence is expected and not worth a warning.
    const bool expect_metrics = r.validity_flag.value_or(true);
    const auto missing = [&](const char* key, const char* fallback) {
      if (expect_metrics && warnings != nullptr) {
        warnings->push_back(std::string("missing '") + key + "', defaulted to " + fallback);
      }
    };

    if (obj.contains("safety")) {
      const json& s = obj["safety"];
      if (r.task_type == TaskType::kBinary) {
        if (!s.is_string()) throw DataError("binary 'safety' must be \"toxic\" or \"non-toxic\"");
        const auto label = s.get<std::string>();
        if (label == "toxic") {
          r.safety = SafetyLabel::kToxic;
        } else if (label == "non-toxic") {
          r.safety = SafetyLabel::kNonToxic;
        } else {
          throw DataError("unknown safety label '" + label + "'");
        }
      } else {
        r.safety = require_number(obj, "safety", 0.0, 1.0);
      }
    } else {
      missing("safety", "toxic");
      if (r.task_type == TaskType::kBinary) {
        r.safety = SafetyLabel::kToxic;
      } else {
        r.safety = 0.0;
      }
    }

    if (obj.contains("qed")) {
      r.qed = require_number(obj, "qed", 0.0, 1.0);
    } else {
      missing("qed", "0.0");
    }
    if (obj.contains("sas")) {
      r.sas = require_number(obj, "sas", 1.0, 10.0);
    } else {
      missing("sas", "10.0");
    }
    if (obj.contains("lipinski_violations")) {
      const json& l = obj["lipinski_violations"];
      if (l.is_number_unsigned() || (l.is_number_integer() && l.get<std::int64_t>() >= 0)) {
        r.lipinski_violations = l.get<std::uint64_t>();
      } else {
        throw DataError("'lipinski_violations' must be a non-negative integer");
      }
    } else {
      missing("lipinski_violations", "99");
    }
    if (obj.contains("similarity")) {
      r.similarity = require_number(obj, "similarity", 0.0, 1.0);
    } else {
      missing("similarity", "0.0");
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("bad field: ") + e.what());
  }
  return r;
}

std::string record_to_json(const EvaluationRecord& r) {
  json obj;
  obj["molecule_id"] = r.molecule_id;
  obj["task_id"] = r.task_id;
  obj["task_type"] = to_string(r.task_type);
  if (r.smiles) obj["smiles"] = *r.smiles;
  if (r.validity_flag) obj["valid"] = *r.validity_flag;
  if (const auto* label = std::get_if<SafetyLabel>(&r.safety)) {
    obj["safety"] = *label == SafetyLabel::kToxic ? "toxic" : "non-toxic";
  } else {
    obj["safety"] = std::get<double>(r.safety);
  }
  obj["qed"] = r.qed;
  obj["sas"] = r.sas;
  obj["lipinski_violations"] = r.lipinski_violations;
  obj["similarity"] = r.similarity;
  return obj.dump();
}

LoadResult load_records(std::istream& in) {
  LoadResult out;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++out.lines;
    std::vector<std::string> warnings;
    try {
      EvaluationRecord r = parse_record(line, &warnings);
      if (!seen.emplace(r.molecule_id, r.task_id).second) {
        throw DataError("duplicate record for molecule '" + r.molecule_id + "' task '" +
                        r.task_id + "'");
      }
      for (auto& w : warnings) out.warnings.push_back({lineno, std::move(w)});
      out.records.push_back(std::move(r));
    } catch (const DataError& e) {
      out.rejects.push_back({lineno, e.what()});
    }
  }
  if (in.bad()) throw IoError("read failure while loading records");
  if (out.records.empty()) throw EmptyInputError("no parsable records in input");
  return out;
}

LoadResult load_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_records(in);
}

std::uint64_t scale_real(double raw) {
  if (!std::isfinite(raw) || raw < 0.0) throw DataError("metric must be finite and non-negative");
  const double scaled = std::round(raw * static_cast<double>(kScale));
  if (scaled >= static_cast<double>(kMetricBound)) {
    throw DataError("scaled metric overflows 32 bits");
  }
  return static_cast<std::uint64_t>(scaled);
}

MetricVector normalize(const EvaluationRecord& r) {
  MetricVector v;
  if (r.validity_flag) {
    v.valid = *r.validity_flag ? 1 : 0;
  } else if (r.smiles) {
    v.valid = smiles::validate(*r.smiles).valid ? 1 : 0;
  } else {
    v.valid = 0;
  }
  if (const auto* label = std::get_if<SafetyLabel>(&r.safety)) {
    v.safe = *label == SafetyLabel::kNonToxic ? kScale : 0;
  } else {
    v.safe = scale_real(std::get<double>(r.safety));
  }
  v.qed = scale_real(r.qed);
  v.sas = scale_real(r.sas);
  if (r.lipinski_violations >= kMetricBound / kScale + 1) {
    throw DataError("scaled lipinski count overflows 32 bits");
  }
  v.lip = r.lipinski_violations * kScale;
  if (v.lip >= kMetricBound) throw DataError("scaled lipinski count overflows 32 bits");
  v.sim = scale_real(r.similarity);
  return v;
}

bool PrecheckReport::passed() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::kFail) return false;
  }
  return true;
}

const PrecheckReport::Check* PrecheckReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

PrecheckReport precheck(const MetricVector& v, TaskType t) {
  PrecheckReport report;
  const auto range = [&](const char* name, std::uint64_t value, std::uint64_t lo,
                         std::uint64_t hi) {
    const bool ok = value >= lo && value <= hi;
    report.checks.push_back(
        {name, ok ? CheckStatus::kPass : CheckStatus::kFail,
         std::to_string(value) + (ok ? " in " : " outside ") + "[" + std::to_string(lo) +
             ", " + std::to_string(hi) + "]"});
  };

  range("valid", v.valid, 0, 1);
  if (t == TaskType::kBinary) {
    const bool ok = v.safe == 0 || v.safe == kScale;
    report.checks.push_back({"safe", ok ? CheckStatus::kPass : CheckStatus::kFail,
                             ok ? "binary label" : "binary safety must be 0 or 10^6"});
  } else {
    range("safe", v.safe, 0, kScale);
  }
  range("qed", v.qed, 0, kScale);
  range("sas", v.sas, kSasMin, kSasMax);
  {
    const bool ok = v.lip % kScale == 0 && v.lip < kMetricBound;
    report.checks.push_back({"lip", ok ? CheckStatus::kPass : CheckStatus::kFail,
                             ok ? "scaled count" : "must be a multiple of 10^6 below 2^32"});
  }
  range("sim", v.sim, 0, kScale);

  {
    bool fits = true;
    for (auto x : v.as_array()) fits = fits && x < kMetricBound;
    report.checks.push_back({"bit_width", fits ? CheckStatus::kPass : CheckStatus::kFail,
                             fits ? "all fields < 2^32" : "a field is ≥ 2^32"});
  }

  // An unevaluated molecule should carry the fail-closed defaults only.
  const bool untouched = v.safe == 0 && v.qed == 0 && v.sim == 0 && v.sas == kSasMax &&
                         v.lip == kDefaultLipinski * kScale;
  if (v.valid == 0 && !untouched) {
    report.checks.push_back({"consistency", CheckStatus::kWarn,
                             "invalid molecule carries evaluated metrics"});
  } else {
    report.checks.push_back({"consistency", CheckStatus::kPass, "consistent"});
  }
  return report;
}

}  // namespace toxizk
