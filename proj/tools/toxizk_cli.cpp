// SPDX-License-Identifier: Apache-2.0
// toxizk command line: setup, prove, verify, batch, bench, analyze,
// security-suite, validate-smiles, nullifiers.
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toxizk/circuit/analyze.hpp"
#include "toxizk/circuit/eval_circuit.hpp"
#include "toxizk/data_processor.hpp"
#include "toxizk/errors.hpp"
#include "toxizk/nullifier_registry.hpp"
#include "toxizk/pipeline/bench.hpp"
#include "toxizk/pipeline/pipeline.hpp"
#include "toxizk/pipeline/security.hpp"
#include "toxizk/smiles.hpp"
#include "toxizk/snark/serialize.hpp"

namespace {

using namespace toxizk;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kFalse = 1, kUsage = 2, kData = 3, kCrypto = 4 };

struct Common {
  std::string tasktype;
  std::string thresholds;
  std::string registry;
  unsigned workers = 1;
  std::string out;
  std::string pk;
  std::string vk;
  std::string salt_key;
  std::optional<std::uint64_t> seed;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + out);
  f << text << '\n';
  if (!f) throw IoError("write failed: " + out);
}

std::optional<TaskType> task_option(const Common& c) {
  if (c.tasktype.empty()) return std::nullopt;
  auto t = parse_task_type(c.tasktype);
  if (!t) throw ParameterError("--tasktype must be binary or regression");
  return t;
}

// --thresholds takes inline JSON or a path to a JSON file.
std::optional<ThresholdSet> threshold_option(const Common& c, TaskType t) {
  if (c.thresholds.empty()) return std::nullopt;
  const bool inline_json = c.thresholds.find('{') != std::string::npos;
  return parse_thresholds(inline_json ? c.thresholds : slurp(c.thresholds), t);
}

std::optional<pipeline::SaltKey> salt_key_option(const Common& c) {
  if (c.salt_key.empty()) return std::nullopt;
  if (c.salt_key.size() != 64) throw ParameterError("--salt-key must be 64 hex digits");
  pipeline::SaltKey key{};
  for (std::size_t i = 0; i < key.size(); ++i) {
    const char* p = c.salt_key.data() + 2 * i;
    auto [end, ec] = std::from_chars(p, p + 2, key[i], 16);
    if (ec != std::errc() || end != p + 2) throw ParameterError("--salt-key must be 64 hex digits");
  }
  return key;
}

std::unique_ptr<RandomSource> make_rng(const Common& c) {
  if (c.seed) return std::make_unique<SeededRandom>(*c.seed);
  return std::make_unique<SystemRandom>();
}

pipeline::RngFactory rng_factory(const Common& c) {
  if (!c.seed) return pipeline::system_rng_factory();
  const std::uint64_t base = *c.seed;
  return [base](std::size_t worker) -> std::unique_ptr<RandomSource> {
    return std::make_unique<SeededRandom>(base + 0x9e3779b97f4a7c15ULL * (worker + 1));
  };
}

pipeline::Keys load_or_generate_keys(const Common& c, RandomSource& rng) {
  if (c.pk.empty() != c.vk.empty()) throw ParameterError("--pk and --vk go together");
  if (c.pk.empty()) {
    std::cerr << "note: no --pk/--vk given, running an in-process setup\n";
    return pipeline::Keys::generate(rng);
  }
  return pipeline::Keys(snark::load_proving_key(c.pk), snark::load_verifying_key(c.vk));
}

pipeline::RunOptions run_options(const Common& c) {
  pipeline::RunOptions o;
  if (auto t = task_option(c)) o.thresholds = threshold_option(c, *t);
  else if (!c.thresholds.empty()) throw ParameterError("--thresholds needs --tasktype");
  o.salt_key = salt_key_option(c);
  return o;
}

// Records whose task type differs from --tasktype are rejected up front.
void filter_task(const Common& c, LoadResult& lr) {
  const auto t = task_option(c);
  if (!t) return;
  std::vector<EvaluationRecord> kept;
  for (std::size_t i = 0; i < lr.records.size(); ++i) {
    if (lr.records[i].task_type == *t) {
      kept.push_back(std::move(lr.records[i]));
    } else {
      lr.rejects.push_back({0, lr.records[i].molecule_id + ": task type is not " + to_string(*t)});
    }
  }
  lr.records = std::move(kept);
  if (lr.records.empty()) throw EmptyInputError(std::string("no ") + to_string(*t) + " records in input");
}

int cmd_setup(const Common& c) {
  if (c.pk.empty() || c.vk.empty()) throw ParameterError("setup needs --pk and --vk output paths");
  auto rng = make_rng(c);
  const auto kp = snark::setup(circuit::eval_circuit(), *rng);
  snark::save_proving_key(c.pk, kp.pk);
  snark::save_verifying_key(c.vk, kp.vk);
  json j;
  j["proving_key"] = c.pk;
  j["verifying_key"] = c.vk;
  j["num_constraints"] = circuit::eval_circuit().constraints.size();
  j["domain_size"] = kp.pk.domain_size;
  emit(j.dump(2), c.out);
  return kOk;
}

int cmd_prove(const Common& c, const std::string& record_path) {
  auto rng = make_rng(c);
  LoadResult lr = load_records(record_path);
  filter_task(c, lr);
  if (lr.records.size() != 1 || !lr.rejects.empty()) {
    throw DataError("prove expects exactly one valid record, found " + std::to_string(lr.records.size()) +
                    (lr.rejects.empty() ? "" : " (" + lr.rejects.front().message + ")"));
  }
  const auto keys = load_or_generate_keys(c, *rng);
  std::unique_ptr<NullifierRegistry> registry;
  if (!c.registry.empty()) registry = std::make_unique<NullifierRegistry>(c.registry);
  const auto m = pipeline::run_single(lr.records.front(), keys, run_options(c), registry.get(), *rng);
  if (!m.bundle) {
    std::cerr << "error: " << pipeline::to_string(*m.error_phase) << ": " << m.error << '\n';
    switch (*m.error_phase) {
      case pipeline::Phase::kNormalize:
      case pipeline::Phase::kPrecheck:
      case pipeline::Phase::kWitness:
        return kData;
      default:
        return kCrypto;
    }
  }
  emit(m.bundle->to_json(), c.out);
  json summary = m.to_json();
  std::cerr << summary.dump() << '\n';
  return kOk;
}

int cmd_verify(const Common& c, const std::string& bundle_path) {
  if (c.vk.empty()) throw ParameterError("verify needs --vk");
  const auto bundle = snark::ProofBundle::parse(slurp(bundle_path));
  const snark::PreparedVerifyingKey pvk(snark::load_verifying_key(c.vk));
  std::unique_ptr<NullifierRegistry> registry;
  if (!c.registry.empty()) registry = std::make_unique<NullifierRegistry>(c.registry);
  const auto r = pipeline::submit(bundle, pvk, registry.get());
  json j;
  j["molecule_id"] = bundle.molecule_id;
  j["task_id"] = bundle.task_id;
  j["verified"] = r.verified;
  j["result"] = r.result ? json(*r.result) : json(nullptr);
  j["nullifier_status"] = r.nullifier_status ? json(to_string(*r.nullifier_status)) : json(nullptr);
  const bool ok = registry ? r.success() : (r.verified && r.result == 1);
  j["accepted"] = ok;
  emit(j.dump(2), c.out);
  return ok ? kOk : kFalse;
}

int cmd_batch(const Common& c, const std::string& input, bool include_bundles) {
  auto rng = make_rng(c);
  LoadResult lr = load_records(input);
  filter_task(c, lr);
  const auto keys = load_or_generate_keys(c, *rng);
  std::unique_ptr<NullifierRegistry> registry;
  if (!c.registry.empty()) registry = std::make_unique<NullifierRegistry>(c.registry);
  auto report = pipeline::run_batch(lr.records, keys, run_options(c), registry.get(), c.workers, rng_factory(c));
  report.ingest_rejects = lr.rejects;
  json j = report.to_json(include_bundles);
  if (!lr.warnings.empty()) {
    json w = json::array();
    for (const auto& x : lr.warnings) w.push_back({{"line", x.line}, {"message", x.message}});
    j["ingest_warnings"] = w;
  }
  emit(j.dump(2), c.out);
  return kOk;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size() || v == 0) {
      throw ParameterError("--sizes must be a comma-separated list of positive integers");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError("--sizes is empty");
  return out;
}

int cmd_bench(const Common& c, const std::string& sizes, unsigned repeats, const std::string& csv,
              const std::string& scratch) {
  auto rng = make_rng(c);
  const auto keys = load_or_generate_keys(c, *rng);
  pipeline::BenchOptions o;
  o.sizes = parse_sizes(sizes);
  o.repeats = repeats;
  o.workers = c.workers;
  o.task = task_option(c).value_or(TaskType::kBinary);
  o.scratch_dir = scratch;
  const auto report = pipeline::bench(keys, o, *rng, rng_factory(c));
  emit(report.to_json().dump(2), c.out);
  if (!csv.empty()) emit(report.to_csv(), csv);
  return kOk;
}

int cmd_analyze(const Common& c) {
  const auto report = circuit::analyze(circuit::eval_circuit());
  emit(report.to_json(), c.out);
  return kOk;
}

int cmd_security(const Common& c, const std::string& scratch) {
  auto rng = make_rng(c);
  const auto keys = load_or_generate_keys(c, *rng);
  pipeline::SecurityOptions o;
  o.task = task_option(c).value_or(TaskType::kBinary);
  o.scratch_dir = scratch;
  const auto report = pipeline::security_suite(keys, o, *rng);
  emit(report.to_json().dump(2), c.out);
  return report.passed() ? kOk : kFalse;
}

int cmd_validate_smiles(const Common& c, const std::string& text) {
  const auto r = smiles::validate(text);
  json j;
  j["valid"] = r.valid;
  json errors = json::array(), warnings = json::array();
  for (const auto& e : r.errors) errors.push_back({{"position", e.position}, {"message", e.message}});
  for (const auto& w : r.warnings) warnings.push_back({{"position", w.position}, {"message", w.message}});
  j["errors"] = errors;
  j["warnings"] = warnings;
  emit(j.dump(2), c.out);
  return r.valid ? kOk : kFalse;
}

int cmd_nullifiers(const Common& c, const std::string& action, const std::string& path) {
  const auto entries = read_nullifier_log(path);
  if (action == "count") {
    emit(std::to_string(entries.size()), c.out);
    return kOk;
  }
  std::string text;
  for (const auto& n : entries) text += n.to_hex() + '\n';
  if (!text.empty()) text.pop_back();
  emit(text, c.out);
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Zero-knowledge attestation of molecule evaluation results"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "toxizk 0.1.0");
  Common c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tasktype", c.tasktype, "binary | regression")->check(CLI::IsMember({"binary", "regression"}));
    sub->add_option("--thresholds", c.thresholds, "Threshold overrides: inline JSON or a JSON file");
    sub->add_option("--workers", c.workers, "Parallel workers")->check(CLI::Range(1u, 1024u));
    sub->add_option("--out", c.out, "Write the report here instead of stdout");
    sub->add_option("--pk", c.pk, "Proving key file");
    sub->add_option("--vk", c.vk, "Verifying key file (snarkjs JSON)");
    sub->add_option("--seed", c.seed, "Deterministic randomness (testing only)");
  };
  auto add_registry = [&](CLI::App* sub) { sub->add_option("--registry", c.registry, "Nullifier log"); };
  auto add_salt_key = [&](CLI::App* sub) {
    sub->add_option("--salt-key", c.salt_key, "64 hex digits; derive salts per (molecule_id, task_id)");
  };

  auto* setup = app.add_subcommand("setup", "Generate a proving and verifying key");
  setup->add_option("--pk", c.pk, "Proving key output")->required();
  setup->add_option("--vk", c.vk, "Verifying key output")->required();
  setup->add_option("--out", c.out, "Summary output");
  setup->add_option("--seed", c.seed, "Deterministic randomness (testing only)");

  std::string record_path;
  auto* prove = app.add_subcommand("prove", "Prove one record and write its bundle");
  add_common(prove);
  add_registry(prove);
  add_salt_key(prove);
  prove->add_option("--record", record_path, "File with one JSON record")->required()->check(CLI::ExistingFile);

  std::string bundle_path;
  auto* verify = app.add_subcommand("verify", "Verify a bundle and spend its nullifier");
  verify->add_option("--vk", c.vk, "Verifying key")->required();
  verify->add_option("--bundle", bundle_path, "Proof bundle")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", c.out, "Report output");
  add_registry(verify);

  std::string input;
  bool include_bundles = false;
  auto* batch = app.add_subcommand("batch", "Run the pipeline over a JSON Lines file");
  add_common(batch);
  add_registry(batch);
  add_salt_key(batch);
  batch->add_option("--input", input, "JSON Lines records")->required()->check(CLI::ExistingFile);
  batch->add_flag("--bundles", include_bundles, "Embed proof bundles in the report");

  std::string sizes = "10,50,100", csv, scratch;
  unsigned repeats = 3;
  auto* bench = app.add_subcommand("bench", "Throughput benchmark on synthetic passing corpora");
  add_common(bench);
  bench->add_option("--sizes", sizes, "Comma-separated corpus sizes");
  bench->add_option("--repeats", repeats, "Runs per size")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv, "Also write a CSV table here");
  bench->add_option("--scratch", scratch, "Directory for per-run registries");

  auto* analyze = app.add_subcommand("analyze", "Constraint statistics of the evaluation circuit");
  analyze->add_option("--out", c.out, "Report output");

  auto* security = app.add_subcommand("security-suite", "Completeness, soundness, hiding and attack scenarios");
  add_common(security);
  security->add_option("--scratch", scratch, "Directory for the scratch registry");

  std::string smiles_text;
  auto* vsmiles = app.add_subcommand("validate-smiles", "Grammar check of a SMILES string");
  vsmiles->add_option("smiles", smiles_text, "SMILES string")->required();
  vsmiles->add_option("--out", c.out, "Report output");

  std::string action, log_path;
  auto* nulls = app.add_subcommand("nullifiers", "Inspect a nullifier log");
  nulls->add_option("action", action, "list | count")->required()->check(CLI::IsMember({"list", "count"}));
  nulls->add_option("path", log_path, "Nullifier log")->required()->check(CLI::ExistingFile);
  nulls->add_option("--out", c.out, "Output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*setup) return cmd_setup(c);
    if (*prove) return cmd_prove(c, record_path);
    if (*verify) return cmd_verify(c, bundle_path);
    if (*batch) return cmd_batch(c, input, include_bundles);
    if (*bench) return cmd_bench(c, sizes, repeats, csv, scratch);
    if (*analyze) return cmd_analyze(c);
    if (*security) return cmd_security(c, scratch);
    if (*vsmiles) return cmd_validate_smiles(c, smiles_text);
    if (*nulls) return cmd_nullifiers(c, action, log_path);
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const WitnessError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const IoError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const CorruptionError& e) {
    std::cerr << "data error: line " << e.line() << ": " << e.what() << '\n';
    return kData;
  } catch (const Error& e) {
    std::cerr << "crypto error: " << e.what() << '\n';
    return kCrypto;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCrypto;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
