// SPDX-License-Identifier: Apache-2.0
#include "toxizk/pipeline/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "toxizk/errors.hpp"
#include "toxizk/pipeline/corpus.hpp"

namespace toxizk::pipeline {

Stat Stat::of(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

const BenchRow* BenchReport::row(std::size_t size) const {
  for (const auto& r : rows) {
    if (r.size == size) return &r;
  }
  return nullptr;
}

BenchReport bench(const Keys& keys, const BenchOptions& options, RandomSource& corpus_rng, const RngFactory& rng) {
  if (options.sizes.empty() || options.repeats == 0) throw ParameterError("bench needs sizes and repeats");
  const std::size_t max_size = *std::max_element(options.sizes.begin(), options.sizes.end());
  if (max_size == 0) throw ParameterError("bench sizes must be positive");
  CorpusGenerator gen(corpus_rng);
  const auto corpus = gen.passing(max_size, options.task, "bench");
  const auto scratch = options.scratch_dir.empty() ? std::filesystem::temp_directory_path() : options.scratch_dir;
  std::filesystem::create_directories(scratch);

  BenchReport report;
  report.workers = options.workers;
  for (std::size_t size : options.sizes) {
    const std::vector<EvaluationRecord> records(corpus.begin(), corpus.begin() + static_cast<std::ptrdiff_t>(size));
    std::vector<double> total, per_mol, thr, rate;
    BenchRow row;
    row.size = size;
    row.repeats = options.repeats;
    for (unsigned rep = 0; rep < options.repeats; ++rep) {
      const auto path = scratch / ("bench_registry_" + std::to_string(size) + "_" + std::to_string(rep) + ".log");
      std::filesystem::remove(path);
      RunReport rr;
      {
        NullifierRegistry registry(path);
        rr = run_batch(records, keys, RunOptions{}, &registry, options.workers, rng);
      }
      std::filesystem::remove(path);
      BenchRun run;
      run.size = size;
      run.repeat = rep;
      run.total_seconds = rr.total_seconds;
      run.per_molecule_seconds = rr.per_molecule_seconds();
      run.throughput = rr.throughput();
      run.success_rate = rr.success_rate();
      run.peak_memory_mb = rr.peak_memory_mb;
      const double n = static_cast<double>(rr.molecules.size());
      for (const auto& m : rr.molecules) {
        run.phase_mean.normalize += m.timings.normalize / n;
        run.phase_mean.precheck += m.timings.precheck / n;
        run.phase_mean.witness += m.timings.witness / n;
        run.phase_mean.prove += m.timings.prove / n;
        run.phase_mean.verify += m.timings.verify / n;
        run.phase_mean.nullifier += m.timings.nullifier / n;
      }
      const double reps = static_cast<double>(options.repeats);
      row.phase_mean.normalize += run.phase_mean.normalize / reps;
      row.phase_mean.precheck += run.phase_mean.precheck / reps;
      row.phase_mean.witness += run.phase_mean.witness / reps;
      row.phase_mean.prove += run.phase_mean.prove / reps;
      row.phase_mean.verify += run.phase_mean.verify / reps;
      row.phase_mean.nullifier += run.phase_mean.nullifier / reps;
      total.push_back(run.total_seconds);
      per_mol.push_back(run.per_molecule_seconds);
      thr.push_back(run.throughput);
      rate.push_back(run.success_rate);
      if (run.peak_memory_mb) row.peak_memory_mb = std::max(row.peak_memory_mb.value_or(0.0), *run.peak_memory_mb);
      report.runs.push_back(run);
    }
    row.total_seconds = Stat::of(total);
    row.per_molecule_seconds = Stat::of(per_mol);
    row.throughput = Stat::of(thr);
    row.success_rate = Stat::of(rate);
    report.rows.push_back(row);
  }
  return report;
}

nlohmann::ordered_json BenchReport::to_json() const {
  auto stat = [](const Stat& s) {
    return nlohmann::ordered_json{{"mean", s.mean}, {"stddev", s.stddev}, {"cv", s.cv()}};
  };
  nlohmann::ordered_json j;
  j["workers"] = workers;
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["molecules"] = r.size;
    o["repeats"] = r.repeats;
    o["total_time_s"] = stat(r.total_seconds);
    o["time_per_molecule_s"] = stat(r.per_molecule_seconds);
    o["throughput_mol_per_s"] = stat(r.throughput);
    o["success_rate"] = stat(r.success_rate);
    o["peak_memory_mb"] = r.peak_memory_mb ? nlohmann::ordered_json(*r.peak_memory_mb) : nlohmann::ordered_json(nullptr);
    o["phase_mean_s"] = {{"witness", r.phase_mean.witness},
                         {"prove", r.phase_mean.prove},
                         {"verify", r.phase_mean.verify},
                         {"nullifier", r.phase_mean.nullifier},
                         {"sum", r.phase_mean.total()}};
    rs.push_back(o);
  }
  j["rows"] = rs;
  nlohmann::ordered_json runs_j = nlohmann::ordered_json::array();
  for (const auto& r : runs) {
    runs_j.push_back({{"molecules", r.size},
                      {"repeat", r.repeat},
                      {"total_time_s", r.total_seconds},
                      {"time_per_molecule_s", r.per_molecule_seconds},
                      {"throughput_mol_per_s", r.throughput},
                      {"success_rate", r.success_rate}});
  }
  j["runs"] = runs_j;
  return j;
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "molecules,avg_total_time_s,total_time_std_s,time_per_molecule_s,time_per_molecule_std_s,"
         "throughput_mol_per_s,throughput_std,peak_memory_mb,success_rate_percent,"
         "witness_s,prove_s,verify_s,nullifier_s\n";
  out << std::setprecision(6) << std::fixed;
  for (const auto& r : rows) {
    out << r.size << ',' << r.total_seconds.mean << ',' << r.total_seconds.stddev << ','
        << r.per_molecule_seconds.mean << ',' << r.per_molecule_seconds.stddev << ',' << r.throughput.mean << ','
        << r.throughput.stddev << ',';
    if (r.peak_memory_mb) out << *r.peak_memory_mb;
    out << ',' << 100.0 * r.success_rate.mean << ',' << r.phase_mean.witness << ',' << r.phase_mean.prove << ','
        << r.phase_mean.verify << ',' << r.phase_mean.nullifier << '\n';
  }
  return out.str();
}

}  // namespace toxizk::pipeline
