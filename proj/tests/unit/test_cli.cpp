// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(TOXIZK_CLI) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kPass =
    R"({"molecule_id":"m1","task_id":"clintox","task_type":"binary","smiles":"CCO","safety":"non-toxic","qed":0.7,"sas":3.0,"lipinski_violations":0,"similarity":0.6})";
const char* kFail =
    R"({"molecule_id":"m2","task_id":"clintox","task_type":"binary","smiles":"CCN","safety":"toxic","qed":0.7,"sas":3.0,"lipinski_violations":0,"similarity":0.6})";

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("toxizk_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const auto r = run("setup --seed 5 --pk " + (dir_ / "pk.bin").string() + " --vk " + (dir_ / "vk.json").string());
    ASSERT_EQ(r.code, 0);
    write(dir_ / "pass.json", kPass);
    const auto p = run("prove" + pk() + " --seed 6 --record " + (dir_ / "pass.json").string() + " --out " +
                       (dir_ / "bundle.json").string());
    ASSERT_EQ(p.code, 0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string pk() { return " --pk " + (dir_ / "pk.bin").string() + " --vk " + (dir_ / "vk.json").string(); }
  static fs::path path(const std::string& name) { return dir_ / name; }

  static inline fs::path dir_;
};

}  // namespace

TEST(CliBasics, ValidateSmiles) {
  EXPECT_EQ(run("validate-smiles CCO").code, 0);
  const auto bad = run("validate-smiles C1CC");
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(json::parse(bad.out)["valid"].get<bool>());
}

TEST(CliBasics, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify").code, 2);
  EXPECT_EQ(run("nullifiers drop /dev/null").code, 2);
  EXPECT_EQ(run("analyze --bogus").code, 2);
}

TEST(CliBasics, AnalyzeReport) {
  const auto r = run("analyze");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["public_inputs"], 6);
  EXPECT_EQ(j["private_inputs"], 7);
  EXPECT_EQ(j["public_outputs"], 3);
  EXPECT_GE(j["total_constraints"].get<int>(), 500);
}

TEST_F(Cli, HonestBundleVerifies) {
  const auto r = run("verify --vk " + path("vk.json").string() + " --bundle " + path("bundle.json").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["accepted"].get<bool>());
}

TEST_F(Cli, SecondVerifyWithSharedRegistryIsReplay) {
  const std::string cmd = "verify --vk " + path("vk.json").string() + " --bundle " + path("bundle.json").string() +
                          " --registry " + path("replay.log").string();
  EXPECT_EQ(run(cmd).code, 0);
  const auto again = run(cmd);
  EXPECT_EQ(again.code, 1);
  EXPECT_EQ(json::parse(again.out)["nullifier_status"], "replay");
  EXPECT_EQ(run("nullifiers count " + path("replay.log").string()).out, "1\n");
  const auto list = run("nullifiers list " + path("replay.log").string());
  EXPECT_EQ(list.code, 0);
  EXPECT_EQ(list.out.rfind("0x", 0), 0u);
}

TEST_F(Cli, TamperedBundleIsFalseMalformedIsDecodeError) {
  auto b = json::parse(read(path("bundle.json")));
  auto& pv = b["public_values"];
  pv[1] = "0x00000000000000000000000000000000000000000000000000000000000f4241";
  write(path("tampered.json"), b.dump());
  EXPECT_EQ(run("verify --vk " + path("vk.json").string() + " --bundle " + path("tampered.json").string()).code, 1);

  write(path("garbage.json"), "{\"public_values\": [1,2]}");
  EXPECT_EQ(run("verify --vk " + path("vk.json").string() + " --bundle " + path("garbage.json").string()).code, 4);
  write(path("badvk.json"), "{\"protocol\":\"groth16\"}");
  EXPECT_EQ(run("verify --vk " + path("badvk.json").string() + " --bundle " + path("bundle.json").string()).code, 4);
}

TEST_F(Cli, ProveDataErrors) {
  write(path("bad_record.json"),
        R"({"molecule_id":"m","task_id":"x","task_type":"binary","safety":"toxic","qed":1.7,"sas":2,"lipinski_violations":0,"similarity":0.5})");
  EXPECT_EQ(run("prove" + pk() + " --record " + path("bad_record.json").string()).code, 3);
  write(path("two.jsonl"), std::string(kPass) + "\n" + kFail + "\n");
  EXPECT_EQ(run("prove" + pk() + " --record " + path("two.jsonl").string()).code, 3);
  EXPECT_EQ(run("prove" + pk() + " --record " + path("pass.json").string() + " --salt-key zz").code, 2);
  EXPECT_EQ(run("prove --pk " + path("pk.bin").string() + " --record " + path("pass.json").string()).code, 2);
}

TEST_F(Cli, BatchSkipsMalformedLine) {
  write(path("batch.jsonl"), std::string(kPass) + "\nnot json at all\n" + kFail + "\n");
  const auto r = run("batch" + pk() + " --seed 9 --workers 2 --input " + path("batch.jsonl").string() +
                     " --registry " + path("batch.log").string() + " --out " + path("report.json").string());
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(read(path("report.json")));
  EXPECT_EQ(j["summary"]["attempted"], 3);
  EXPECT_EQ(j["summary"]["succeeded"], 1);
  EXPECT_EQ(j["summary"]["failed"], 1);
  EXPECT_EQ(j["summary"]["rejected"], 1);
  ASSERT_EQ(j["ingest_rejects"].size(), 1u);
  EXPECT_EQ(j["ingest_rejects"][0]["line"], 2);
  EXPECT_EQ(j["molecules"].size(), 2u);
  EXPECT_EQ(run("nullifiers count " + path("batch.log").string()).out, "2\n");
}

TEST_F(Cli, BatchRerunWithSaltKeyIsReplay) {
  write(path("rerun.jsonl"), std::string(kPass) + "\n" + kFail + "\n");
  const std::string key(64, 'a');
  const std::string cmd = "batch" + pk() + " --input " + path("rerun.jsonl").string() + " --registry " +
                          path("rerun.log").string() + " --salt-key " + key;
  const auto first = json::parse(run(cmd).out);
  EXPECT_EQ(first["summary"]["succeeded"], 1);
  const auto second = json::parse(run(cmd).out);
  EXPECT_EQ(second["summary"]["succeeded"], 0);
  EXPECT_EQ(second["summary"]["replayed"], 2);
}

TEST_F(Cli, TaskTypeFilterAndThresholds) {
  write(path("filter.jsonl"), std::string(kPass) + "\n");
  const auto r = run("batch" + pk() + " --tasktype regression --input " + path("filter.jsonl").string());
  EXPECT_EQ(r.code, 3);
  const auto strict = run("batch" + pk() + " --tasktype binary --thresholds '{\"qed\":0.9}' --input " +
                          path("filter.jsonl").string());
  ASSERT_EQ(strict.code, 0);
  EXPECT_EQ(json::parse(strict.out)["summary"]["failed"], 1);
  EXPECT_EQ(run("batch" + pk() + " --thresholds '{\"qed\":0.9}' --input " + path("filter.jsonl").string()).code, 2);
}

TEST_F(Cli, CorruptRegistryIsDataError) {
  write(path("corrupt.log"), "zzzz\n");
  EXPECT_EQ(run("nullifiers count " + path("corrupt.log").string()).code, 3);
}
