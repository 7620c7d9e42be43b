// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sys/resource.h>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "toxizk/errors.hpp"
#include "toxizk/nullifier_registry.hpp"

using namespace toxizk;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("toxizk_reg_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

std::string hex(std::uint64_t v) { return Fr::from_u64(v).to_hex(); }

}  // namespace

TEST(NullifierRegistry, AbsentFileIsEmpty) {
  TempDir d;
  NullifierRegistry r(d.file("n.log"));
  EXPECT_EQ(r.size(), 0u);
  EXPECT_TRUE(fs::exists(d.file("n.log")));
}

TEST(NullifierRegistry, LoadsValidLines) {
  TempDir d;
  write_file(d.file("n.log"), hex(1) + "\n" + hex(2) + "\n" + hex(3) + "\n");
  NullifierRegistry r(d.file("n.log"));
  EXPECT_EQ(r.size(), 3u);
  EXPECT_TRUE(r.contains(Fr::from_u64(2)));
  EXPECT_TRUE(r.warnings().empty());
}

TEST(NullifierRegistry, FreshThenReplay) {
  TempDir d;
  NullifierRegistry r(d.file("n.log"));
  EXPECT_EQ(r.check_and_insert(Fr::from_u64(42)), NullifierStatus::kFresh);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(r.check_and_insert(Fr::from_u64(42)), NullifierStatus::kReplay);
  EXPECT_EQ(r.size(), 1u);
}

TEST(NullifierRegistry, ReopenReproducesSet) {
  TempDir d;
  SeededRandom rng(4);
  std::set<U256> oracle;
  {
    NullifierRegistry r(d.file("n.log"));
    for (int i = 0; i < 200; ++i) {
      const Fr v = Fr::random(rng);
      oracle.insert(v.to_u256());
      r.check_and_insert(v);
    }
  }
  NullifierRegistry r(d.file("n.log"));
  std::set<U256> loaded;
  for (const auto& v : r.entries()) loaded.insert(v.to_u256());
  EXPECT_EQ(loaded, oracle);
  EXPECT_EQ(read_nullifier_log(d.file("n.log")).size(), oracle.size());
}

TEST(NullifierRegistry, CorruptLineNamed) {
  TempDir d;
  write_file(d.file("n.log"), hex(1) + "\nnot-hex\n" + hex(3) + "\n");
  try {
    NullifierRegistry r(d.file("n.log"));
    FAIL() << "expected CorruptionError";
  } catch (const CorruptionError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(NullifierRegistry, DuplicateLineIsCorruption) {
  TempDir d;
  write_file(d.file("n.log"), hex(1) + "\n" + hex(1) + "\n");
  EXPECT_THROW(NullifierRegistry r(d.file("n.log")), CorruptionError);
}

TEST(NullifierRegistry, TornFinalLineTruncated) {
  TempDir d;
  write_file(d.file("n.log"), hex(1) + "\n" + hex(2).substr(0, 20));
  {
    NullifierRegistry r(d.file("n.log"));
    EXPECT_EQ(r.size(), 1u);
    ASSERT_EQ(r.warnings().size(), 1u);
    EXPECT_EQ(r.check_and_insert(Fr::from_u64(2)), NullifierStatus::kFresh);
  }
  NullifierRegistry again(d.file("n.log"));
  EXPECT_EQ(again.size(), 2u);
  EXPECT_TRUE(again.warnings().empty());
}

TEST(NullifierRegistry, ConcurrentInsertsExactlyOnce) {
  TempDir d;
  NullifierRegistry r(d.file("n.log"));
  constexpr int kThreads = 8;
  constexpr int kDistinct = 1000;
  std::atomic<int> fresh{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t) {
    pool.emplace_back([&] {
      // Every thread attempts every value.
      for (int i = 0; i < kDistinct; ++i) {
        if (r.check_and_insert(Fr::from_u64(static_cast<std::uint64_t>(i))) == NullifierStatus::kFresh) ++fresh;
      }
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(fresh.load(), kDistinct);
  EXPECT_EQ(read_nullifier_log(d.file("n.log")).size(), static_cast<std::size_t>(kDistinct));
}

TEST(NullifierRegistry, FailedAppendRollsBack) {
  TempDir d;
  NullifierRegistry r(d.file("n.log"));
  ASSERT_EQ(r.check_and_insert(Fr::from_u64(1)), NullifierStatus::kFresh);
  const auto size = fs::file_size(d.file("n.log"));
  auto old_handler = std::signal(SIGXFSZ, SIG_IGN);
  rlimit old{};
  ::getrlimit(RLIMIT_FSIZE, &old);
  rlimit lim = old;
  lim.rlim_cur = size;
  ASSERT_EQ(::setrlimit(RLIMIT_FSIZE, &lim), 0);
  EXPECT_THROW(r.check_and_insert(Fr::from_u64(2)), IoError);
  ::setrlimit(RLIMIT_FSIZE, &old);
  std::signal(SIGXFSZ, old_handler);
  EXPECT_FALSE(r.contains(Fr::from_u64(2)));
  EXPECT_EQ(r.size(), 1u);
  EXPECT_EQ(r.check_and_insert(Fr::from_u64(2)), NullifierStatus::kFresh);
  EXPECT_EQ(read_nullifier_log(d.file("n.log")).size(), 2u);
}
