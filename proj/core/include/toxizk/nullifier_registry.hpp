// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "toxizk/field/prime_field.hpp"

namespace toxizk {

enum class NullifierStatus { kFresh, kReplay };
const char* to_string(NullifierStatus s);

/// Spent-nullifier set backed by an append-only log of 0x-hex lines.
/// check_and_insert is serialised internally; one writer per file.
class NullifierRegistry {
 public:
  /// Loads `path`, creating it if absent. A final line without a newline is
  /// a torn write: it is truncated away and reported in warnings(). Any other
  /// malformed or duplicate line raises CorruptionError with its line number.
  explicit NullifierRegistry(std::filesystem::path path);
  ~NullifierRegistry();

  NullifierRegistry(const NullifierRegistry&) = delete;
  NullifierRegistry& operator=(const NullifierRegistry&) = delete;

  /// Fresh: `n` was absent and has been appended and flushed to disk.
  /// Replay: already present, nothing changes. Throws IoError if the append
  /// fails, leaving the in-memory set untouched.
  NullifierStatus check_and_insert(const Fr& n);

  bool contains(const Fr& n) const;
  std::size_t size() const;
  /// Entries in log order.
  std::vector<Fr> entries() const;
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  void load();

  std::filesystem::path path_;
  int fd_ = -1;
  mutable std::mutex mu_;
  std::set<U256> set_;
  std::vector<Fr> order_;
  std::vector<std::string> warnings_;
};

/// Read-only load of a registry log (same validation, no repair).
std::vector<Fr> read_nullifier_log(const std::filesystem::path& path);

}  // namespace toxizk
