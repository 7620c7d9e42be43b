// SPDX-License-Identifier: Apache-2.0
#include "toxizk/nullifier_registry.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "toxizk/errors.hpp"

namespace toxizk {
namespace {

struct Parsed {
  std::vector<Fr> entries;
  std::size_t valid_bytes = 0;  // prefix ending at the last newline
  bool torn = false;
};

Parsed parse_log(const std::string& data, const std::filesystem::path& path) {
  Parsed out;
  std::set<U256> seen;
  std::size_t pos = 0;
  std::size_t line = 0;
  while (pos < data.size()) {
    const std::size_t nl = data.find('\n', pos);
    if (nl == std::string::npos) {
      out.torn = true;
      break;
    }
    ++line;
    const std::string_view text(data.data() + pos, nl - pos);
    Fr v;
    try {
      v = Fr::from_hex(text);
    } catch (const DecodeError& e) {
      throw CorruptionError(path.string() + ":" + std::to_string(line) + ": " + e.what(), line);
    }
    if (!seen.insert(v.to_u256()).second) {
      throw CorruptionError(path.string() + ":" + std::to_string(line) + ": duplicate nullifier", line);
    }
    out.entries.push_back(v);
    pos = nl + 1;
    out.valid_bytes = pos;
  }
  return out;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const char* to_string(NullifierStatus s) { return s == NullifierStatus::kFresh ? "fresh" : "replay"; }

NullifierRegistry::NullifierRegistry(std::filesystem::path path) : path_(std::move(path)) { load(); }

NullifierRegistry::~NullifierRegistry() {
  if (fd_ >= 0) ::close(fd_);
}

void NullifierRegistry::load() {
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError("cannot open " + path_.string() + ": " + std::strerror(errno));
  const std::string data = read_all(path_);
  Parsed parsed = parse_log(data, path_);
  if (parsed.torn) {
    if (::ftruncate(fd_, static_cast<off_t>(parsed.valid_bytes)) != 0) {
      throw IoError("cannot truncate torn line in " + path_.string() + ": " + std::strerror(errno));
    }
    warnings_.push_back("truncated torn final line (" + std::to_string(data.size() - parsed.valid_bytes) +
                        " bytes) in " + path_.string());
  }
  order_ = std::move(parsed.entries);
  for (const auto& v : order_) set_.insert(v.to_u256());
}

NullifierStatus NullifierRegistry::check_and_insert(const Fr& n) {
  const std::lock_guard lock(mu_);
  const U256 key = n.to_u256();
  if (!set_.insert(key).second) return NullifierStatus::kReplay;
  const std::string line = n.to_hex() + "\n";
  const ssize_t written = ::write(fd_, line.data(), line.size());
  if (written != static_cast<ssize_t>(line.size()) || ::fdatasync(fd_) != 0) {
    const int err = errno;
    set_.erase(key);
    if (written > 0) {
      // Drop the partial line so the log stays well-formed.
      const off_t end = ::lseek(fd_, 0, SEEK_END);
      if (end >= written) (void)!::ftruncate(fd_, end - written);
    }
    throw IoError("failed to append nullifier to " + path_.string() + ": " + std::strerror(err));
  }
  order_.push_back(n);
  return NullifierStatus::kFresh;
}

bool NullifierRegistry::contains(const Fr& n) const {
  const std::lock_guard lock(mu_);
  return set_.count(n.to_u256()) != 0;
}

std::size_t NullifierRegistry::size() const {
  const std::lock_guard lock(mu_);
  return set_.size();
}

std::vector<Fr> NullifierRegistry::entries() const {
  const std::lock_guard lock(mu_);
  return order_;
}

std::vector<Fr> read_nullifier_log(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  Parsed parsed = parse_log(read_all(path), path);
  return std::move(parsed.entries);
}

}  // namespace toxizk
