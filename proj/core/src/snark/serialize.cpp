// SPDX-License-Identifier: Apache-2.0
#include "toxizk/snark/serialize.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "toxizk/errors.hpp"

namespace toxizk::snark {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr char kPkMagic[8] = {'T', 'X', 'Z', 'K', 'P', 'K', '0', '1'};
constexpr std::uint64_t kMaxVector = std::uint64_t{1} << 24;

// ---- binary points ----

template <class F>
void put_field(std::vector<std::uint8_t>& out, const F& x) {
  const auto b = x.to_bytes();
  out.insert(out.end(), b.begin(), b.end());
}

void put_fq2(std::vector<std::uint8_t>& out, const Fq2& x) {
  put_field(out, x.c0);
  put_field(out, x.c1);
}

void put_g1(std::vector<std::uint8_t>& out, const G1Affine& p) {
  if (p.infinity) {
    out.insert(out.end(), 64, 0);
    return;
  }
  put_field(out, p.x);
  put_field(out, p.y);
}

void put_g2(std::vector<std::uint8_t>& out, const G2Affine& p) {
  if (p.infinity) {
    out.insert(out.end(), 128, 0);
    return;
  }
  put_fq2(out, p.x);
  put_fq2(out, p.y);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (data_.size() - pos_ < n) throw DecodeError("unexpected end of data");
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  Fq fq() { return Fq::from_bytes(take(32).first<32>()); }
  Fq2 fq2() {
    const Fq c0 = fq();
    return {c0, fq()};
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

bool all_zero(std::span<const std::uint8_t> s) {
  return std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; });
}

G1Affine checked_g1(const G1Affine& p) {
  if (!is_on_curve<G1Curve>(p)) throw DecodeError("G1 point not on curve");
  return p;
}

G2Affine checked_g2(const G2Affine& p, bool subgroup) {
  if (!is_on_curve<G2Curve>(p)) throw DecodeError("G2 point not on curve");
  if (subgroup && !in_prime_subgroup(p)) throw DecodeError("G2 point not in prime-order subgroup");
  return p;
}

G1Affine read_g1(Reader& r) {
  auto raw = r.take(64);
  if (all_zero(raw)) return {};
  Reader sub(raw);
  const Fq x = sub.fq();
  return checked_g1({x, sub.fq(), false});
}

G2Affine read_g2(Reader& r, bool subgroup) {
  auto raw = r.take(128);
  if (all_zero(raw)) return {};
  Reader sub(raw);
  const Fq2 x = sub.fq2();
  return checked_g2({x, sub.fq2(), false}, subgroup);
}

// ---- JSON points ----

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DecodeError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
F decode_field(const json& j) {
  if (!j.is_string()) throw DecodeError("field element must be a string");
  const auto& s = j.get_ref<const std::string&>();
  if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return F::from_hex(s);
  const auto v = U256::from_dec(s);
  if (!v) throw DecodeError("invalid decimal field element");
  if (!F::is_canonical(*v)) throw DecodeError("field element not below modulus");
  return F::from_canonical(*v);
}

std::string zero_hex() { return Fq::zero().to_hex(); }

ordered_json arr(std::initializer_list<ordered_json> items) {
  ordered_json a = ordered_json::array();
  for (const auto& x : items) a.push_back(x);
  return a;
}

ordered_json g1_hex(const G1Affine& p) {
  if (p.infinity) return arr({zero_hex(), zero_hex()});
  return arr({p.x.to_hex(), p.y.to_hex()});
}

ordered_json g2_hex(const G2Affine& p) {
  if (p.infinity) return arr({arr({zero_hex(), zero_hex()}), arr({zero_hex(), zero_hex()})});
  return arr({arr({p.x.c0.to_hex(), p.x.c1.to_hex()}), arr({p.y.c0.to_hex(), p.y.c1.to_hex()})});
}

// Accepts [x, y] or snarkjs [x, y, z] with z in {0, 1}.
G1Affine g1_from_json(const json& j) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw DecodeError("G1 point must be [x, y]");
  const Fq x = decode_field<Fq>(j[0]);
  const Fq y = decode_field<Fq>(j[1]);
  if (j.size() == 3) {
    const Fq z = decode_field<Fq>(j[2]);
    if (z.is_zero()) return {};
    if (z != Fq::one()) throw DecodeError("G1 point must be normalised (z = 1)");
  } else if (x.is_zero() && y.is_zero()) {
    return {};
  }
  return checked_g1({x, y, false});
}

Fq2 fq2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DecodeError("Fq2 element must be [c0, c1]");
  return {decode_field<Fq>(j[0]), decode_field<Fq>(j[1])};
}

G2Affine g2_from_json(const json& j, bool subgroup) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 3)) throw DecodeError("G2 point must be [x, y]");
  const Fq2 x = fq2_from_json(j[0]);
  const Fq2 y = fq2_from_json(j[1]);
  if (j.size() == 3) {
    const Fq2 z = fq2_from_json(j[2]);
    if (z.is_zero()) return {};
    if (z != Fq2::one()) throw DecodeError("G2 point must be normalised (z = 1)");
  } else if (x.is_zero() && y.is_zero()) {
    return {};
  }
  return checked_g2({x, y, false}, subgroup);
}

ordered_json g1_dec(const G1Affine& p) {
  if (p.infinity) return arr({"0", "1", "0"});
  return arr({p.x.to_u256().to_dec(), p.y.to_u256().to_dec(), "1"});
}

ordered_json g2_dec(const G2Affine& p) {
  if (p.infinity) return arr({arr({"0", "0"}), arr({"1", "0"}), arr({"0", "0"})});
  return arr({arr({p.x.c0.to_u256().to_dec(), p.x.c1.to_u256().to_dec()}),
              arr({p.y.c0.to_u256().to_dec(), p.y.c1.to_u256().to_dec()}), arr({"1", "0"})});
}

// ---- proving key stream helpers ----

void write_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>(v >> (8 * i));
  out.write(b, 8);
}

void write_bytes(std::ostream& out, const std::vector<std::uint8_t>& v) {
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size()));
}

std::vector<std::uint8_t> read_exact(std::istream& in, std::size_t n) {
  std::vector<std::uint8_t> buf(n);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw DecodeError("proving key truncated");
  return buf;
}

std::uint64_t read_u64(std::istream& in) {
  const auto b = read_exact(in, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
  return v;
}

void write_g1_vec(std::ostream& out, const std::vector<G1Affine>& v) {
  write_u64(out, v.size());
  std::vector<std::uint8_t> buf;
  buf.reserve(v.size() * 64);
  for (const auto& p : v) put_g1(buf, p);
  write_bytes(out, buf);
}

void write_g2_vec(std::ostream& out, const std::vector<G2Affine>& v) {
  write_u64(out, v.size());
  std::vector<std::uint8_t> buf;
  buf.reserve(v.size() * 128);
  for (const auto& p : v) put_g2(buf, p);
  write_bytes(out, buf);
}

std::vector<G1Affine> read_g1_vec(std::istream& in, std::uint64_t expected) {
  const std::uint64_t n = read_u64(in);
  if (n != expected) throw DecodeError("proving key vector has unexpected length");
  const auto raw = read_exact(in, n * 64);
  Reader r(raw);
  std::vector<G1Affine> out(n);
  for (auto& p : out) p = read_g1(r);
  return out;
}

std::vector<G2Affine> read_g2_vec(std::istream& in, std::uint64_t expected) {
  const std::uint64_t n = read_u64(in);
  if (n != expected) throw DecodeError("proving key vector has unexpected length");
  const auto raw = read_exact(in, n * 128);
  Reader r(raw);
  std::vector<G2Affine> out(n);
  for (auto& p : out) p = read_g2(r, false);
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Fr decode_fr(const json& j) { return decode_field<Fr>(j); }

std::vector<std::uint8_t> proof_to_bytes(const Proof& p) {
  std::vector<std::uint8_t> out;
  out.reserve(kProofBytes);
  put_g1(out, p.a);
  put_g2(out, p.b);
  put_g1(out, p.c);
  return out;
}

Proof proof_from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kProofBytes) {
    throw DecodeError("proof must be " + std::to_string(kProofBytes) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  Reader r(bytes);
  Proof p;
  p.a = read_g1(r);
  p.b = read_g2(r, true);
  p.c = read_g1(r);
  return p;
}

ordered_json proof_to_json(const Proof& p) {
  ordered_json j;
  j["pi_a"] = g1_hex(p.a);
  j["pi_b"] = g2_hex(p.b);
  j["pi_c"] = g1_hex(p.c);
  return j;
}

Proof proof_from_json(const json& j) {
  try {
    return {g1_from_json(at(j, "pi_a")), g2_from_json(at(j, "pi_b"), true), g1_from_json(at(j, "pi_c"))};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed proof: ") + e.what());
  }
}

ordered_json vk_to_json(const VerifyingKey& vk) {
  ordered_json j;
  j["protocol"] = "groth16";
  j["curve"] = "bn128";
  j["nPublic"] = vk.num_public();
  j["vk_alpha_1"] = g1_dec(vk.alpha1);
  j["vk_beta_2"] = g2_dec(vk.beta2);
  j["vk_gamma_2"] = g2_dec(vk.gamma2);
  j["vk_delta_2"] = g2_dec(vk.delta2);
  ordered_json ic = ordered_json::array();
  for (const auto& p : vk.ic) ic.push_back(g1_dec(p));
  j["IC"] = ic;
  return j;
}

VerifyingKey vk_from_json(const json& j) {
  try {
    if (at(j, "protocol") != "groth16") throw DecodeError("verifying key protocol is not groth16");
    if (at(j, "curve") != "bn128") throw DecodeError("verifying key curve is not bn128");
    VerifyingKey vk;
    vk.alpha1 = g1_from_json(at(j, "vk_alpha_1"));
    vk.beta2 = g2_from_json(at(j, "vk_beta_2"), true);
    vk.gamma2 = g2_from_json(at(j, "vk_gamma_2"), true);
    vk.delta2 = g2_from_json(at(j, "vk_delta_2"), true);
    const json& ic = at(j, "IC");
    if (!ic.is_array() || ic.empty()) throw DecodeError("IC must be a non-empty array");
    for (const auto& p : ic) vk.ic.push_back(g1_from_json(p));
    if (j.contains("nPublic") && j["nPublic"] != vk.num_public()) {
      throw DecodeError("nPublic does not match IC length");
    }
    return vk;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed verifying key: ") + e.what());
  }
}

void write_proving_key(std::ostream& out, const ProvingKey& pk) {
  out.write(kPkMagic, sizeof kPkMagic);
  out.write(reinterpret_cast<const char*>(pk.digest.data()), pk.digest.size());
  write_u64(out, pk.num_wires);
  write_u64(out, pk.num_public);
  write_u64(out, pk.domain_size);
  std::vector<std::uint8_t> head;
  put_g1(head, pk.alpha1);
  put_g1(head, pk.beta1);
  put_g1(head, pk.delta1);
  put_g2(head, pk.beta2);
  put_g2(head, pk.delta2);
  write_bytes(out, head);
  write_g1_vec(out, pk.a_query);
  write_g1_vec(out, pk.b_g1_query);
  write_g2_vec(out, pk.b_g2_query);
  write_g1_vec(out, pk.l_query);
  write_g1_vec(out, pk.h_query);
  if (!out) throw IoError("failed to write proving key");
}

ProvingKey read_proving_key(std::istream& in) {
  const auto magic = read_exact(in, sizeof kPkMagic);
  if (std::memcmp(magic.data(), kPkMagic, sizeof kPkMagic) != 0) throw DecodeError("not a proving key file");
  ProvingKey pk;
  const auto digest = read_exact(in, pk.digest.size());
  std::copy(digest.begin(), digest.end(), pk.digest.begin());
  pk.num_wires = read_u64(in);
  pk.num_public = read_u64(in);
  pk.domain_size = read_u64(in);
  if (pk.num_wires > kMaxVector || pk.domain_size > kMaxVector || pk.num_public >= pk.num_wires ||
      pk.domain_size < 2) {
    throw DecodeError("proving key header out of range");
  }
  const auto head = read_exact(in, 3 * 64 + 2 * 128);
  Reader r(head);
  pk.alpha1 = read_g1(r);
  pk.beta1 = read_g1(r);
  pk.delta1 = read_g1(r);
  pk.beta2 = read_g2(r, false);
  pk.delta2 = read_g2(r, false);
  pk.a_query = read_g1_vec(in, pk.num_wires);
  pk.b_g1_query = read_g1_vec(in, pk.num_wires);
  pk.b_g2_query = read_g2_vec(in, pk.num_wires);
  pk.l_query = read_g1_vec(in, pk.num_wires - pk.num_public - 1);
  pk.h_query = read_g1_vec(in, pk.domain_size - 1);
  if (in.peek() != std::char_traits<char>::eof()) throw DecodeError("trailing bytes after proving key");
  return pk;
}

void save_proving_key(const std::filesystem::path& path, const ProvingKey& pk) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_proving_key(out, pk);
}

ProvingKey load_proving_key(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_proving_key(in);
}

void save_verifying_key(const std::filesystem::path& path, const VerifyingKey& vk) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << vk_to_json(vk).dump(2) << '\n';
  if (!out) throw IoError("failed to write " + path.string());
}

VerifyingKey load_verifying_key(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return vk_from_json(parse_json(text));
}

std::string ProofBundle::to_json() const {
  ordered_json j;
  j["molecule_id"] = molecule_id;
  j["task_id"] = task_id;
  ordered_json pub = ordered_json::array();
  for (const auto& v : public_values) pub.push_back(v.to_hex());
  j["public_values"] = pub;
  j["proof"] = proof_to_json(proof);
  j["protocol"] = "groth16";
  j["curve"] = "bn128";
  return j.dump();
}

ProofBundle ProofBundle::parse(std::string_view text) { return from_json(parse_json(text)); }

ProofBundle ProofBundle::from_json(const json& j) {
  try {
    ProofBundle b;
    const json& mid = at(j, "molecule_id");
    const json& tid = at(j, "task_id");
    if (!mid.is_string() || !tid.is_string()) throw DecodeError("identifiers must be strings");
    b.molecule_id = mid.get<std::string>();
    b.task_id = tid.get<std::string>();
    if (j.contains("protocol") && j["protocol"] != "groth16") throw DecodeError("unsupported protocol");
    if (j.contains("curve") && j["curve"] != "bn128") throw DecodeError("unsupported curve");
    const json& pub = at(j, "public_values");
    if (!pub.is_array() || pub.size() != 9) throw DecodeError("bundle must carry exactly 9 public values");
    for (const auto& v : pub) b.public_values.push_back(decode_fr(v));
    b.proof = proof_from_json(at(j, "proof"));
    return b;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed bundle: ") + e.what());
  }
}

}  // namespace toxizk::snark
