// SPDX-License-Identifier: Apache-2.0
#include "toxizk/snark/groth16.hpp"

#include <sodium.h>

#include <string>

#include "toxizk/errors.hpp"
#include "toxizk/snark/domain.hpp"
#include "toxizk/snark/msm.hpp"

namespace toxizk::snark {

using circuit::ConstraintSystem;
using circuit::LC;

namespace {

void put_u64(crypto_generichash_state& st, std::uint64_t v) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
  crypto_generichash_update(&st, b, sizeof b);
}

void put_lc(crypto_generichash_state& st, const LC& lc) {
  put_u64(st, lc.terms().size());
  for (const auto& t : lc.terms()) {
    put_u64(st, t.wire);
    const auto bytes = t.coeff.to_bytes();
    crypto_generichash_update(&st, bytes.data(), bytes.size());
  }
}

Fr random_nonzero(RandomSource& rng) {
  for (;;) {
    Fr v = Fr::random(rng);
    if (!v.is_zero()) return v;
  }
}

// Per-wire QAP polynomials evaluated at tau.
struct QapAtTau {
  std::vector<Fr> a;
  std::vector<Fr> b;
  std::vector<Fr> c;
};

QapAtTau qap_at(const ConstraintSystem& cs, const EvaluationDomain& dom, const Fr& tau) {
  const auto lag = dom.lagrange_at(tau);
  QapAtTau q{std::vector<Fr>(cs.num_wires), std::vector<Fr>(cs.num_wires), std::vector<Fr>(cs.num_wires)};
  const std::size_t m = cs.constraints.size();
  for (std::size_t j = 0; j < m; ++j) {
    const auto& k = cs.constraints[j];
    for (const auto& t : k.a.terms()) q.a[t.wire] += t.coeff * lag[j];
    for (const auto& t : k.b.terms()) q.b[t.wire] += t.coeff * lag[j];
    for (const auto& t : k.c.terms()) q.c[t.wire] += t.coeff * lag[j];
  }
  // Input-consistency rows: A = z_i for the constant and every public wire.
  for (std::size_t i = 0; i <= cs.num_public(); ++i) q.a[i] += lag[m + i];
  return q;
}

std::vector<U256> to_scalars(std::span<const Fr> v) {
  std::vector<U256> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_u256();
  return out;
}

template <class Curve>
std::vector<Affine<typename Curve::Field>> fixed_base_batch(const FixedBaseTable<Curve>& table,
                                                            std::span<const Fr> scalars) {
  std::vector<Jacobian<Curve>> pts(scalars.size());
  for (std::size_t i = 0; i < scalars.size(); ++i) pts[i] = table.mul(scalars[i]);
  return batch_to_affine<Curve>(pts);
}

}  // namespace

Digest circuit_digest(const ConstraintSystem& cs) {
  if (sodium_init() < 0) throw SetupError("libsodium initialisation failed");
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, 32);
  put_u64(st, cs.num_wires);
  put_u64(st, cs.num_public_inputs);
  put_u64(st, cs.num_public_outputs);
  put_u64(st, cs.num_private_inputs);
  put_u64(st, cs.constraints.size());
  for (const auto& k : cs.constraints) {
    put_lc(st, k.a);
    put_lc(st, k.b);
    put_lc(st, k.c);
  }
  Digest d;
  crypto_generichash_final(&st, d.data(), d.size());
  return d;
}

Keypair setup(const ConstraintSystem& cs, RandomSource& rng) {
  if (cs.constraints.empty()) throw SetupError("empty constraint system");
  const EvaluationDomain dom(cs.constraints.size() + cs.num_public() + 1);
  const std::size_t n = dom.size();

  Fr tau = random_nonzero(rng);
  while (dom.vanishing_at(tau).is_zero()) tau = random_nonzero(rng);
  const Fr alpha = random_nonzero(rng);
  const Fr beta = random_nonzero(rng);
  const Fr gamma = random_nonzero(rng);
  const Fr delta = random_nonzero(rng);
  const Fr gamma_inv = gamma.inverse();
  const Fr delta_inv = delta.inverse();

  const QapAtTau q = qap_at(cs, dom, tau);
  const std::size_t npub = cs.num_public();

  std::vector<Fr> ic(npub + 1);
  std::vector<Fr> l(cs.num_wires - npub - 1);
  for (std::size_t i = 0; i < cs.num_wires; ++i) {
    const Fr v = beta * q.a[i] + alpha * q.b[i] + q.c[i];
    if (i <= npub) {
      ic[i] = v * gamma_inv;
    } else {
      l[i - npub - 1] = v * delta_inv;
    }
  }
  std::vector<Fr> h(n - 1);
  Fr pow = dom.vanishing_at(tau) * delta_inv;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = pow;
    pow = pow * tau;
  }

  const FixedBaseTable<G1Curve> g1(G1::generator());
  const FixedBaseTable<G2Curve> g2(G2::generator());

  Keypair kp;
  ProvingKey& pk = kp.pk;
  pk.digest = circuit_digest(cs);
  pk.num_wires = cs.num_wires;
  pk.num_public = npub;
  pk.domain_size = n;
  pk.alpha1 = g1.mul(alpha).to_affine();
  pk.beta1 = g1.mul(beta).to_affine();
  pk.delta1 = g1.mul(delta).to_affine();
  pk.beta2 = g2.mul(beta).to_affine();
  pk.delta2 = g2.mul(delta).to_affine();
  pk.a_query = fixed_base_batch(g1, q.a);
  pk.b_g1_query = fixed_base_batch(g1, q.b);
  pk.b_g2_query = fixed_base_batch(g2, q.b);
  pk.l_query = fixed_base_batch(g1, l);
  pk.h_query = fixed_base_batch(g1, h);

  VerifyingKey& vk = kp.vk;
  vk.alpha1 = pk.alpha1;
  vk.beta2 = pk.beta2;
  vk.gamma2 = g2.mul(gamma).to_affine();
  vk.delta2 = pk.delta2;
  vk.ic = fixed_base_batch(g1, ic);
  return kp;
}

Proof prove(const ProvingKey& pk, const ConstraintSystem& cs, std::span<const Fr> assignment,
            RandomSource& rng) {
  if (cs.num_wires != pk.num_wires || cs.num_public() != pk.num_public || circuit_digest(cs) != pk.digest) {
    throw ProverError("proving key does not match constraint system");
  }
  if (assignment.size() != cs.num_wires) throw ProverError("assignment has wrong length");
  if (assignment[0] != Fr::one()) throw ProverError("constant wire is not one");
  if (const auto bad = cs.first_unsatisfied(assignment)) {
    throw ProverError("witness does not satisfy constraint " + std::to_string(*bad));
  }

  const EvaluationDomain dom(pk.domain_size);
  const std::size_t n = dom.size();
  const std::size_t m = cs.constraints.size();
  std::vector<Fr> a(n), b(n), c(n);
  for (std::size_t j = 0; j < m; ++j) {
    a[j] = cs.constraints[j].a.evaluate(assignment);
    b[j] = cs.constraints[j].b.evaluate(assignment);
    c[j] = cs.constraints[j].c.evaluate(assignment);
  }
  for (std::size_t i = 0; i <= cs.num_public(); ++i) a[m + i] = assignment[i];

  dom.ifft(a);
  dom.ifft(b);
  dom.ifft(c);
  dom.coset_fft(a);
  dom.coset_fft(b);
  dom.coset_fft(c);
  const Fr z_inv = (EvaluationDomain::coset_generator().pow(U256(n)) - Fr::one()).inverse();
  for (std::size_t i = 0; i < n; ++i) a[i] = (a[i] * b[i] - c[i]) * z_inv;
  dom.coset_ifft(a);
  if (!a[n - 1].is_zero()) throw ProverError("quotient polynomial has unexpected degree");

  const auto z = to_scalars(assignment);
  const auto hs = to_scalars(std::span<const Fr>(a.data(), n - 1));
  const std::span<const U256> priv(z.data() + pk.num_public + 1, z.size() - pk.num_public - 1);

  const Fr r = Fr::random(rng);
  const Fr s = Fr::random(rng);

  const G1 delta1(pk.delta1);
  const G1 pa = G1(pk.alpha1) + msm<G1Curve>(pk.a_query, z) + delta1.mul(r);
  const G1 pb1 = G1(pk.beta1) + msm<G1Curve>(pk.b_g1_query, z) + delta1.mul(s);
  const G2 pb2 = G2(pk.beta2) + msm<G2Curve>(pk.b_g2_query, z) + G2(pk.delta2).mul(s);
  const G1 pc = msm<G1Curve>(pk.l_query, priv) + msm<G1Curve>(pk.h_query, hs) + pa.mul(s) + pb1.mul(r) -
                delta1.mul(r * s);
  return {pa.to_affine(), pb2.to_affine(), pc.to_affine()};
}

PreparedVerifyingKey::PreparedVerifyingKey(VerifyingKey vk)
    : vk_(std::move(vk)),
      beta_(prepare_g2(vk_.beta2)),
      gamma_(prepare_g2(vk_.gamma2)),
      delta_(prepare_g2(vk_.delta2)) {}

bool PreparedVerifyingKey::verify(std::span<const Fr> public_values, const Proof& proof) const {
  if (public_values.size() != vk_.num_public()) {
    throw ParameterError("expected " + std::to_string(vk_.num_public()) + " public values, got " +
                         std::to_string(public_values.size()));
  }
  G1 acc(vk_.ic[0]);
  for (std::size_t i = 0; i < public_values.size(); ++i) {
    acc += G1(vk_.ic[i + 1]).mul(public_values[i]);
  }
  G1Affine neg_a = proof.a;
  neg_a.y = -neg_a.y;
  const G2Prepared b = prepare_g2(proof.b);
  const std::pair<G1Affine, const G2Prepared*> terms[] = {
      {neg_a, &b}, {vk_.alpha1, &beta_}, {acc.to_affine(), &gamma_}, {proof.c, &delta_}};
  return multi_pairing(terms).is_one();
}

bool verify(const VerifyingKey& vk, std::span<const Fr> public_values, const Proof& proof) {
  return PreparedVerifyingKey(vk).verify(public_values, proof);
}

}  // namespace toxizk::snark
