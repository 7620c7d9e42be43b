// SPDX-License-Identifier: Apache-2.0
#include "toxizk/snark/pairing.hpp"

#include <array>

namespace toxizk::snark {
namespace {

Fq fq_dec(const char* s) { return Fq::from_canonical(*U256::from_dec(s)); }

const Fq2& xi() {
  static const Fq2 v{Fq::from_u64(9), Fq::from_u64(1)};
  return v;
}

U256 p_minus_one_over(std::uint64_t d) {
  U256 e;
  sub_borrow(FqTag::kModulus, U256(1), e);
  divmod_small(e, d);
  return e;
}

// gamma^i for gamma = xi^((p-1)/6), i = 0..5: w^p = gamma * w.
const std::array<Fq2, 6>& frobenius_coeffs() {
  static const std::array<Fq2, 6> c = [] {
    std::array<Fq2, 6> out;
    const Fq2 gamma = xi().pow(p_minus_one_over(6));
    out[0] = Fq2::one();
    for (std::size_t i = 1; i < 6; ++i) out[i] = out[i - 1] * gamma;
    return out;
  }();
  return c;
}

struct TwistFrobenius {
  Fq2 x;  // xi^((p-1)/3)
  Fq2 y;  // xi^((p-1)/2)
};

const TwistFrobenius& twist_frobenius() {
  static const TwistFrobenius t{xi().pow(p_minus_one_over(3)), xi().pow(p_minus_one_over(2))};
  return t;
}

struct Projective {
  Fq2 x;
  Fq2 y;
  Fq2 z;
};

const Fq& two_inv() {
  static const Fq v = Fq::from_u64(2).inverse();
  return v;
}

// Doubling step in homogeneous projective coordinates (Costello-Lange-Naehrig).
EllCoeffs doubling_step(Projective& r) {
  const Fq2 a = (r.x * r.y) * two_inv();
  const Fq2 b = r.y.square();
  const Fq2 c = r.z.square();
  const Fq2 d = c.dbl() + c;
  const Fq2 e = G2Curve::b() * d;
  const Fq2 f = e.dbl() + e;
  const Fq2 g = (b + f) * two_inv();
  const Fq2 h = (r.y + r.z).square() - (b + c);
  const Fq2 i = e - b;
  const Fq2 j = r.x.square();
  const Fq2 e2 = e.square();
  r.x = a * (b - f);
  r.y = g.square() - (e2.dbl() + e2);
  r.z = b * h;
  return {i.mul_by_xi(), -h, j.dbl() + j};
}

EllCoeffs addition_step(const G2Affine& q, Projective& r) {
  const Fq2 d = r.x - q.x * r.z;
  const Fq2 e = r.y - q.y * r.z;
  const Fq2 f = d.square();
  const Fq2 g = e.square();
  const Fq2 h = d * f;
  const Fq2 i = r.x * f;
  const Fq2 j = h + r.z * g - i.dbl();
  r.x = d * j;
  r.y = e * (i - j) - h * r.y;
  r.z = r.z * h;
  return {(e * q.x - d * q.y).mul_by_xi(), d, -e};
}

G2Affine frobenius_on_twist(const G2Affine& q) {
  const auto& t = twist_frobenius();
  return {q.x.conjugate() * t.x, q.y.conjugate() * t.y, false};
}

// f * (ell_0 + ell_vv*xP w^4 + ell_vw*yP w^3).
Fq12 mul_by_line(const Fq12& f, const EllCoeffs& c, const G1Affine& p) {
  const Fq12 line{{c.ell_0, Fq2::zero(), c.ell_vv * p.x}, {Fq2::zero(), c.ell_vw * p.y, Fq2::zero()}};
  return f * line;
}

Fq12 cyclotomic_pow(const Fq12& x, const U256& e) {
  Fq12 r = Fq12::one();
  for (std::size_t i = e.bit_length(); i-- > 0;) {
    r = r.square();
    if (e.bit(i)) r *= x;
  }
  return r;
}

// x^(-u) for x in the cyclotomic subgroup.
Fq12 exp_by_neg_u(const Fq12& x) { return cyclotomic_pow(x, curve_parameter_u()).conjugate(); }

}  // namespace

Fq2 G2Curve::b() {
  static const Fq2 v = Fq2{Fq::from_u64(3), Fq::zero()} * xi().inverse();
  return v;
}

Affine<Fq2> G2Curve::generator() {
  static const Affine<Fq2> g{
      {fq_dec("10857046999023057135944570762232829481370756359578518086990519993285655852781"),
       fq_dec("11559732032986387107991004021392285783925812861821192530917403151452391805634")},
      {fq_dec("8495653923123431417604973247489272438418190587263600148770280649306958101930"),
       fq_dec("4082367875863433681332203403145435568316851327593401208105741076214120093531")},
      false};
  return g;
}

bool in_prime_subgroup(const G2Affine& p) {
  if (p.infinity) return true;
  return G2(p).mul(FrTag::kModulus).is_identity();
}

const U256& curve_parameter_u() {
  static const U256 u(4965661367192848881ULL);
  return u;
}

const U256& ate_loop_count() {
  static const U256 v = *U256::from_dec("29793968203157093288");
  return v;
}

Fq12 Fq12::frobenius(unsigned power) const {
  const auto& g = frobenius_coeffs();
  Fq12 r = *this;
  for (unsigned k = 0; k < power; ++k) {
    r = Fq12{{r.c0.c0.conjugate(), r.c0.c1.conjugate() * g[2], r.c0.c2.conjugate() * g[4]},
             {r.c1.c0.conjugate() * g[1], r.c1.c1.conjugate() * g[3], r.c1.c2.conjugate() * g[5]}};
  }
  return r;
}

G2Prepared prepare_g2(const G2Affine& q) {
  G2Prepared out;
  if (q.infinity) return out;
  out.infinity = false;
  Projective r{q.x, q.y, Fq2::one()};
  const U256& loop = ate_loop_count();
  // Skip the leading one bit.
  for (std::size_t i = loop.bit_length() - 1; i-- > 0;) {
    out.coeffs.push_back(doubling_step(r));
    if (loop.bit(i)) out.coeffs.push_back(addition_step(q, r));
  }
  const G2Affine q1 = frobenius_on_twist(q);
  G2Affine q2 = frobenius_on_twist(q1);
  q2.y = -q2.y;
  out.coeffs.push_back(addition_step(q1, r));
  out.coeffs.push_back(addition_step(q2, r));
  return out;
}

namespace {

Fq12 miller_loop_many(std::span<const std::pair<G1Affine, const G2Prepared*>> terms) {
  Fq12 f = Fq12::one();
  const U256& loop = ate_loop_count();
  std::size_t idx = 0;
  for (std::size_t i = loop.bit_length() - 1; i-- > 0;) {
    f = f.square();
    for (const auto& [p, q] : terms) {
      if (p.infinity || q->infinity) continue;
      f = mul_by_line(f, q->coeffs[idx], p);
    }
    ++idx;
    if (loop.bit(i)) {
      for (const auto& [p, q] : terms) {
        if (p.infinity || q->infinity) continue;
        f = mul_by_line(f, q->coeffs[idx], p);
      }
      ++idx;
    }
  }
  for (int k = 0; k < 2; ++k) {
    for (const auto& [p, q] : terms) {
      if (p.infinity || q->infinity) continue;
      f = mul_by_line(f, q->coeffs[idx], p);
    }
    ++idx;
  }
  return f;
}

}  // namespace

Fq12 miller_loop(const G1Affine& p, const G2Prepared& q) {
  const std::array<std::pair<G1Affine, const G2Prepared*>, 1> t = {{{p, &q}}};
  return miller_loop_many(t);
}

Fq12 final_exponentiation(const Fq12& f) {
  // Easy part: f^((p^6 - 1)(p^2 + 1)).
  const Fq12 c = f.conjugate() * f.inverse();
  const Fq12 elt = c.frobenius(2) * c;

  // Hard part, (p^4 - p^2 + 1) / r, following the Fuentes-Castaneda et al. chain.
  const Fq12 a = exp_by_neg_u(elt);
  const Fq12 b = a.square();
  const Fq12 cc = b.square();
  const Fq12 d = cc * b;
  const Fq12 e = exp_by_neg_u(d);
  const Fq12 ff = e.square();
  const Fq12 g = exp_by_neg_u(ff);
  const Fq12 h = d.conjugate();
  const Fq12 i = g.conjugate();
  const Fq12 j = i * e;
  const Fq12 k = j * h;
  const Fq12 l = k * b;
  const Fq12 m = k * e;
  const Fq12 n = m * elt;
  const Fq12 o = l.frobenius(1) * n;
  const Fq12 pp = k.frobenius(2);
  const Fq12 q = o * pp;
  const Fq12 rr = elt.conjugate();
  const Fq12 s = rr * l;
  const Fq12 t = s.frobenius(3);
  return q * t;
}

Fq12 pairing(const G1Affine& p, const G2Affine& q) {
  return final_exponentiation(miller_loop(p, prepare_g2(q)));
}

Fq12 multi_pairing(std::span<const std::pair<G1Affine, const G2Prepared*>> terms) {
  return final_exponentiation(miller_loop_many(terms));
}

}  // namespace toxizk::snark
