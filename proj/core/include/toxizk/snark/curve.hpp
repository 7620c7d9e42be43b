// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toxizk/field/prime_field.hpp"
#include "toxizk/snark/tower.hpp"

namespace toxizk::snark {

/// Affine point on y^2 = x^3 + b; `infinity` marks the identity.
template <class F>
struct Affine {
  F x;
  F y;
  bool infinity = true;

  bool operator==(const Affine&) const = default;
};

/// Jacobian point (X, Y, Z) ~ (X/Z^2, Y/Z^3); Z = 0 is the identity.
/// `Curve` supplies `using Field`, `static Field b()` and `static Affine<Field> generator()`.
template <class Curve>
class Jacobian {
 public:
  using F = typename Curve::Field;
  using AffineT = Affine<F>;

  Jacobian() : x_(F::zero()), y_(F::one()), z_(F::zero()) {}
  Jacobian(const F& x, const F& y, const F& z) : x_(x), y_(y), z_(z) {}
  explicit Jacobian(const AffineT& p)
      : x_(p.infinity ? F::zero() : p.x), y_(p.infinity ? F::one() : p.y),
        z_(p.infinity ? F::zero() : F::one()) {}

  static Jacobian identity() { return {}; }
  static Jacobian generator() { return Jacobian(Curve::generator()); }

  bool is_identity() const { return z_.is_zero(); }

  const F& x() const { return x_; }
  const F& y() const { return y_; }
  const F& z() const { return z_; }

  Jacobian dbl() const {
    if (is_identity()) return *this;
    // dbl-2009-l
    const F a = x_.square();
    const F b = y_.square();
    const F c = b.square();
    const F d = ((x_ + b).square() - a - c).dbl();
    const F e = a.dbl() + a;
    const F f = e.square();
    const F x3 = f - d.dbl();
    const F c8 = c.dbl().dbl().dbl();
    const F y3 = e * (d - x3) - c8;
    const F z3 = (y_ * z_).dbl();
    return {x3, y3, z3};
  }

  Jacobian operator+(const Jacobian& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    // add-2007-bl
    const F z1z1 = z_.square();
    const F z2z2 = o.z_.square();
    const F u1 = x_ * z2z2;
    const F u2 = o.x_ * z1z1;
    const F s1 = y_ * o.z_ * z2z2;
    const F s2 = o.y_ * z_ * z1z1;
    if (u1 == u2) {
      if (s1 == s2) return dbl();
      return identity();
    }
    const F h = u2 - u1;
    const F i = h.dbl().square();
    const F j = h * i;
    const F r = (s2 - s1).dbl();
    const F v = u1 * i;
    const F x3 = r.square() - j - v.dbl();
    const F y3 = r * (v - x3) - (s1 * j).dbl();
    const F z3 = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
    return {x3, y3, z3};
  }

  /// Mixed addition with an affine point.
  Jacobian add_affine(const AffineT& q) const {
    if (q.infinity) return *this;
    if (is_identity()) return Jacobian(q);
    // madd-2007-bl
    const F z1z1 = z_.square();
    const F u2 = q.x * z1z1;
    const F s2 = q.y * z_ * z1z1;
    if (u2 == x_) {
      if (s2 == y_) return dbl();
      return identity();
    }
    const F h = u2 - x_;
    const F hh = h.square();
    const F i = hh.dbl().dbl();
    const F j = h * i;
    const F r = (s2 - y_).dbl();
    const F v = x_ * i;
    const F x3 = r.square() - j - v.dbl();
    const F y3 = r * (v - x3) - (y_ * j).dbl();
    const F z3 = (z_ + h).square() - z1z1 - hh;
    return {x3, y3, z3};
  }

  Jacobian operator-() const { return {x_, -y_, z_}; }
  Jacobian operator-(const Jacobian& o) const { return *this + (-o); }
  Jacobian& operator+=(const Jacobian& o) { return *this = *this + o; }

  Jacobian mul(const U256& k) const {
    Jacobian acc;
    for (std::size_t i = k.bit_length(); i-- > 0;) {
      acc = acc.dbl();
      if (k.bit(i)) acc += *this;
    }
    return acc;
  }
  Jacobian mul(const Fr& k) const { return mul(k.to_u256()); }

  AffineT to_affine() const {
    if (is_identity()) return {};
    const F zinv = z_.inverse();
    const F zinv2 = zinv.square();
    return {x_ * zinv2, y_ * zinv2 * zinv, false};
  }

  /// Projective equality.
  bool operator==(const Jacobian& o) const {
    if (is_identity() || o.is_identity()) return is_identity() == o.is_identity();
    const F z1z1 = z_.square();
    const F z2z2 = o.z_.square();
    return x_ * z2z2 == o.x_ * z1z1 && y_ * o.z_ * z2z2 == o.y_ * z_ * z1z1;
  }

 private:
  F x_;
  F y_;
  F z_;
};

struct G1Curve {
  using Field = Fq;
  static Fq b() { return Fq::from_u64(3); }
  static Affine<Fq> generator() { return {Fq::from_u64(1), Fq::from_u64(2), false}; }
};

struct G2Curve {
  using Field = Fq2;
  /// b / xi for the D-type sextic twist.
  static Fq2 b();
  static Affine<Fq2> generator();
};

using G1 = Jacobian<G1Curve>;
using G2 = Jacobian<G2Curve>;
using G1Affine = Affine<Fq>;
using G2Affine = Affine<Fq2>;

template <class Curve>
bool is_on_curve(const Affine<typename Curve::Field>& p) {
  if (p.infinity) return true;
  return p.y.square() == p.x.square() * p.x + Curve::b();
}

/// r * P == O. G1 has cofactor 1, so this only matters for G2.
bool in_prime_subgroup(const G2Affine& p);

/// Montgomery-trick conversion of many points at once.
template <class Curve>
std::vector<Affine<typename Curve::Field>> batch_to_affine(std::span<const Jacobian<Curve>> pts) {
  using F = typename Curve::Field;
  std::vector<Affine<F>> out(pts.size());
  std::vector<F> prefix(pts.size());
  F acc = F::one();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    prefix[i] = acc;
    if (!pts[i].is_identity()) acc = acc * pts[i].z();
  }
  F inv = acc.inverse();
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (pts[i].is_identity()) continue;
    const F zinv = inv * prefix[i];
    inv = inv * pts[i].z();
    const F zinv2 = zinv.square();
    out[i] = {pts[i].x() * zinv2, pts[i].y() * zinv2 * zinv, false};
  }
  return out;
}

/// Windowed table of multiples of one base point, for the many scalar
/// multiplications performed during setup.
template <class Curve>
class FixedBaseTable {
 public:
  using F = typename Curve::Field;
  static constexpr unsigned kWindow = 8;
  static constexpr unsigned kWindows = (256 + kWindow - 1) / kWindow;

  explicit FixedBaseTable(const Jacobian<Curve>& base) {
    std::vector<Jacobian<Curve>> pts;
    pts.reserve(kWindows << kWindow);
    Jacobian<Curve> row_base = base;
    for (unsigned w = 0; w < kWindows; ++w) {
      Jacobian<Curve> acc;
      for (unsigned d = 0; d < (1u << kWindow); ++d) {
        pts.push_back(acc);
        acc += row_base;
      }
      row_base = acc;  // 2^kWindow * previous row base
    }
    table_ = batch_to_affine<Curve>(pts);
  }

  Jacobian<Curve> mul(const U256& k) const {
    Jacobian<Curve> acc;
    for (unsigned w = 0; w < kWindows; ++w) {
      const auto d = static_cast<unsigned>(k.bits(w * kWindow, kWindow));
      if (d != 0) acc = acc.add_affine(table_[(w << kWindow) + d]);
    }
    return acc;
  }
  Jacobian<Curve> mul(const Fr& k) const { return mul(k.to_u256()); }

 private:
  std::vector<Affine<F>> table_;
};

}  // namespace toxizk::snark
