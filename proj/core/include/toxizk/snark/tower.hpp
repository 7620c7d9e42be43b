// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "toxizk/field/prime_field.hpp"

namespace toxizk::snark {

/// Fq2 = Fq[u] / (u^2 + 1).
struct Fq2 {
  Fq c0;
  Fq c1;

  static Fq2 zero() { return {}; }
  static Fq2 one() { return {Fq::one(), Fq::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fq2&) const = default;

  Fq2 operator+(const Fq2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fq2 operator-(const Fq2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fq2 operator-() const { return {-c0, -c1}; }
  Fq2 operator*(const Fq2& o) const {
    const Fq aa = c0 * o.c0;
    const Fq bb = c1 * o.c1;
    return {aa - bb, (c0 + c1) * (o.c0 + o.c1) - aa - bb};
  }
  Fq2 operator*(const Fq& k) const { return {c0 * k, c1 * k}; }
  Fq2& operator+=(const Fq2& o) { return *this = *this + o; }
  Fq2& operator-=(const Fq2& o) { return *this = *this - o; }
  Fq2& operator*=(const Fq2& o) { return *this = *this * o; }

  Fq2 square() const {
    const Fq ab = c0 * c1;
    return {(c0 + c1) * (c0 - c1), ab + ab};
  }
  Fq2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fq2 conjugate() const { return {c0, -c1}; }

  /// Multiplication by the sextic non-residue xi = 9 + u.
  Fq2 mul_by_xi() const {
    const Fq nine_c0 = c0.dbl().dbl().dbl() + c0;
    const Fq nine_c1 = c1.dbl().dbl().dbl() + c1;
    return {nine_c0 - c1, c0 + nine_c1};
  }

  Fq2 inverse() const {
    const Fq t = (c0.square() + c1.square()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  Fq2 pow(const U256& e) const {
    Fq2 r = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r *= *this;
    }
    return r;
  }
};

/// Fq6 = Fq2[v] / (v^3 - xi).
struct Fq6 {
  Fq2 c0;
  Fq2 c1;
  Fq2 c2;

  static Fq6 zero() { return {}; }
  static Fq6 one() { return {Fq2::one(), Fq2::zero(), Fq2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fq6&) const = default;

  Fq6 operator+(const Fq6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fq6 operator-(const Fq6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fq6 operator-() const { return {-c0, -c1, -c2}; }

  Fq6 operator*(const Fq6& o) const {
    const Fq2 t0 = c0 * o.c0;
    const Fq2 t1 = c1 * o.c1;
    const Fq2 t2 = c2 * o.c2;
    const Fq2 r0 = ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_xi() + t0;
    const Fq2 r1 = (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_xi();
    const Fq2 r2 = (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1;
    return {r0, r1, r2};
  }
  Fq6 operator*(const Fq2& k) const { return {c0 * k, c1 * k, c2 * k}; }
  Fq6& operator*=(const Fq6& o) { return *this = *this * o; }

  Fq6 square() const { return *this * *this; }

  /// Multiplication by v.
  Fq6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }

  Fq6 inverse() const {
    const Fq2 a = c0.square() - (c1 * c2).mul_by_xi();
    const Fq2 b = c2.square().mul_by_xi() - c0 * c1;
    const Fq2 c = c1.square() - c0 * c2;
    const Fq2 t = (c0 * a + ((c2 * b) + (c1 * c)).mul_by_xi()).inverse();
    return {a * t, b * t, c * t};
  }
};

/// Fq12 = Fq6[w] / (w^2 - v).
struct Fq12 {
  Fq6 c0;
  Fq6 c1;

  static Fq12 zero() { return {}; }
  static Fq12 one() { return {Fq6::one(), Fq6::zero()}; }

  bool is_one() const { return *this == one(); }
  bool operator==(const Fq12&) const = default;

  Fq12 operator*(const Fq12& o) const {
    const Fq6 aa = c0 * o.c0;
    const Fq6 bb = c1 * o.c1;
    return {aa + bb.mul_by_v(), (c0 + c1) * (o.c0 + o.c1) - aa - bb};
  }
  Fq12& operator*=(const Fq12& o) { return *this = *this * o; }

  Fq12 square() const {
    const Fq6 ab = c0 * c1;
    const Fq6 t = (c0 + c1) * (c0 + c1.mul_by_v());
    return {t - ab - ab.mul_by_v(), ab + ab};
  }

  /// Inverse on the cyclotomic subgroup (and conjugation in general).
  Fq12 conjugate() const { return {c0, -c1}; }

  Fq12 inverse() const {
    const Fq6 t = (c0.square() - c1.square().mul_by_v()).inverse();
    return {c0 * t, -(c1 * t)};
  }

  /// x -> x^(q^power).
  Fq12 frobenius(unsigned power = 1) const;

  Fq12 pow(const U256& e) const {
    Fq12 r = one();
    for (std::size_t i = e.bit_length(); i-- > 0;) {
      r = r.square();
      if (e.bit(i)) r *= *this;
    }
    return r;
  }
};

}  // namespace toxizk::snark
