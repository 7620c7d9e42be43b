// SPDX-License-Identifier: Apache-2.0
#include "toxizk/snark/domain.hpp"

#include <utility>

#include "toxizk/errors.hpp"

namespace toxizk::snark {

EvaluationDomain::EvaluationDomain(std::size_t min_size) {
  n_ = 1;
  log_n_ = 0;
  while (n_ < min_size) {
    n_ <<= 1;
    ++log_n_;
  }
  if (log_n_ > kTwoAdicity) throw ParameterError("evaluation domain too large");
  // 5 generates Fr^*, so 5^((r-1)/2^28) has order 2^28.
  U256 e;
  sub_borrow(FrTag::kModulus, U256(1), e);
  for (unsigned i = 0; i < kTwoAdicity; ++i) e = shr1(e);
  Fr root = Fr::from_u64(5).pow(e);
  for (unsigned i = log_n_; i < kTwoAdicity; ++i) root = root.square();
  omega_ = root;
  omega_inv_ = omega_.inverse();
  n_inv_ = Fr::from_u64(n_).inverse();
}

void EvaluationDomain::transform(std::span<Fr> a, const Fr& root) const {
  if (a.size() != n_) throw ParameterError("fft input size does not match domain");
  for (std::size_t i = 1, j = 0; i < n_; ++i) {
    std::size_t bit = n_ >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<Fr> twiddles(n_ / 2 > 0 ? n_ / 2 : 1);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    Fr w = root;
    for (std::size_t k = len; k < n_; k <<= 1) w = w.square();
    const std::size_t half = len / 2;
    twiddles[0] = Fr::one();
    for (std::size_t k = 1; k < half; ++k) twiddles[k] = twiddles[k - 1] * w;
    for (std::size_t i = 0; i < n_; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Fr u = a[i + k];
        const Fr v = a[i + k + half] * twiddles[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void EvaluationDomain::fft(std::span<Fr> a) const { transform(a, omega_); }

void EvaluationDomain::ifft(std::span<Fr> a) const {
  transform(a, omega_inv_);
  for (auto& x : a) x = x * n_inv_;
}

void EvaluationDomain::coset_fft(std::span<Fr> a) const {
  const Fr g = coset_generator();
  Fr pow = Fr::one();
  for (auto& x : a) {
    x = x * pow;
    pow = pow * g;
  }
  fft(a);
}

void EvaluationDomain::coset_ifft(std::span<Fr> a) const {
  ifft(a);
  const Fr g_inv = coset_generator().inverse();
  Fr pow = Fr::one();
  for (auto& x : a) {
    x = x * pow;
    pow = pow * g_inv;
  }
}

Fr EvaluationDomain::vanishing_at(const Fr& x) const {
  return x.pow(U256(n_)) - Fr::one();
}

std::vector<Fr> EvaluationDomain::lagrange_at(const Fr& tau) const {
  // L_i(tau) = Z(tau) * omega^i / (n * (tau - omega^i)).
  const Fr z = vanishing_at(tau);
  std::vector<Fr> out(n_);
  if (z.is_zero()) {
    Fr w = Fr::one();
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = (w == tau) ? Fr::one() : Fr::zero();
      w = w * omega_;
    }
    return out;
  }
  std::vector<Fr> denom(n_);
  Fr w = Fr::one();
  for (std::size_t i = 0; i < n_; ++i) {
    denom[i] = tau - w;
    w = w * omega_;
  }
  // Batch inversion.
  std::vector<Fr> prefix(n_);
  Fr acc = Fr::one();
  for (std::size_t i = 0; i < n_; ++i) {
    prefix[i] = acc;
    acc = acc * denom[i];
  }
  Fr inv = acc.inverse();
  for (std::size_t i = n_; i-- > 0;) {
    const Fr d_inv = inv * prefix[i];
    inv = inv * denom[i];
    denom[i] = d_inv;
  }
  const Fr scale = z * n_inv_;
  w = Fr::one();
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = scale * w * denom[i];
    w = w * omega_;
  }
  return out;
}

}  // namespace toxizk::snark
