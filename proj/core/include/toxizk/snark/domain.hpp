// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "toxizk/field/prime_field.hpp"

namespace toxizk::snark {

/// Radix-2 evaluation domain {omega^i} of size n over Fr.
class EvaluationDomain {
 public:
  static constexpr unsigned kTwoAdicity = 28;

  /// Smallest power-of-two domain holding `min_size` points.
  explicit EvaluationDomain(std::size_t min_size);

  std::size_t size() const { return n_; }
  const Fr& omega() const { return omega_; }
  static Fr coset_generator() { return Fr::from_u64(5); }

  void fft(std::span<Fr> a) const;
  void ifft(std::span<Fr> a) const;
  /// Evaluations on g * <omega>.
  void coset_fft(std::span<Fr> a) const;
  void coset_ifft(std::span<Fr> a) const;

  /// Z(x) = x^n - 1.
  Fr vanishing_at(const Fr& x) const;
  /// L_i(tau) for all i.
  std::vector<Fr> lagrange_at(const Fr& tau) const;

 private:
  void transform(std::span<Fr> a, const Fr& root) const;

  std::size_t n_;
  unsigned log_n_;
  Fr omega_;
  Fr omega_inv_;
  Fr n_inv_;
};

}  // namespace toxizk::snark
