// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "toxizk/circuit/r1cs.hpp"

namespace toxizk::circuit {

struct ConstraintReport {
  std::size_t total = 0;
  std::size_t linear = 0;
  std::size_t nonlinear = 0;
  std::array<std::size_t, kNumComponents> per_component{};
  std::array<double, kNumComponents> share{};  // percent of total
  /// Longest chain of nonlinear constraints in which each one consumes a
  /// wire produced by its predecessor.
  std::size_t multiplicative_depth = 0;
  /// Longest path through the gadget dependency graph, in gadget instances.
  std::size_t gadget_depth = 0;
  /// Connected components of constraints that share an internal wire; a proxy
  /// for how many groups could be checked or assigned independently.
  std::size_t independent_groups = 0;
  std::size_t nonzero_terms = 0;
  double mean_terms_per_constraint = 0.0;
  std::size_t num_wires = 0;
  std::size_t num_public_inputs = 0;
  std::size_t num_private_inputs = 0;
  std::size_t num_public_outputs = 0;

  std::size_t count(Component c) const { return per_component[static_cast<std::size_t>(c)]; }
  double share_of(Component c) const { return share[static_cast<std::size_t>(c)]; }

  std::string to_json() const;
};

ConstraintReport analyze(const ConstraintSystem& cs);

}  // namespace toxizk::circuit
