// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "toxizk/circuit/r1cs.hpp"

namespace toxizk::circuit {

/// x * (x - 1) = 0.
void enforce_boolean(Builder& b, const LC& x, Component tag, const std::string& name);

/// Decomposes x into `bits` boolean wires (little-endian) and enforces the
/// packing. In witness modes throws WitnessError if x ≥ 2^bits.
std::vector<Wire> range_check(Builder& b, const LC& x, unsigned bits, Component tag,
                              const std::string& name);

/// Returns a wire equal to [a ≥ b]. Both operands must already be range
/// checked below 2^bits; the gadget decomposes a + 2^bits - b into bits+1
/// bits and exposes the top one.
Wire greater_or_equal(Builder& b, const LC& lhs, const LC& rhs, unsigned bits,
                      Component tag, const std::string& name);

/// Returns a wire equal to [x == k] via the inverse-or-zero trick.
Wire is_equal_to(Builder& b, const LC& x, const Fr& k, Component tag, const std::string& name);

/// out = if_zero + sel * (if_one - if_zero).
Wire select(Builder& b, const LC& sel, const LC& if_zero, const LC& if_one, Component tag,
            const std::string& name);

/// Product of boolean wires; the final product is written into `output`.
void conjunction(Builder& b, std::span<const Wire> bits, Wire output, Component tag,
                 const std::string& name);

/// Value tracked next to its symbolic form; `lc` stays empty when the
/// builder is not recording constraints.
struct TrackedValue {
  LC lc;
  Fr value;
};

/// In-circuit Poseidon with the width-(n+1) instance; returns slot 0 of the
/// final state as a linear combination over allocated wires.
TrackedValue poseidon_hash_gadget(Builder& b, std::span<const TrackedValue> inputs,
                                  const std::string& name);

}  // namespace toxizk::circuit
