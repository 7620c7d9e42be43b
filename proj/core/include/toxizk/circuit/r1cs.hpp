// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toxizk/field/prime_field.hpp"

namespace toxizk::circuit {

/// Index into the wire assignment. Wire 0 is the constant 1.
using Wire = std::uint32_t;
inline constexpr Wire kOne = 0;

struct Term {
  Wire wire;
  Fr coeff;
  bool operator==(const Term&) const = default;
};

/// Sparse linear combination sum(coeff * wire), kept sorted by wire with no
/// zero coefficients.
class LinearCombination {
 public:
  LinearCombination() = default;
  LinearCombination(Wire w) : terms_{{w, Fr::one()}} {}  // NOLINT(implicit)
  static LinearCombination constant(const Fr& c);
  static LinearCombination scaled(Wire w, const Fr& c);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// True when only the constant wire appears.
  bool is_constant() const;

  Fr evaluate(std::span<const Fr> assignment) const;

  LinearCombination operator+(const LinearCombination& o) const;
  LinearCombination operator-(const LinearCombination& o) const;
  LinearCombination operator*(const Fr& k) const;
  LinearCombination& operator+=(const LinearCombination& o) { return *this = *this + o; }

  bool operator==(const LinearCombination&) const = default;

 private:
  std::vector<Term> terms_;
};

using LC = LinearCombination;

/// Component tag attached to each constraint; drives the density report.
enum class Component : std::uint8_t {
  kHash,
  kSafety,
  kQed,
  kSas,
  kLipinski,
  kSimilarity,
  kValidity,
  kGlue,
};
inline constexpr std::size_t kNumComponents = 8;
const char* to_string(Component c);

struct Constraint {
  LC a;
  LC b;
  LC c;
  Component tag;
  /// Gadget instance that emitted the constraint.
  std::uint32_t gadget;

  /// A or B is a constant, so the constraint is linear in the wires.
  bool is_linear() const { return a.is_constant() || b.is_constant(); }
  bool operator==(const Constraint&) const = default;
};

struct GadgetInfo {
  std::string name;
  Component tag;
  bool operator==(const GadgetInfo&) const = default;
};

/// Immutable rank-1 constraint system. Wire layout:
///   0                      constant one
///   1 .. num_public        public inputs followed by public outputs
///   next num_private_inputs private inputs
///   remainder              internal wires
struct ConstraintSystem {
  std::size_t num_wires = 1;
  std::size_t num_public_inputs = 0;
  std::size_t num_public_outputs = 0;
  std::size_t num_private_inputs = 0;
  std::vector<Constraint> constraints;
  std::vector<GadgetInfo> gadgets;
  /// Constraint that determines each wire's value; -1 for inputs and for the
  /// constant wire.
  std::vector<std::int64_t> producer;

  std::size_t num_public() const { return num_public_inputs + num_public_outputs; }

  /// Index of the first unsatisfied constraint, or nullopt.
  std::optional<std::size_t> first_unsatisfied(std::span<const Fr> assignment) const;
  bool is_satisfied(std::span<const Fr> assignment) const {
    return assignment.size() == num_wires && !first_unsatisfied(assignment);
  }

  bool operator==(const ConstraintSystem&) const = default;
};

/// Records constraints and, when constructed with values, the assignment.
/// The same gadget code therefore serves synthesis and witness generation.
class Builder {
 public:
  enum class Mode { kSynthesize, kWitness, kWitnessOnly };

  explicit Builder(Mode mode);

  bool has_values() const { return mode_ != Mode::kSynthesize; }
  bool recording() const { return mode_ != Mode::kWitnessOnly; }

  Wire alloc_public_input(const Fr& value = Fr::zero());
  Wire alloc_public_output();
  Wire alloc_private_input(const Fr& value = Fr::zero());
  Wire alloc(const Fr& value = Fr::zero());

  void set_value(Wire w, const Fr& value);
  Fr value(Wire w) const;
  Fr value(const LC& lc) const;

  /// Starts a new gadget instance; subsequent constraints belong to it.
  void begin_gadget(std::string name, Component tag);

  /// a * b = c. `produces` lists the wires whose value this constraint
  /// determines; it feeds the dependency analysis only.
  void enforce(const LC& a, const LC& b, const LC& c,
               std::initializer_list<Wire> produces = {});
  void enforce(const LC& a, const LC& b, const LC& c, std::span<const Wire> produces);

  Component current_tag() const { return current_tag_; }

  ConstraintSystem finish();
  std::vector<Fr> take_values() { return std::move(values_); }

 private:
  Mode mode_;
  ConstraintSystem cs_;
  std::vector<Fr> values_;
  Component current_tag_ = Component::kGlue;
  std::uint32_t current_gadget_ = 0;
  bool inputs_closed_ = false;
};

}  // namespace toxizk::circuit
