// SPDX-License-Identifier: Apache-2.0
#include "toxizk/circuit/r1cs.hpp"

#include "toxizk/errors.hpp"

namespace toxizk::circuit {

LinearCombination LinearCombination::constant(const Fr& c) {
  return scaled(kOne, c);
}

LinearCombination LinearCombination::scaled(Wire w, const Fr& c) {
  LinearCombination lc;
  if (!c.is_zero()) lc.terms_.push_back({w, c});
  return lc;
}

bool LinearCombination::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].wire == kOne);
}

Fr LinearCombination::evaluate(std::span<const Fr> assignment) const {
  Fr acc;
  for (const auto& t : terms_) acc += t.coeff * assignment[t.wire];
  return acc;
}

LinearCombination LinearCombination::operator+(const LinearCombination& o) const {
  LinearCombination out;
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->wire < j->wire)) {
      out.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->wire < i->wire) {
      out.terms_.push_back(*j++);
    } else {
      const Fr sum = i->coeff + j->coeff;
      if (!sum.is_zero()) out.terms_.push_back({i->wire, sum});
      ++i;
      ++j;
    }
  }
  return out;
}

LinearCombination LinearCombination::operator-(const LinearCombination& o) const {
  return *this + o * -Fr::one();
}

LinearCombination LinearCombination::operator*(const Fr& k) const {
  LinearCombination out;
  if (k.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.wire, t.coeff * k});
  return out;
}

const char* to_string(Component c) {
  switch (c) {
    case Component::kHash: return "hash";
    case Component::kSafety: return "safety";
    case Component::kQed: return "qed";
    case Component::kSas: return "sas";
    case Component::kLipinski: return "lipinski";
    case Component::kSimilarity: return "similarity";
    case Component::kValidity: return "validity";
    case Component::kGlue: return "glue";
  }
  return "?";
}

std::optional<std::size_t> ConstraintSystem::first_unsatisfied(
    std::span<const Fr> assignment) const {
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& k = constraints[i];
    if (k.a.evaluate(assignment) * k.b.evaluate(assignment) != k.c.evaluate(assignment)) {
      return i;
    }
  }
  return std::nullopt;
}

Builder::Builder(Mode mode) : mode_(mode) {
  cs_.producer.push_back(-1);
  cs_.gadgets.push_back({"inputs", Component::kGlue});
  if (has_values()) values_.push_back(Fr::one());
}

Wire Builder::alloc_public_input(const Fr& value) {
  if (cs_.num_public_outputs != 0 || cs_.num_private_inputs != 0 || inputs_closed_) {
    throw SynthesisError("public inputs must be allocated first");
  }
  ++cs_.num_public_inputs;
  return alloc(value);
}

Wire Builder::alloc_public_output() {
  if (cs_.num_private_inputs != 0 || inputs_closed_) {
    throw SynthesisError("public outputs must precede private inputs");
  }
  ++cs_.num_public_outputs;
  return alloc();
}

Wire Builder::alloc_private_input(const Fr& value) {
  if (inputs_closed_) throw SynthesisError("private inputs must precede internal wires");
  ++cs_.num_private_inputs;
  return alloc(value);
}

Wire Builder::alloc(const Fr& value) {
  const auto w = static_cast<Wire>(cs_.num_wires++);
  cs_.producer.push_back(-1);
  if (has_values()) values_.push_back(value);
  return w;
}

void Builder::set_value(Wire w, const Fr& value) {
  if (has_values()) values_.at(w) = value;
}

Fr Builder::value(Wire w) const { return has_values() ? values_.at(w) : Fr::zero(); }

Fr Builder::value(const LC& lc) const {
  return has_values() ? lc.evaluate(values_) : Fr::zero();
}

void Builder::begin_gadget(std::string name, Component tag) {
  inputs_closed_ = true;
  current_tag_ = tag;
  current_gadget_ = static_cast<std::uint32_t>(cs_.gadgets.size());
  cs_.gadgets.push_back({std::move(name), tag});
}

void Builder::enforce(const LC& a, const LC& b, const LC& c,
                      std::initializer_list<Wire> produces) {
  enforce(a, b, c, std::span<const Wire>(produces.begin(), produces.size()));
}

void Builder::enforce(const LC& a, const LC& b, const LC& c, std::span<const Wire> produces) {
  if (!recording()) return;
  for (Wire w : produces) {
    cs_.producer.at(w) = static_cast<std::int64_t>(cs_.constraints.size());
  }
  cs_.constraints.push_back({a, b, c, current_tag_, current_gadget_});
}

ConstraintSystem Builder::finish() {
  for (const auto& k : cs_.constraints) {
    for (const LC* lc : {&k.a, &k.b, &k.c}) {
      for (const auto& t : lc->terms()) {
        if (t.wire >= cs_.num_wires) throw SynthesisError("constraint references unallocated wire");
      }
    }
  }
  return std::move(cs_);
}

}  // namespace toxizk::circuit
