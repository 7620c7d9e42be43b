// SPDX-License-Identifier: Apache-2.0
#include "toxizk/circuit/gadgets.hpp"

#include "toxizk/errors.hpp"
#include "toxizk/poseidon.hpp"

namespace toxizk::circuit {
namespace {

Fr pow2(unsigned k) {
  U256 v;
  v.limb[k / 64] = std::uint64_t{1} << (k % 64);
  return Fr::from_canonical(v);
}

}  // namespace

void enforce_boolean(Builder& b, const LC& x, Component tag, const std::string& name) {
  b.begin_gadget(name, tag);
  b.enforce(x, x - LC(kOne), LC());
}

std::vector<Wire> range_check(Builder& b, const LC& x, unsigned bits, Component tag,
                              const std::string& name) {
  b.begin_gadget(name, tag);
  U256 v;
  if (b.has_values()) {
    v = b.value(x).to_u256();
    if (v.bit_length() > bits) {
      throw WitnessError(name + ": value does not fit in " + std::to_string(bits) + " bits");
    }
  }
  std::vector<Wire> out;
  out.reserve(bits);
  LC packed;
  for (unsigned i = 0; i < bits; ++i) {
    const Wire w = b.alloc(v.bit(i) ? Fr::one() : Fr::zero());
    out.push_back(w);
    packed += LC::scaled(w, pow2(i));
  }
  for (Wire w : out) b.enforce(LC(w), LC(w) - LC(kOne), LC());
  b.enforce(packed, LC(kOne), x, out);
  return out;
}

Wire greater_or_equal(Builder& b, const LC& lhs, const LC& rhs, unsigned bits,
                      Component tag, const std::string& name) {
  const LC shifted = lhs + LC::constant(pow2(bits)) - rhs;
  return range_check(b, shifted, bits + 1, tag, name).back();
}

Wire is_equal_to(Builder& b, const LC& x, const Fr& k, Component tag, const std::string& name) {
  b.begin_gadget(name, tag);
  const Fr diff_value = b.value(x) - k;
  const Wire inv = b.alloc(diff_value.is_zero() ? Fr::zero() : diff_value.inverse());
  const Wire out = b.alloc(diff_value.is_zero() ? Fr::one() : Fr::zero());
  const LC diff = x - LC::constant(k);
  b.enforce(diff, LC(inv), LC(kOne) - LC(out), {inv, out});
  b.enforce(diff, LC(out), LC());
  return out;
}

Wire select(Builder& b, const LC& sel, const LC& if_zero, const LC& if_one, Component tag,
            const std::string& name) {
  b.begin_gadget(name, tag);
  const Fr z = b.value(if_zero);
  const Wire out = b.alloc(z + b.value(sel) * (b.value(if_one) - z));
  b.enforce(sel, if_one - if_zero, LC(out) - if_zero, {out});
  return out;
}

void conjunction(Builder& b, std::span<const Wire> bits, Wire output, Component tag,
                 const std::string& name) {
  if (bits.size() < 2) throw SynthesisError("conjunction needs at least two inputs");
  b.begin_gadget(name, tag);
  Wire acc = bits[0];
  for (std::size_t i = 1; i < bits.size(); ++i) {
    const bool last = i + 1 == bits.size();
    const Fr prod = b.value(acc) * b.value(bits[i]);
    const Wire next = last ? output : b.alloc(prod);
    if (last) b.set_value(output, prod);
    b.enforce(LC(acc), LC(bits[i]), LC(next), {next});
    acc = next;
  }
}

TrackedValue poseidon_hash_gadget(Builder& b, std::span<const TrackedValue> inputs,
                                  const std::string& name) {
  b.begin_gadget(name, Component::kHash);
  const auto& params = poseidon_params(inputs.size() + 1);
  const std::size_t t = params.width;
  // Outside recording mode only the values are tracked; the symbolic state
  // would be discarded anyway.
  const bool rec = b.recording();

  std::vector<TrackedValue> state;
  state.reserve(t);
  state.push_back({LC(), Fr::zero()});
  state.insert(state.end(), inputs.begin(), inputs.end());

  const auto sbox = [&](TrackedValue x) {
    const Fr x2v = x.value.square();
    const Fr x4v = x2v.square();
    const Fr x5v = x4v * x.value;
    const Wire x2 = b.alloc(x2v);
    const Wire x4 = b.alloc(x4v);
    const Wire x5 = b.alloc(x5v);
    if (rec) {
      b.enforce(x.lc, x.lc, LC(x2), {x2});
      b.enforce(LC(x2), LC(x2), LC(x4), {x4});
      b.enforce(LC(x4), x.lc, LC(x5), {x5});
    }
    return TrackedValue{rec ? LC(x5) : LC(), x5v};
  };

  std::vector<TrackedValue> next(t);
  for (std::size_t r = 0; r < params.total_rounds(); ++r) {
    for (std::size_t i = 0; i < t; ++i) {
      const Fr& c = params.constant(r, i);
      state[i].value += c;
      if (rec) state[i].lc += LC::constant(c);
    }
    if (params.is_full_round(r)) {
      for (auto& s : state) s = sbox(s);
    } else {
      state[0] = sbox(state[0]);
    }
    for (std::size_t i = 0; i < t; ++i) {
      TrackedValue acc{LC(), Fr::zero()};
      for (std::size_t j = 0; j < t; ++j) {
        const Fr& m = params.mds_at(i, j);
        acc.value += m * state[j].value;
        if (rec) acc.lc += state[j].lc * m;
      }
      next[i] = std::move(acc);
    }
    state.swap(next);
  }
  return std::move(state[0]);
}

}  // namespace toxizk::circuit
