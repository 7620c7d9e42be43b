// SPDX-License-Identifier: Apache-2.0
#include "toxizk/circuit/analyze.hpp"

#include <numeric>
#include <set>
#include <vector>

#include "json.hpp"
#include "toxizk/errors.hpp"

namespace toxizk::circuit {
namespace {

template <class F>
void for_each_wire(const Constraint& k, F&& f) {
  for (const LC* lc : {&k.a, &k.b, &k.c}) {
    for (const auto& t : lc->terms()) f(t.wire);
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Longest-path evaluation over an implicit DAG with memoisation. `deps(i)`
// yields predecessor indices; `weight(i)` is the node's own contribution.
template <class Deps, class Weight>
std::vector<std::size_t> longest_paths(std::size_t n, Deps&& deps, Weight&& weight) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  constexpr std::size_t kVisiting = static_cast<std::size_t>(-2);
  std::vector<std::size_t> memo(n, kUnset);
  std::vector<std::pair<std::size_t, bool>> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (memo[root] != kUnset) continue;
    stack.push_back({root, false});
    while (!stack.empty()) {
      auto [node, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        std::size_t best = 0;
        for (std::size_t d : deps(node)) best = std::max(best, memo[d]);
        memo[node] = best + weight(node);
        continue;
      }
      if (memo[node] != kUnset && memo[node] != kVisiting) continue;
      if (memo[node] == kVisiting) throw SynthesisError("cyclic dependency in constraint system");
      memo[node] = kVisiting;
      stack.push_back({node, true});
      for (std::size_t d : deps(node)) {
        if (memo[d] == kVisiting) throw SynthesisError("cyclic dependency in constraint system");
        if (memo[d] == kUnset) stack.push_back({d, false});
      }
    }
  }
  return memo;
}

}  // namespace

ConstraintReport analyze(const ConstraintSystem& cs) {
  ConstraintReport r;
  r.total = cs.constraints.size();
  r.num_wires = cs.num_wires;
  r.num_public_inputs = cs.num_public_inputs;
  r.num_private_inputs = cs.num_private_inputs;
  r.num_public_outputs = cs.num_public_outputs;
  if (r.total == 0) return r;

  for (const auto& k : cs.constraints) {
    (k.is_linear() ? r.linear : r.nonlinear) += 1;
    r.per_component[static_cast<std::size_t>(k.tag)] += 1;
    r.nonzero_terms += k.a.terms().size() + k.b.terms().size() + k.c.terms().size();
  }
  for (std::size_t i = 0; i < kNumComponents; ++i) {
    r.share[i] = 100.0 * static_cast<double>(r.per_component[i]) / static_cast<double>(r.total);
  }
  r.mean_terms_per_constraint = static_cast<double>(r.nonzero_terms) / static_cast<double>(r.total);

  // Constraint-level dependencies: every wire read that some other
  // constraint produces.
  std::vector<std::vector<std::size_t>> cdeps(r.total);
  for (std::size_t i = 0; i < r.total; ++i) {
    std::set<std::size_t> seen;
    for_each_wire(cs.constraints[i], [&](Wire w) {
      const std::int64_t p = cs.producer[w];
      if (p >= 0 && static_cast<std::size_t>(p) != i) seen.insert(static_cast<std::size_t>(p));
    });
    cdeps[i].assign(seen.begin(), seen.end());
  }
  const auto depth = longest_paths(
      r.total, [&](std::size_t i) -> const std::vector<std::size_t>& { return cdeps[i]; },
      [&](std::size_t i) -> std::size_t { return cs.constraints[i].is_linear() ? 0 : 1; });
  for (auto d : depth) r.multiplicative_depth = std::max(r.multiplicative_depth, d);

  // Gadget-level dependencies.
  const std::size_t ng = cs.gadgets.size();
  std::vector<std::set<std::size_t>> gset(ng);
  for (std::size_t i = 0; i < r.total; ++i) {
    const std::size_t g = cs.constraints[i].gadget;
    for (std::size_t d : cdeps[i]) {
      const std::size_t h = cs.constraints[d].gadget;
      if (h != g) gset[g].insert(h);
    }
  }
  std::vector<std::vector<std::size_t>> gdeps(ng);
  for (std::size_t g = 0; g < ng; ++g) gdeps[g].assign(gset[g].begin(), gset[g].end());
  std::vector<bool> has_constraints(ng, false);
  for (const auto& k : cs.constraints) has_constraints[k.gadget] = true;
  const auto gdepth = longest_paths(
      ng, [&](std::size_t g) -> const std::vector<std::size_t>& { return gdeps[g]; },
      [&](std::size_t g) -> std::size_t { return has_constraints[g] ? 1 : 0; });
  for (auto d : gdepth) r.gadget_depth = std::max(r.gadget_depth, d);

  // Independent groups: constraints linked through internal wires.
  const std::size_t first_internal = 1 + cs.num_public() + cs.num_private_inputs;
  UnionFind uf(r.total);
  std::vector<std::int64_t> first_user(cs.num_wires, -1);
  for (std::size_t i = 0; i < r.total; ++i) {
    for_each_wire(cs.constraints[i], [&](Wire w) {
      if (w < first_internal) return;
      if (first_user[w] < 0) {
        first_user[w] = static_cast<std::int64_t>(i);
      } else {
        uf.unite(i, static_cast<std::size_t>(first_user[w]));
      }
    });
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < r.total; ++i) roots.insert(uf.find(i));
  r.independent_groups = roots.size();
  return r;
}

std::string ConstraintReport::to_json() const {
  nlohmann::ordered_json j;
  j["total_constraints"] = total;
  j["linear_constraints"] = linear;
  j["nonlinear_constraints"] = nonlinear;
  nlohmann::ordered_json comp = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kNumComponents; ++i) {
    comp[to_string(static_cast<Component>(i))] = {{"constraints", per_component[i]},
                                                 {"share_percent", share[i]}};
  }
  j["components"] = comp;
  j["multiplicative_depth"] = multiplicative_depth;
  j["gadget_depth"] = gadget_depth;
  j["independent_groups"] = independent_groups;
  j["nonzero_terms"] = nonzero_terms;
  j["mean_terms_per_constraint"] = mean_terms_per_constraint;
  j["wires"] = num_wires;
  j["public_inputs"] = num_public_inputs;
  j["private_inputs"] = num_private_inputs;
  j["public_outputs"] = num_public_outputs;
  return j.dump(2);
}

}  // namespace toxizk::circuit
