#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "axtnn/common.hpp"
#include "axtnn/netlist.hpp"

namespace axtnn {

/// Node handle; 0 and 1 are the terminals.
using BddRef = uint32_t;

/// Reduced ordered BDD store with a fixed variable order (variables are
/// levels 0..num_vars-1). No complement edges, no reordering; nodes are
/// never freed — callers rebuild the manager when it grows too large.
class BddManager {
 public:
  static constexpr size_t kDefaultNodeBudget = 2'000'000;

  explicit BddManager(int num_vars, size_t node_budget = kDefaultNodeBudget);

  int num_vars() const { return num_vars_; }
  size_t node_count() const { return nodes_.size(); }
  size_t node_budget() const { return node_budget_; }

  BddRef zero() const { return 0; }
  BddRef one() const { return 1; }
  bool is_terminal(BddRef f) const { return f <= 1; }

  BddRef var(int v);

  BddRef apply_and(BddRef f, BddRef g);
  BddRef apply_or(BddRef f, BddRef g);
  BddRef apply_xor(BddRef f, BddRef g);
  BddRef apply_not(BddRef f) { return apply_xor(f, one()); }
  BddRef apply_xnor(BddRef f, BddRef g) { return apply_not(apply_xor(f, g)); }
  BddRef apply_gate(GateKind kind, BddRef a, BddRef b);

  /// Exact number of satisfying assignments over all num_vars variables.
  mpz_class sat_count(BddRef f);

  /// Any satisfying assignment (by variable); f must not be zero().
  std::vector<uint8_t> any_sat(BddRef f) const;

 private:
  struct Node {
    int var;
    BddRef lo, hi;
  };

  BddRef mk(int var, BddRef lo, BddRef hi);
  BddRef apply2(int op, BddRef f, BddRef g);

  int var_of(BddRef f) const { return nodes_[f].var; }

  int num_vars_;
  size_t node_budget_;
  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, BddRef> unique_;
  std::unordered_map<uint64_t, BddRef> cache_;
  std::unordered_map<BddRef, mpz_class> count_cache_;
};

/// One BDD per netlist output. var_of_input[i] is the BDD level of primary
/// input i; empty means identity order.
std::vector<BddRef> build_bdds(BddManager& mgr, const Netlist& net,
                               const std::vector<int>& var_of_input = {});

}  // namespace axtnn
