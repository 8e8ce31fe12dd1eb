#include "axtnn/bdd.hpp"

namespace axtnn {

namespace {

constexpr int kOpAnd = 0;
constexpr int kOpOr = 1;
constexpr int kOpXor = 2;

inline uint64_t pack3(uint64_t a, uint64_t b, uint64_t c) {
  // 2 op bits | 31 bits | 31 bits
  return (a << 62) | (b << 31) | c;
}

}  // namespace

BddManager::BddManager(int num_vars, size_t node_budget)
    : num_vars_(num_vars), node_budget_(node_budget) {
  if (num_vars < 0) throw ContractError("negative variable count");
  // unique-table keys pack (var, lo, hi) into 64 bits; refs must stay below 2^24
  if (node_budget_ > (1u << 24) - 1) node_budget_ = (1u << 24) - 1;
  // terminals: var = num_vars acts as the bottom level
  nodes_.push_back({num_vars, 0, 0});
  nodes_.push_back({num_vars, 1, 1});
}

BddRef BddManager::mk(int var, BddRef lo, BddRef hi) {
  if (lo == hi) return lo;
  uint64_t key = (static_cast<uint64_t>(var) << 48) ^ (static_cast<uint64_t>(lo) << 24) ^ hi;
  auto it = unique_.find(key);
  if (it != unique_.end()) {
    const Node& n = nodes_[it->second];
    if (n.var == var && n.lo == lo && n.hi == hi) return it->second;
  }
  if (nodes_.size() >= node_budget_)
    throw BudgetError("BDD node budget exceeded (" + std::to_string(node_budget_) + " nodes)");
  nodes_.push_back({var, lo, hi});
  BddRef ref = static_cast<BddRef>(nodes_.size() - 1);
  unique_[key] = ref;
  return ref;
}

BddRef BddManager::var(int v) {
  if (v < 0 || v >= num_vars_) throw ContractError("BDD variable out of range");
  return mk(v, zero(), one());
}

BddRef BddManager::apply2(int op, BddRef f, BddRef g) {
  switch (op) {
    case kOpAnd:
      if (f == 0 || g == 0) return 0;
      if (f == 1) return g;
      if (g == 1) return f;
      if (f == g) return f;
      break;
    case kOpOr:
      if (f == 1 || g == 1) return 1;
      if (f == 0) return g;
      if (g == 0) return f;
      if (f == g) return f;
      break;
    case kOpXor:
      if (f == g) return 0;
      if (f == 0) return g;
      if (g == 0) return f;
      break;
  }
  if (f > g) std::swap(f, g);  // all three ops commute
  uint64_t key = pack3(static_cast<uint64_t>(op), f, g);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  int vf = var_of(f), vg = var_of(g);
  int v = std::min(vf, vg);
  BddRef f0 = vf == v ? nodes_[f].lo : f;
  BddRef f1 = vf == v ? nodes_[f].hi : f;
  BddRef g0 = vg == v ? nodes_[g].lo : g;
  BddRef g1 = vg == v ? nodes_[g].hi : g;
  BddRef r = mk(v, apply2(op, f0, g0), apply2(op, f1, g1));
  cache_[key] = r;
  return r;
}

BddRef BddManager::apply_and(BddRef f, BddRef g) { return apply2(kOpAnd, f, g); }
BddRef BddManager::apply_or(BddRef f, BddRef g) { return apply2(kOpOr, f, g); }
BddRef BddManager::apply_xor(BddRef f, BddRef g) { return apply2(kOpXor, f, g); }

BddRef BddManager::apply_gate(GateKind kind, BddRef a, BddRef b) {
  switch (kind) {
    case GateKind::Const0:
      return zero();
    case GateKind::Const1:
      return one();
    case GateKind::Not:
      return apply_not(a);
    case GateKind::Buf:
      return a;
    case GateKind::And2:
      return apply_and(a, b);
    case GateKind::Or2:
      return apply_or(a, b);
    case GateKind::Nand2:
      return apply_not(apply_and(a, b));
    case GateKind::Nor2:
      return apply_not(apply_or(a, b));
    case GateKind::Xor2:
      return apply_xor(a, b);
    case GateKind::Xnor2:
      return apply_xnor(a, b);
  }
  throw ContractError("unknown gate kind");
}

namespace {

mpz_class pow2(int e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return v;
}

}  // namespace

mpz_class BddManager::sat_count(BddRef f) {
  if (f == 0) return 0;
  // recursion counts assignments of variables strictly below a node's level,
  // with the terminal-one base; scale by the levels above the root at the end
  struct Rec {
    BddManager* m;
    mpz_class run(BddRef r) {
      if (r == 0) return 0;
      if (r == 1) return 1;
      auto it = m->count_cache_.find(r);
      if (it != m->count_cache_.end()) return it->second;
      const Node& n = m->nodes_[r];
      mpz_class lo = run(n.lo) * pow2(m->var_of(n.lo) - n.var - 1);
      mpz_class hi = run(n.hi) * pow2(m->var_of(n.hi) - n.var - 1);
      mpz_class total = lo + hi;
      m->count_cache_[r] = total;
      return total;
    }
  } rec{this};
  return rec.run(f) * pow2(var_of(f));
}

std::vector<uint8_t> BddManager::any_sat(BddRef f) const {
  if (f == 0) throw ContractError("any_sat on the zero function");
  std::vector<uint8_t> assign(num_vars_, 0);
  while (!is_terminal(f)) {
    const Node& n = nodes_[f];
    if (n.hi != 0) {
      assign[n.var] = 1;
      f = n.hi;
    } else {
      f = n.lo;
    }
  }
  return assign;
}

std::vector<BddRef> build_bdds(BddManager& mgr, const Netlist& net,
                               const std::vector<int>& var_of_input) {
  if (!var_of_input.empty() && var_of_input.size() != net.num_inputs())
    throw ContractError("variable order length mismatch");
  std::vector<BddRef> value(net.num_signals());
  for (size_t i = 0; i < net.num_inputs(); ++i)
    value[i] = mgr.var(var_of_input.empty() ? static_cast<int>(i) : var_of_input[i]);
  size_t base = net.num_inputs();
  const auto& gates = net.gates();
  for (size_t i = 0; i < gates.size(); ++i)
    value[base + i] = mgr.apply_gate(gates[i].kind, value[gates[i].a], value[gates[i].b]);
  std::vector<BddRef> out;
  out.reserve(net.num_outputs());
  for (SignalId s : net.outputs()) out.push_back(value[s]);
  return out;
}

}  // namespace axtnn
