#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "axtnn/bdderr.hpp"
#include "axtnn/netlist.hpp"

namespace axtnn {

/// Integer-encoded feed-forward gate netlist on a 1xL grid, arity 2,
/// unrestricted levels-back. Node genes are (fanin1, fanin2, function);
/// fanins address primary inputs or earlier columns only.
struct Genome {
  int num_inputs = 0;
  int num_outputs = 0;
  struct NodeGene {
    int a, b, fn;
    bool operator==(const NodeGene&) const = default;
  };
  std::vector<NodeGene> nodes;
  std::vector<int> output_genes;
  std::vector<std::string> input_names;

  int length() const { return static_cast<int>(nodes.size()); }
  int gene_count() const { return 3 * length() + num_outputs; }

  /// Active-node decode: only nodes reachable from the outputs become gates.
  Netlist decode() const;

  /// Seed genome embedding an exact netlist into the first columns of a
  /// grid of length L (default 2x the seed gate count); the spare columns
  /// are filled deterministically from rng and start inactive.
  static Genome from_netlist(const Netlist& seed, Rng& rng, int length = 0);

  bool operator==(const Genome&) const = default;
};

/// Exactly `count` uniformly chosen genes are re-sampled to new legal
/// values (always different from the old one).
void mutate(Genome& genome, int count, Rng& rng);

enum class EvaluatorKind { Auto, Bdd, Enumerate };

struct CgpConfig {
  int lambda = 4;
  /// Mutations per offspring; 0 = max(1, 1% of genes).
  int mutations = 0;
  long max_iterations = 0;           // 0 = unlimited (wall clock must be set)
  double wall_clock_seconds = 0.0;   // 0 = unlimited (iterations must be set)
  ErrorMetric metric = ErrorMetric::Mae;
  /// Error threshold tau; candidates above it score +infinity.
  double tau = 0.0;
  uint64_t seed = 1;
  int grid_length = 0;  // 0 = 2x seed gate count
  EvaluatorKind evaluator = EvaluatorKind::Auto;
  size_t node_budget = BddManager::kDefaultNodeBudget;

  void validate() const;
};

struct EnumContext;

/// Error oracle for CGP fitness: a reusable exact-vs-candidate analyzer.
/// Auto picks exhaustive enumeration up to 14 inputs, BDDs otherwise; both
/// produce identical exact rationals.
class FitnessEvaluator {
 public:
  /// LTG mode. The spec supplies the reference weighted sum.
  FitnessEvaluator(const Netlist& exact, const LtgSpec& spec, EvaluatorKind kind, size_t node_budget);
  /// Popcount (arithmetic) mode.
  FitnessEvaluator(const Netlist& exact, EvaluatorKind kind, size_t node_budget);
  ~FitnessEvaluator();

  ErrorReport error(const Netlist& candidate);
  ErrorMode mode() const { return mode_; }

 private:
  ErrorMode mode_;
  bool enumerate_;
  Netlist exact_;
  std::optional<LtgSpec> spec_;
  std::unique_ptr<LtgErrorAnalyzer> ltg_;
  std::unique_ptr<PopcountErrorAnalyzer> pc_;
  std::unique_ptr<EnumContext> enum_;
};

/// F(c) = area of the active decode when error <= tau, +infinity otherwise.
/// A BudgetError inside the analyzer also maps to +infinity (logged).
double fitness(const Genome& genome, FitnessEvaluator& eval, const CellLibrary& lib,
               ErrorMetric metric, const mpq_class& tau, ErrorReport* report_out = nullptr,
               long* budget_trips = nullptr);

struct EvolutionResult {
  Genome best;
  double best_area = 0.0;
  ErrorReport best_report;
  long iterations = 0;
  long budget_trips = 0;  // evaluations dropped for exceeding the BDD budget
  double seconds = 0.0;
  /// (iteration, best feasible area) at every improvement; monotone.
  std::vector<std::pair<long, double>> history;
};

/// (lambda + 1) evolution strategy with neutral drift. The seed netlist
/// must be error-free under the metric; the best-ever feasible genome is
/// returned and independently re-verified with a BDD analysis.
EvolutionResult evolve(const Netlist& seed, const std::optional<LtgSpec>& ltg_spec,
                       const CellLibrary& lib, const CgpConfig& cfg);

}  // namespace axtnn
