#pragma once

#include <string>
#include <vector>

#include "axtnn/tnn.hpp"

namespace axtnn {

/// Surrogate classifier area: sum of the assigned components' areas plus the
/// model's fixed assembly overhead (argmax, Z-adders, output inverters).
/// Equals the assembled netlist's gate-area sum exactly.
double surrogate_area(const TnnModel& model, const ComponentAssignment& assignment,
                      const ComponentLibrary& library, const CellLibrary& cells);

struct NsgaConfig {
  int population = 64;
  int generations = 100;
  double crossover_prob = 0.9;  // uniform gene crossover
  double mutation_rate = 0.0;   // per-gene reset probability; 0 = 1/genes
  double eval_fraction = 0.2;   // held-out tail of the train split
  uint64_t seed = 1;
};

/// One point of an accuracy/area front.
struct ParetoPoint {
  double accuracy_test = 0.0;
  double accuracy_eval = 0.0;
  double est_area = 0.0;  // classifier surrogate area, technology units
  int k = 0;
  ConverterKind interface_kind = ConverterKind::Abc;
  double total_area_mm2 = 0.0;
  double total_power_mw = 0.0;
  std::string assignment_id;
  ComponentAssignment assignment;
};

/// NSGA-II over the per-neuron component choice (integer list, one gene per
/// hidden and output neuron). Objectives: minimize eval-slice accuracy loss
/// and surrogate area. The all-exact individual is injected at generation 0.
/// Returns the deduplicated rank-0 set with test accuracy filled in for
/// reporting; deterministic under cfg.seed.
std::vector<ParetoPoint> nsga2(const TnnModel& model, const ComponentLibrary& library,
                               const Dataset& data, const CellLibrary& cells, const NsgaConfig& cfg);

/// Adds per-precision interface costs (ABC at k=1, Flash otherwise; one
/// converter per input feature), merges the fronts and re-filters dominance
/// on (test accuracy up, total area down).
std::vector<ParetoPoint> system_pareto(const std::vector<std::vector<ParetoPoint>>& fronts_per_k,
                                       const InterfaceCostTable& table, int num_features,
                                       const CellLibrary& cells);

/// Area of the union of origin-anchored rectangles [0,x]x[0,y] over the
/// normalized points; lower is better. Points must lie in [0,1]^2.
double inverted_hypervolume(const std::vector<std::pair<double, double>>& normalized_points);

/// True iff no point in `front` dominates another (minimization in both
/// coordinates); the independent audit for emitted fronts.
bool mutually_nondominated(const std::vector<std::pair<double, double>>& front);

}  // namespace axtnn
