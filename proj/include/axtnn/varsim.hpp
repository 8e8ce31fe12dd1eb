#pragma once

#include <optional>
#include <vector>

#include "axtnn/tnn.hpp"

namespace axtnn {

struct VariationConfig {
  double sigma = 0.10;  // relative std-dev of the analog components
  int trials = 200;
  uint64_t seed = 1;

  void validate() const;
};

/// Flash reference-ladder taps t_i = i/2^k, each scaled by an independent
/// N(1, sigma^2) factor, re-sorted to restore monotonicity.
std::vector<double> perturb_thresholds(int k, double sigma, Rng& rng);

/// Thermometer quantization against an explicit (sorted) ladder: the code is
/// the number of thresholds at or below x. With nominal taps this equals
/// quantize(x, k).
int quantize_with_thresholds(double x, const std::vector<double>& thresholds);

struct VariationResult {
  std::vector<double> trial_accuracy;
  double mean = 0.0, stddev = 0.0, min = 0.0, max = 0.0;
  double nominal = 0.0;
};

/// Monte Carlo over analog-interface variation: every trial draws a fresh
/// perturbed ladder per input feature, re-quantizes the split and runs
/// inference (exact, or approximate under `assignment`). Deterministic under
/// cfg.seed; trial accuracy order is by trial index.
VariationResult mc_accuracy(const TnnModel& model,
                            const std::optional<ComponentAssignment>& assignment,
                            const ComponentLibrary* library, const Dataset& data, Split split,
                            const VariationConfig& cfg);

}  // namespace axtnn
