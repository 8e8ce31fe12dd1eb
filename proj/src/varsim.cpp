#include "axtnn/varsim.hpp"

#include <algorithm>
#include <cmath>

namespace axtnn {

void VariationConfig::validate() const {
  if (sigma < 0) throw ContractError("sigma must be >= 0");
  if (trials < 1) throw ContractError("need at least one trial");
}

std::vector<double> perturb_thresholds(int k, double sigma, Rng& rng) {
  if (k < 1 || k > 4) throw ContractError("precision must be in 1..4");
  if (sigma < 0) throw ContractError("sigma must be >= 0");
  int levels = 1 << k;
  std::vector<double> taps(levels - 1);
  for (int i = 1; i < levels; ++i) {
    double nominal = static_cast<double>(i) / levels;
    taps[i - 1] = nominal * (1.0 + sigma * rng.gaussian());
  }
  std::sort(taps.begin(), taps.end());
  return taps;
}

int quantize_with_thresholds(double x, const std::vector<double>& thresholds) {
  int code = 0;
  for (double t : thresholds) code += x >= t;
  return code;
}

VariationResult mc_accuracy(const TnnModel& model,
                            const std::optional<ComponentAssignment>& assignment,
                            const ComponentLibrary* library, const Dataset& data, Split split,
                            const VariationConfig& cfg) {
  cfg.validate();
  if (assignment && !library) throw ContractError("assignment given without a library");
  const auto& rows = split == Split::Train ? data.train_idx : data.test_idx;
  if (rows.empty()) throw ContractError("variation analysis over an empty split");

  VariationResult result;
  result.nominal = accuracy(model, assignment, library, data, split);
  result.trial_accuracy.reserve(cfg.trials);
  std::vector<std::vector<double>> ladders(model.n);
  std::vector<int> codes(model.n);

  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, "mc:" + model.dataset + ":trial" + std::to_string(trial)));
    for (int i = 0; i < model.n; ++i) ladders[i] = perturb_thresholds(model.k, cfg.sigma, rng);
    int correct = 0;
    for (int row : rows) {
      for (int i = 0; i < model.n; ++i)
        codes[i] = quantize_with_thresholds(data.normalized(row, i), ladders[i]);
      int cls = assignment ? infer_approx(model, *assignment, *library, codes)
                           : infer_exact(model, codes);
      correct += cls == data.labels[row];
    }
    result.trial_accuracy.push_back(static_cast<double>(correct) / static_cast<double>(rows.size()));
  }

  double sum = 0;
  result.min = result.trial_accuracy.front();
  result.max = result.trial_accuracy.front();
  for (double a : result.trial_accuracy) {
    sum += a;
    result.min = std::min(result.min, a);
    result.max = std::max(result.max, a);
  }
  result.mean = sum / cfg.trials;
  double var = 0;
  for (double a : result.trial_accuracy) var += (a - result.mean) * (a - result.mean);
  result.stddev = cfg.trials > 1 ? std::sqrt(var / (cfg.trials - 1)) : 0.0;
  return result;
}

}  // namespace axtnn
