#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "axtnn/complib.hpp"
#include "axtnn/model.hpp"

namespace axtnn {

/// Feature matrix with labels and a deterministic 70/30 split. Rows are kept
/// raw; normalization constants come from the train split only and are
/// applied (with clamping) on access.
struct Dataset {
  std::string name;
  Eigen::MatrixXd features;  // raw values
  std::vector<int> labels;   // 0..num_classes-1
  int num_classes = 0;
  std::vector<int> train_idx, test_idx;
  std::vector<double> feat_min, feat_max;

  int num_rows() const { return static_cast<int>(features.rows()); }
  int num_features() const { return static_cast<int>(features.cols()); }

  /// Min-max normalized value, clamped to [0, 1]; constant features map to 0.
  double normalized(int row, int col) const;
  std::vector<int> quantized_row(int row, int k) const;

  /// Rectangular numeric CSV (optional header row), labels in `label_col`
  /// (-1 = last). Split and stats are deterministic under seed.
  static Dataset ingest_csv(const std::string& path, int label_col = -1, uint64_t seed = 1,
                            double train_fraction = 0.7);
};

struct TrainConfig {
  int epochs = 30;
  int batch = 32;
  std::vector<double> learning_rates = {0.001, 0.003, 0.01};
  int restarts = 3;
  double eval_fraction = 0.2;  // tail of the train split, used for checkpointing
  /// Coordinate-descent sweeps on the ternary weights after STE training.
  int polish_sweeps = 3;
  uint64_t seed = 1;
};

/// Straight-through-estimator trainer: real shadow weights, per-layer
/// ternarization at 0.7 * mean|w| each forward pass, Adam updates, sign and
/// argmax semantics identical to the hardware. Returns the best checkpoint
/// (eval-slice accuracy, train accuracy as tie-break) over the learning-rate
/// grid and restarts. Deterministic under cfg.seed.
TnnModel train(const Dataset& data, int k, int m, const TrainConfig& cfg);

/// Grid search over hidden sizes; picks the best eval accuracy, smaller m on
/// ties. ms must be within [1, 50].
TnnModel train_grid(const Dataset& data, int k, const std::vector<int>& ms, const TrainConfig& cfg);

/// Integer-only reference semantics (Eqs. of the bespoke circuit):
/// y = sign(W1 x) with sign(0)=1, encoded outputs o = W2 y + m = 2P + Z,
/// class = argmax with lowest-index ties.
std::vector<int> hidden_activations(const TnnModel& model, const std::vector<int>& codes);
std::vector<long> encoded_outputs(const TnnModel& model, const std::vector<int>& codes);
int infer_exact(const TnnModel& model, const std::vector<int>& codes);

/// Per-neuron component selection; ids resolve in a ComponentLibrary.
struct ComponentAssignment {
  std::vector<std::string> hidden_ids;  // one per hidden neuron
  std::vector<std::string> output_ids;  // one per output neuron

  void save(const std::string& path) const;
  static ComponentAssignment load(const std::string& path);
};

/// The library key each hidden neuron needs.
ComponentKey hidden_neuron_key(const TnnModel& model, int neuron);
ComponentKey output_neuron_key(const TnnModel& model, int neuron);
/// All-exact assignment; throws if the library lacks an exact component.
ComponentAssignment exact_assignment(const TnnModel& model, const ComponentLibrary& lib);
void validate_assignment(const TnnModel& model, const ComponentAssignment& a,
                         const ComponentLibrary& lib);

/// Software inference with the assigned approximate netlists substituted for
/// the hidden LTGs and output popcounts; Z-add and argmax stay exact.
std::vector<long> encoded_outputs_approx(const TnnModel& model, const ComponentAssignment& a,
                                         const ComponentLibrary& lib, const std::vector<int>& codes);
int infer_approx(const TnnModel& model, const ComponentAssignment& a, const ComponentLibrary& lib,
                 const std::vector<int>& codes);

enum class Split { Train, Test };

/// Classification accuracy over a split; approximate when an assignment is
/// given. Empty splits are contract errors.
double accuracy(const TnnModel& model, const std::optional<ComponentAssignment>& assignment,
                const ComponentLibrary* lib, const Dataset& data, Split split);

/// min over samples of (o_top1 - o_top2), in encoded-output units.
long confidence_margin(const TnnModel& model, const std::optional<ComponentAssignment>& assignment,
                       const ComponentLibrary* lib, const Dataset& data, Split split);

}  // namespace axtnn
