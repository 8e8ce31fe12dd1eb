#pragma once

#include <optional>
#include <vector>

#include "axtnn/model.hpp"
#include "axtnn/netlist.hpp"

namespace axtnn {

/// Hidden-neuron spec: ternary weights over k-bit unsigned inputs. Zero
/// weights are dropped before generation; the generated netlist's input
/// order is canonical (positive-weight words first, then negative, k bits
/// each, LSB first), so one circuit serves every neuron with the same
/// (positives, negatives, k) signature.
struct LtgSpec {
  std::vector<int> weights;  // over {-1, 0, +1}
  int k = 1;

  int n_pos() const;
  int n_neg() const;
  int input_bits() const { return (n_pos() + n_neg()) * k; }
  /// max |weighted sum| reachable
  long max_abs_sum() const;

  void validate(int max_input_bits = kDefaultMaxInputBits) const;
  static constexpr int kDefaultMaxInputBits = 90;
};

enum class LtgStyle { OneTree, TwoTree };

/// Single-output netlist computing [sum w_i x_i >= 0] (sign(0) = 1).
Netlist gen_ltg_exact(const LtgSpec& spec, LtgStyle style = LtgStyle::TwoTree,
                      int max_input_bits = LtgSpec::kDefaultMaxInputBits);

struct PopcountSpec {
  int m = 1;  // single-bit inputs
  /// Output width: all values 0..m representable.
  int g() const { return bit_width(static_cast<uint64_t>(m)); }
  void validate() const;
};

/// g-output unsigned netlist summing m bits.
Netlist gen_popcount_exact(const PopcountSpec& spec);

enum class TruncationMode { DropInputs, DropOutputLsbs };

/// Truncation baseline: drops the last t inputs (default) or zeroes the
/// t output LSBs. Interface identical to the exact circuit.
Netlist gen_popcount_truncated(const PopcountSpec& spec, int t,
                               TruncationMode mode = TruncationMode::DropInputs);

/// Output-neuron spec: ternary weights over the m hidden activations;
/// Z zero weights are hardwired as the 2P + Z correction.
struct OutputNeuronSpec {
  std::vector<int> weights;  // length m over {-1, 0, +1}
  int zero_count() const;
  int active_count() const { return static_cast<int>(weights.size()) - zero_count(); }
  void validate() const;
};

/// Encoded output width shared by all output neurons of a model with m
/// hidden units: enough for the maximum 2P + Z = 2m.
int output_word_width(int m);

/// Netlist computing o = 2 * P(p_1..p_{m-Z}) + Z, where p_j is the hidden
/// activation (inverted for -1 weights) and pc is the popcount over the
/// m - Z live inputs. Output padded to `word_width` bits (0 = natural).
Netlist gen_output_neuron(const OutputNeuronSpec& spec, const Netlist& pc, int word_width = 0);

/// ceil(log2 c)-bit index of the maximum of c unsigned operands; ties
/// resolve to the lowest index.
Netlist gen_argmax(int c, int width);

/// Full bespoke classifier: quantized feature bits in, class index out.
/// hidden[j] must consume w1 row j's nonzero inputs in canonical order;
/// output[i] must be a popcount over m - z[i] bits.
Netlist assemble_tnn(const TnnModel& model, const std::vector<Netlist>& hidden,
                     const std::vector<Netlist>& output);

/// assemble_tnn with exact components everywhere.
Netlist assemble_tnn_exact(const TnnModel& model, LtgStyle style = LtgStyle::TwoTree);

/// Area of everything assemble_tnn adds around the neuron components
/// (argmax, Z-correction adders, output-weight inverters). Constant across
/// component assignments of the same model.
double assembly_overhead_area(const TnnModel& model, const CellLibrary& lib);

/// Indices of nonzero entries, positives first then negatives, each
/// ascending: the canonical LTG slot order.
std::vector<int> ltg_slot_order(const std::vector<int>& weights);

}  // namespace axtnn
