#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axtnn/tech.hpp"

namespace axtnn {

/// Signal ids: 0..num_inputs-1 are primary inputs, num_inputs+i is gate i.
using SignalId = uint32_t;

struct Gate {
  GateKind kind;
  SignalId a = 0;  // first fanin (unused for constants)
  SignalId b = 0;  // second fanin (unused for arity < 2)

  bool operator==(const Gate&) const = default;
};

/// One bit per primary input, in input order.
using Stimulus = std::vector<uint8_t>;

/// Combinational gate-level circuit: a DAG stored in topological order.
/// Immutable value semantics; every mutating builder call preserves the
/// topological invariant by construction (fanins must already exist).
class Netlist {
 public:
  Netlist() = default;
  explicit Netlist(std::vector<std::string> input_names);

  size_t num_inputs() const { return input_names_.size(); }
  size_t num_gates() const { return gates_.size(); }
  size_t num_outputs() const { return outputs_.size(); }
  size_t num_signals() const { return input_names_.size() + gates_.size(); }

  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<SignalId>& outputs() const { return outputs_; }

  SignalId input(size_t i) const;

  /// Appends a gate; fanins must reference existing signals.
  SignalId add(GateKind kind, SignalId a = 0, SignalId b = 0);

  /// Declares an output. Arithmetic words are LSB-first (bit i has weight 2^i).
  void add_output(SignalId s);

  bool is_input(SignalId s) const { return s < input_names_.size(); }
  const Gate& gate_of(SignalId s) const;

  /// Evaluates all outputs for one stimulus, in topological order.
  std::vector<uint8_t> simulate(const Stimulus& s) const;

  /// Word-parallel simulation: 64 stimuli per word, `words` words per input.
  /// input_words is indexed [input][word]; returns [output][word].
  std::vector<std::vector<uint64_t>> simulate_words(
      const std::vector<std::vector<uint64_t>>& input_words, size_t words) const;

  /// Sum of gate areas under the library.
  double area(const CellLibrary& lib) const;

  /// Gate-count histogram; index by static_cast<int>(GateKind).
  std::vector<size_t> gate_histogram() const;

  /// Appends a copy of `sub` into this netlist. `input_map[i]` gives the
  /// signal in *this feeding sub's input i. Returns sub's outputs remapped.
  std::vector<SignalId> append(const Netlist& sub, const std::vector<SignalId>& input_map);

  /// Structural text (.gnl dialect); round-trips through parse_structural.
  std::string export_structural() const;
  static Netlist parse_structural(const std::string& text);

  void save(const std::string& path) const;
  static Netlist load(const std::string& path);

  /// Throws ContractError on arity violations or out-of-range references.
  void validate() const;

  bool operator==(const Netlist&) const = default;

 private:
  std::vector<std::string> input_names_;
  std::vector<Gate> gates_;
  std::vector<SignalId> outputs_;
};

/// Interprets simulated output bits as an unsigned integer, LSB-first.
uint64_t word_value(const std::vector<uint8_t>& bits);

/// Stimulus from the low `n` bits of v (input i = bit i).
Stimulus stimulus_from_bits(uint64_t v, size_t n);

}  // namespace axtnn
