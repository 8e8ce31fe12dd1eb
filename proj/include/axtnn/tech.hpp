#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "axtnn/common.hpp"

namespace axtnn {

enum class GateKind : uint8_t {
  Const0,
  Const1,
  Not,
  Buf,
  And2,
  Or2,
  Nand2,
  Nor2,
  Xor2,
  Xnor2,
};

constexpr int kGateKindCount = 10;

constexpr std::array<GateKind, kGateKindCount> all_gate_kinds() {
  return {GateKind::Const0, GateKind::Const1, GateKind::Not,   GateKind::Buf,
          GateKind::And2,   GateKind::Or2,    GateKind::Nand2, GateKind::Nor2,
          GateKind::Xor2,   GateKind::Xnor2};
}

/// Fanin arity of a gate kind: 0 for constants, 1 for NOT/BUF, 2 otherwise.
constexpr int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::Const0:
    case GateKind::Const1:
      return 0;
    case GateKind::Not:
    case GateKind::Buf:
      return 1;
    default:
      return 2;
  }
}

const char* gate_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

inline bool gate_eval(GateKind k, bool a, bool b) {
  switch (k) {
    case GateKind::Const0:
      return false;
    case GateKind::Const1:
      return true;
    case GateKind::Not:
      return !a;
    case GateKind::Buf:
      return a;
    case GateKind::And2:
      return a && b;
    case GateKind::Or2:
      return a || b;
    case GateKind::Nand2:
      return !(a && b);
    case GateKind::Nor2:
      return !(a || b);
    case GateKind::Xor2:
      return a != b;
    case GateKind::Xnor2:
      return a == b;
  }
  return false;
}

/// Word-parallel gate evaluation (64 stimuli per word).
inline uint64_t gate_eval_word(GateKind k, uint64_t a, uint64_t b) {
  switch (k) {
    case GateKind::Const0:
      return 0;
    case GateKind::Const1:
      return ~0ULL;
    case GateKind::Not:
      return ~a;
    case GateKind::Buf:
      return a;
    case GateKind::And2:
      return a & b;
    case GateKind::Or2:
      return a | b;
    case GateKind::Nand2:
      return ~(a & b);
    case GateKind::Nor2:
      return ~(a | b);
    case GateKind::Xor2:
      return a ^ b;
    case GateKind::Xnor2:
      return ~(a ^ b);
  }
  return 0;
}

/// Per-gate areas of the target technology plus a leakage-dominated power
/// coefficient. Immutable after load; safe to share across workers.
class CellLibrary {
 public:
  CellLibrary() = default;

  /// Library with the shipped synthetic defaults.
  static CellLibrary generic();

  /// Load from a JSON technology file: {"gates": {"NOT": 1.0, ...},
  /// "power_coefficient": c, "area_unit_mm2": s}.
  static CellLibrary load(const std::string& path);
  void save(const std::string& path) const;

  bool has(GateKind k) const { return present_[static_cast<int>(k)]; }

  double gate_area(GateKind k) const {
    if (!has(k)) throw ConfigError(std::string("no area entry for gate kind ") + gate_name(k));
    return area_[static_cast<int>(k)];
  }

  void set_gate_area(GateKind k, double a);

  double power_coefficient() const { return power_coefficient_; }
  void set_power_coefficient(double c) { power_coefficient_ = c; }

  /// mm^2 represented by one area unit; bridges gate areas to the
  /// interface-cost table when composing system-level totals.
  double area_unit_mm2() const { return area_unit_mm2_; }
  void set_area_unit_mm2(double s) { area_unit_mm2_ = s; }

  /// Leakage-dominated power model: power = area * coefficient.
  double estimate_power(double area) const {
    if (area < 0) throw ContractError("estimate_power: negative area");
    return area * power_coefficient_;
  }

 private:
  std::array<double, kGateKindCount> area_{};
  std::array<bool, kGateKindCount> present_{};
  double power_coefficient_ = 1.0;
  double area_unit_mm2_ = 1.0;
};

enum class ConverterKind : uint8_t { Flash, Sar, Abc };

const char* converter_name(ConverterKind k);
ConverterKind converter_from_name(const std::string& name);

struct InterfaceCost {
  double area_mm2;
  double power_mw;
};

/// Published area/power of the analog-to-digital interfaces, keyed by
/// (converter kind, bits). Unknown keys are lookup errors.
class InterfaceCostTable {
 public:
  /// The published default entries.
  static InterfaceCostTable defaults();

  /// Override/extend from a file of rows: kind bits area_mm2 power_mw.
  static InterfaceCostTable load(const std::string& path);

  InterfaceCost cost(ConverterKind kind, int bits) const;
  bool has(ConverterKind kind, int bits) const;
  void set(ConverterKind kind, int bits, InterfaceCost c);

 private:
  std::map<std::pair<int, int>, InterfaceCost> rows_;
};

}  // namespace axtnn
