#include "axtnn/tech.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace axtnn {

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::Const0:
      return "CONST0";
    case GateKind::Const1:
      return "CONST1";
    case GateKind::Not:
      return "NOT";
    case GateKind::Buf:
      return "BUF";
    case GateKind::And2:
      return "AND2";
    case GateKind::Or2:
      return "OR2";
    case GateKind::Nand2:
      return "NAND2";
    case GateKind::Nor2:
      return "NOR2";
    case GateKind::Xor2:
      return "XOR2";
    case GateKind::Xnor2:
      return "XNOR2";
  }
  return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
  for (GateKind k : all_gate_kinds())
    if (name == gate_name(k)) return k;
  throw ConfigError("unknown gate kind: " + name);
}

void CellLibrary::set_gate_area(GateKind k, double a) {
  if (a < 0) throw ConfigError(std::string("negative area for ") + gate_name(k));
  if ((k == GateKind::Const0 || k == GateKind::Const1) && a != 0.0)
    throw ConfigError("constants must have area 0");
  area_[static_cast<int>(k)] = a;
  present_[static_cast<int>(k)] = true;
}

CellLibrary CellLibrary::generic() {
  // Synthetic transistor-equivalent areas for a resistor-nMOS style cell set.
  CellLibrary lib;
  lib.set_gate_area(GateKind::Const0, 0.0);
  lib.set_gate_area(GateKind::Const1, 0.0);
  lib.set_gate_area(GateKind::Not, 1.0);
  lib.set_gate_area(GateKind::Buf, 2.0);
  lib.set_gate_area(GateKind::Nand2, 2.0);
  lib.set_gate_area(GateKind::Nor2, 2.0);
  lib.set_gate_area(GateKind::And2, 3.0);
  lib.set_gate_area(GateKind::Or2, 3.0);
  lib.set_gate_area(GateKind::Xor2, 6.0);
  lib.set_gate_area(GateKind::Xnor2, 6.0);
  lib.set_power_coefficient(1e-4);  // mW per area unit
  lib.set_area_unit_mm2(0.01);      // mm^2 per area unit
  return lib;
}

CellLibrary CellLibrary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open technology file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("technology file " + path + ": " + e.what());
  }
  CellLibrary lib;
  if (!j.contains("gates") || !j["gates"].is_object())
    throw ConfigError("technology file " + path + ": missing \"gates\" object");
  for (auto& [name, val] : j["gates"].items())
    lib.set_gate_area(gate_kind_from_name(name), val.get<double>());
  if (j.contains("power_coefficient")) lib.set_power_coefficient(j["power_coefficient"].get<double>());
  if (j.contains("area_unit_mm2")) lib.set_area_unit_mm2(j["area_unit_mm2"].get<double>());
  return lib;
}

void CellLibrary::save(const std::string& path) const {
  nlohmann::json gates;
  for (GateKind k : all_gate_kinds())
    if (has(k)) gates[gate_name(k)] = gate_area(k);
  nlohmann::json j;
  j["gates"] = gates;
  j["power_coefficient"] = power_coefficient_;
  j["area_unit_mm2"] = area_unit_mm2_;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write technology file: " + path);
  out << j.dump(2) << "\n";
}

const char* converter_name(ConverterKind k) {
  switch (k) {
    case ConverterKind::Flash:
      return "Flash";
    case ConverterKind::Sar:
      return "SAR";
    case ConverterKind::Abc:
      return "ABC";
  }
  return "?";
}

ConverterKind converter_from_name(const std::string& name) {
  if (name == "Flash" || name == "flash") return ConverterKind::Flash;
  if (name == "SAR" || name == "sar") return ConverterKind::Sar;
  if (name == "ABC" || name == "abc") return ConverterKind::Abc;
  throw ConfigError("unknown converter kind: " + name);
}

InterfaceCostTable InterfaceCostTable::defaults() {
  InterfaceCostTable t;
  t.set(ConverterKind::Flash, 2, {5.3, 0.04});
  t.set(ConverterKind::Flash, 3, {9.9, 0.13});
  t.set(ConverterKind::Flash, 4, {24.2, 0.32});
  t.set(ConverterKind::Sar, 2, {19.0, 0.43});
  t.set(ConverterKind::Sar, 3, {30.1, 0.76});
  t.set(ConverterKind::Sar, 4, {35.8, 1.03});
  t.set(ConverterKind::Abc, 1, {0.005, 0.001});
  return t;
}

InterfaceCostTable InterfaceCostTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open interface cost table: " + path);
  InterfaceCostTable t = defaults();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line.substr(0, line.find('#'));
    std::istringstream ss(trimmed);
    std::string kind;
    if (!(ss >> kind)) continue;  // blank/comment line
    int bits;
    double area, power;
    if (!(ss >> bits >> area >> power)) throw ParseError("expected: kind bits area_mm2 power_mw", line_no);
    t.set(converter_from_name(kind), bits, {area, power});
  }
  return t;
}

bool InterfaceCostTable::has(ConverterKind kind, int bits) const {
  return rows_.count({static_cast<int>(kind), bits}) != 0;
}

void InterfaceCostTable::set(ConverterKind kind, int bits, InterfaceCost c) {
  if (bits < 1 || bits > 4) throw ConfigError("interface bits must be in 1..4");
  if (kind == ConverterKind::Abc && bits != 1) throw ConfigError("ABC implies 1 bit");
  rows_[{static_cast<int>(kind), bits}] = c;
}

InterfaceCost InterfaceCostTable::cost(ConverterKind kind, int bits) const {
  auto it = rows_.find({static_cast<int>(kind), bits});
  if (it == rows_.end())
    throw ConfigError(std::string("no interface cost entry for ") + converter_name(kind) + " at " +
                      std::to_string(bits) + " bits");
  return it->second;
}

}  // namespace axtnn
