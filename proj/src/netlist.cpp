#include "axtnn/netlist.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace axtnn {

Netlist::Netlist(std::vector<std::string> input_names) : input_names_(std::move(input_names)) {}

SignalId Netlist::input(size_t i) const {
  if (i >= input_names_.size()) throw ContractError("input index out of range");
  return static_cast<SignalId>(i);
}

SignalId Netlist::add(GateKind kind, SignalId a, SignalId b) {
  SignalId id = static_cast<SignalId>(num_signals());
  int arity = gate_arity(kind);
  if (arity >= 1 && a >= id) throw ContractError("gate fanin a references a later signal");
  if (arity == 2 && b >= id) throw ContractError("gate fanin b references a later signal");
  gates_.push_back({kind, arity >= 1 ? a : 0, arity == 2 ? b : 0});
  return id;
}

void Netlist::add_output(SignalId s) {
  if (s >= num_signals()) throw ContractError("output references unknown signal");
  outputs_.push_back(s);
}

const Gate& Netlist::gate_of(SignalId s) const {
  if (is_input(s) || s >= num_signals()) throw ContractError("signal is not a gate");
  return gates_[s - input_names_.size()];
}

std::vector<uint8_t> Netlist::simulate(const Stimulus& s) const {
  if (s.size() != num_inputs()) throw ContractError("stimulus length does not match input count");
  std::vector<uint8_t> value(num_signals());
  std::copy(s.begin(), s.end(), value.begin());
  size_t base = num_inputs();
  for (size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    value[base + i] = gate_eval(g.kind, value[g.a] != 0, value[g.b] != 0) ? 1 : 0;
  }
  std::vector<uint8_t> out(outputs_.size());
  for (size_t i = 0; i < outputs_.size(); ++i) out[i] = value[outputs_[i]];
  return out;
}

std::vector<std::vector<uint64_t>> Netlist::simulate_words(
    const std::vector<std::vector<uint64_t>>& input_words, size_t words) const {
  if (input_words.size() != num_inputs()) throw ContractError("input word count mismatch");
  std::vector<uint64_t> value(num_signals() * words);
  for (size_t i = 0; i < input_words.size(); ++i) {
    if (input_words[i].size() != words) throw ContractError("input word length mismatch");
    std::copy(input_words[i].begin(), input_words[i].end(), value.begin() + i * words);
  }
  size_t base = num_inputs();
  for (size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    const uint64_t* a = &value[g.a * words];
    const uint64_t* b = &value[g.b * words];
    uint64_t* o = &value[(base + i) * words];
    for (size_t w = 0; w < words; ++w) o[w] = gate_eval_word(g.kind, a[w], b[w]);
  }
  std::vector<std::vector<uint64_t>> out(outputs_.size());
  for (size_t i = 0; i < outputs_.size(); ++i)
    out[i].assign(value.begin() + outputs_[i] * words, value.begin() + (outputs_[i] + 1) * words);
  return out;
}

double Netlist::area(const CellLibrary& lib) const {
  double sum = 0.0;
  for (const Gate& g : gates_) sum += lib.gate_area(g.kind);
  return sum;
}

std::vector<size_t> Netlist::gate_histogram() const {
  std::vector<size_t> h(kGateKindCount, 0);
  for (const Gate& g : gates_) ++h[static_cast<int>(g.kind)];
  return h;
}

std::vector<SignalId> Netlist::append(const Netlist& sub, const std::vector<SignalId>& input_map) {
  if (input_map.size() != sub.num_inputs()) throw ContractError("append: input map size mismatch");
  for (SignalId s : input_map)
    if (s >= num_signals()) throw ContractError("append: input map references unknown signal");
  std::vector<SignalId> remap(sub.num_signals());
  for (size_t i = 0; i < input_map.size(); ++i) remap[i] = input_map[i];
  size_t sub_base = sub.num_inputs();
  for (size_t i = 0; i < sub.gates_.size(); ++i) {
    const Gate& g = sub.gates_[i];
    remap[sub_base + i] = add(g.kind, remap[g.a], remap[g.b]);
  }
  std::vector<SignalId> outs(sub.outputs_.size());
  for (size_t i = 0; i < sub.outputs_.size(); ++i) outs[i] = remap[sub.outputs_[i]];
  return outs;
}

void Netlist::validate() const {
  size_t base = num_inputs();
  for (size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    int arity = gate_arity(g.kind);
    if (arity >= 1 && g.a >= base + i) throw ContractError("fanin a out of topological order");
    if (arity == 2 && g.b >= base + i) throw ContractError("fanin b out of topological order");
  }
  if (outputs_.empty()) throw ContractError("netlist has no outputs");
  for (SignalId s : outputs_)
    if (s >= num_signals()) throw ContractError("output references unknown signal");
}

namespace {

std::string signal_label(const Netlist& n, SignalId s) {
  if (n.is_input(s)) return n.input_names()[s];
  return "n" + std::to_string(s);
}

}  // namespace

std::string Netlist::export_structural() const {
  validate();
  std::ostringstream out;
  out << ".inputs";
  for (const std::string& name : input_names_) out << ' ' << name;
  out << "\n.outputs";
  for (SignalId s : outputs_) out << ' ' << signal_label(*this, s);
  out << '\n';
  size_t base = num_inputs();
  for (size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    out << 'n' << (base + i) << " = " << gate_name(g.kind) << '(';
    int arity = gate_arity(g.kind);
    if (arity >= 1) out << signal_label(*this, g.a);
    if (arity == 2) out << ", " << signal_label(*this, g.b);
    out << ")\n";
  }
  out << ".end\n";
  return out.str();
}

namespace {

struct RawGate {
  std::string name;
  GateKind kind;
  std::vector<std::string> fanins;
  int line;
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> parts;
  std::string p;
  while (ss >> p) parts.push_back(p);
  return parts;
}

}  // namespace

Netlist Netlist::parse_structural(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> output_names;
  std::vector<RawGate> raw;
  bool saw_inputs = false, saw_outputs = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::string body = line.substr(0, line.find('#'));
    auto parts = split_ws(body);
    if (parts.empty()) continue;
    if (parts[0] == ".inputs") {
      inputs.assign(parts.begin() + 1, parts.end());
      saw_inputs = true;
    } else if (parts[0] == ".outputs") {
      output_names.assign(parts.begin() + 1, parts.end());
      saw_outputs = true;
    } else if (parts[0] == ".end") {
      break;
    } else {
      // gate line: name = KIND(fanin, fanin)
      size_t eq = body.find('=');
      if (eq == std::string::npos) throw ParseError("expected '=' in gate line", line_no);
      auto lhs = split_ws(body.substr(0, eq));
      if (lhs.size() != 1) throw ParseError("expected single gate name before '='", line_no);
      std::string rhs = body.substr(eq + 1);
      size_t open = rhs.find('('), close = rhs.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError("expected KIND(fanins)", line_no);
      std::string kind_str = rhs.substr(0, open);
      kind_str.erase(std::remove_if(kind_str.begin(), kind_str.end(), ::isspace), kind_str.end());
      GateKind kind;
      try {
        kind = gate_kind_from_name(kind_str);
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_no);
      }
      std::string args = rhs.substr(open + 1, close - open - 1);
      std::replace(args.begin(), args.end(), ',', ' ');
      auto fanins = split_ws(args);
      if (static_cast<int>(fanins.size()) != gate_arity(kind))
        throw ParseError(std::string("arity mismatch for ") + gate_name(kind), line_no);
      raw.push_back({lhs[0], kind, fanins, line_no});
    }
  }
  if (!saw_inputs) throw ParseError("missing .inputs line", 1);
  if (!saw_outputs) throw ParseError("missing .outputs line", 1);

  std::map<std::string, int> gate_index;  // name -> index into raw
  std::map<std::string, SignalId> input_index;
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (!input_index.emplace(inputs[i], static_cast<SignalId>(i)).second)
      throw ParseError("duplicate input name " + inputs[i], 1);
  }
  for (size_t i = 0; i < raw.size(); ++i) {
    if (input_index.count(raw[i].name)) throw ParseError("gate redefines input " + raw[i].name, raw[i].line);
    if (!gate_index.emplace(raw[i].name, static_cast<int>(i)).second)
      throw ParseError("duplicate gate name " + raw[i].name, raw[i].line);
  }

  // Topological sort (Kahn, stable by line order); detects cycles.
  std::vector<int> indeg(raw.size(), 0);
  std::vector<std::vector<int>> consumers(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    for (const std::string& f : raw[i].fanins) {
      if (input_index.count(f)) continue;
      auto it = gate_index.find(f);
      if (it == gate_index.end()) throw ParseError("reference to undefined signal " + f, raw[i].line);
      consumers[it->second].push_back(static_cast<int>(i));
      ++indeg[i];
    }
  }
  std::vector<int> order;
  order.reserve(raw.size());
  std::vector<int> ready;
  for (size_t i = 0; i < raw.size(); ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  // keep line order within the ready set
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    int g = ready.back();
    ready.pop_back();
    order.push_back(g);
    for (int c : consumers[g]) {
      if (--indeg[c] == 0) {
        ready.push_back(c);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  if (order.size() != raw.size()) {
    int culprit = 0;
    for (size_t i = 0; i < raw.size(); ++i)
      if (indeg[i] > 0) {
        culprit = raw[i].line;
        break;
      }
    throw ParseError("cyclic gate reference", culprit);
  }

  Netlist net(inputs);
  std::vector<SignalId> gate_signal(raw.size());
  auto resolve = [&](const std::string& name) -> SignalId {
    auto ii = input_index.find(name);
    if (ii != input_index.end()) return ii->second;
    return gate_signal[gate_index.at(name)];
  };
  for (int idx : order) {
    const RawGate& g = raw[idx];
    SignalId a = 0, b = 0;
    if (g.fanins.size() >= 1) a = resolve(g.fanins[0]);
    if (g.fanins.size() == 2) b = resolve(g.fanins[1]);
    gate_signal[idx] = net.add(g.kind, a, b);
  }
  for (const std::string& name : output_names) {
    auto ii = input_index.find(name);
    if (ii != input_index.end()) {
      net.add_output(ii->second);
    } else {
      auto gi = gate_index.find(name);
      if (gi == gate_index.end()) throw ParseError("output references undefined signal " + name, 1);
      net.add_output(gate_signal[gi->second]);
    }
  }
  net.validate();
  return net;
}

void Netlist::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write netlist file: " + path);
  out << export_structural();
}

Netlist Netlist::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open netlist file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_structural(ss.str());
}

uint64_t word_value(const std::vector<uint8_t>& bits) {
  uint64_t v = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= 1ULL << i;
  return v;
}

Stimulus stimulus_from_bits(uint64_t v, size_t n) {
  Stimulus s(n);
  for (size_t i = 0; i < n; ++i) s[i] = (v >> i) & 1;
  return s;
}

}  // namespace axtnn
