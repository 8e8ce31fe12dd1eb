#include "axtnn/circuitgen.hpp"

#include <algorithm>

namespace axtnn {

namespace {

// Absent bit == constant 0. Words are LSB-first vectors of optional bits;
// the builders fold absent operands away so padding costs no gates.
constexpr SignalId kNone = UINT32_MAX;
using OptWord = std::vector<SignalId>;

struct Builder {
  Netlist& net;
  SignalId one_sig = kNone;
  SignalId zero_sig = kNone;

  SignalId one() {
    if (one_sig == kNone) one_sig = net.add(GateKind::Const1);
    return one_sig;
  }
  SignalId zero() {
    if (zero_sig == kNone) zero_sig = net.add(GateKind::Const0);
    return zero_sig;
  }
  SignalId g1(GateKind k, SignalId a) { return net.add(k, a); }
  SignalId g2(GateKind k, SignalId a, SignalId b) { return net.add(k, a, b); }

  SignalId materialize(SignalId s) { return s == kNone ? zero() : s; }

  // Sum of up to three optional bits; returns (sum, carry), both optional.
  std::pair<SignalId, SignalId> add3(SignalId a, SignalId b, SignalId c) {
    SignalId v[3];
    int n = 0;
    for (SignalId s : {a, b, c})
      if (s != kNone) v[n++] = s;
    switch (n) {
      case 0:
        return {kNone, kNone};
      case 1:
        return {v[0], kNone};
      case 2:
        return {g2(GateKind::Xor2, v[0], v[1]), g2(GateKind::And2, v[0], v[1])};
      default: {
        SignalId s1 = g2(GateKind::Xor2, v[0], v[1]);
        SignalId sum = g2(GateKind::Xor2, s1, v[2]);
        SignalId c1 = g2(GateKind::And2, v[0], v[1]);
        SignalId c2 = g2(GateKind::And2, s1, v[2]);
        return {sum, g2(GateKind::Or2, c1, c2)};
      }
    }
  }

  // Ripple sum of two words; absent high bits behave as zeros.
  OptWord add_words(const OptWord& a, const OptWord& b) {
    size_t w = std::max(a.size(), b.size());
    OptWord out;
    out.reserve(w + 1);
    SignalId carry = kNone;
    for (size_t i = 0; i < w; ++i) {
      SignalId ab = i < a.size() ? a[i] : kNone;
      SignalId bb = i < b.size() ? b[i] : kNone;
      auto [s, c] = add3(ab, bb, carry);
      out.push_back(s);
      carry = c;
    }
    if (carry != kNone) out.push_back(carry);
    trim(out);
    return out;
  }

  // a + constant, ripple with the constant bits folded into each stage.
  OptWord add_const(const OptWord& a, uint64_t value) {
    size_t w = std::max(a.size(), static_cast<size_t>(value ? bit_width(value) : 0));
    OptWord out;
    out.reserve(w + 1);
    SignalId carry = kNone;
    for (size_t i = 0; i < w; ++i) {
      SignalId ab = i < a.size() ? a[i] : kNone;
      bool cb = (value >> i) & 1;
      if (!cb) {
        auto [s, c] = add3(ab, kNone, carry);
        out.push_back(s);
        carry = c;
      } else if (ab != kNone && carry != kNone) {
        out.push_back(g2(GateKind::Xnor2, ab, carry));
        carry = g2(GateKind::Or2, ab, carry);
      } else if (ab != kNone) {
        out.push_back(g1(GateKind::Not, ab));
        carry = ab;
      } else if (carry != kNone) {
        out.push_back(g1(GateKind::Not, carry));
        // carry propagates unchanged
      } else {
        out.push_back(one());
      }
    }
    if (carry != kNone) out.push_back(carry);
    trim(out);
    return out;
  }

  // Borrow out of a - b (unsigned); kNone when a >= b always holds.
  SignalId sub_borrow(const OptWord& a, const OptWord& b) {
    size_t w = std::max(a.size(), b.size());
    SignalId borrow = kNone;
    for (size_t i = 0; i < w; ++i) {
      SignalId p = i < a.size() ? a[i] : kNone;
      SignalId n = i < b.size() ? b[i] : kNone;
      borrow = borrow_stage(p, n, borrow);
    }
    return borrow;
  }

  // borrow' = (~p & (n | b)) | (n & b)
  SignalId borrow_stage(SignalId p, SignalId n, SignalId b) {
    if (p == kNone) {
      if (n == kNone) return b;
      if (b == kNone) return n;
      return g2(GateKind::Or2, n, b);
    }
    if (n == kNone && b == kNone) return kNone;
    SignalId np = g1(GateKind::Not, p);
    if (n == kNone) return g2(GateKind::And2, np, b);
    if (b == kNone) return g2(GateKind::And2, np, n);
    SignalId t1 = g2(GateKind::And2, np, g2(GateKind::Or2, n, b));
    SignalId t2 = g2(GateKind::And2, n, b);
    return g2(GateKind::Or2, t1, t2);
  }

  // Balanced reduction of a list of words into their sum.
  OptWord sum_tree(const std::vector<OptWord>& words, size_t lo, size_t hi, int truncate_to = 0) {
    OptWord r;
    if (hi - lo == 1) {
      r = words[lo];
    } else {
      size_t mid = lo + (hi - lo + 1) / 2;
      r = add_words(sum_tree(words, lo, mid, truncate_to), sum_tree(words, mid, hi, truncate_to));
    }
    if (truncate_to > 0 && r.size() > static_cast<size_t>(truncate_to))
      r.resize(truncate_to);
    return r;
  }

  static void trim(OptWord& w) {
    while (!w.empty() && w.back() == kNone) w.pop_back();
  }
};

std::vector<std::string> word_input_names(const std::string& prefix, int words, int bits) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(words) * bits);
  for (int i = 0; i < words; ++i)
    for (int j = 0; j < bits; ++j)
      names.push_back(prefix + std::to_string(i) + "_b" + std::to_string(j));
  return names;
}

OptWord input_word(const Netlist& net, int word, int bits) {
  OptWord w(bits);
  for (int j = 0; j < bits; ++j) w[j] = net.input(static_cast<size_t>(word) * bits + j);
  return w;
}

}  // namespace

int LtgSpec::n_pos() const {
  return static_cast<int>(std::count(weights.begin(), weights.end(), 1));
}

int LtgSpec::n_neg() const {
  return static_cast<int>(std::count(weights.begin(), weights.end(), -1));
}

long LtgSpec::max_abs_sum() const {
  long xmax = (1L << k) - 1;
  return xmax * std::max(n_pos(), n_neg());
}

void LtgSpec::validate(int max_input_bits) const {
  if (k < 1 || k > 4) throw ContractError("LTG input precision must be in 1..4");
  for (int w : weights)
    if (w < -1 || w > 1) throw ContractError("LTG weights must be ternary");
  if (n_pos() + n_neg() == 0) throw ContractError("LTG needs at least one nonzero weight");
  if (input_bits() > max_input_bits)
    throw BudgetError("LTG input bits " + std::to_string(input_bits()) + " exceed the supported maximum " +
                      std::to_string(max_input_bits));
}

std::vector<int> ltg_slot_order(const std::vector<int>& weights) {
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i)
    if (weights[i] == 1) order.push_back(i);
  for (int i = 0; i < static_cast<int>(weights.size()); ++i)
    if (weights[i] == -1) order.push_back(i);
  return order;
}

Netlist gen_ltg_exact(const LtgSpec& spec, LtgStyle style, int max_input_bits) {
  spec.validate(max_input_bits);
  int np = spec.n_pos(), nn = spec.n_neg(), k = spec.k;

  auto names = word_input_names("a", np, k);
  auto neg_names = word_input_names("s", nn, k);
  names.insert(names.end(), neg_names.begin(), neg_names.end());
  Netlist net(names);
  Builder b{net};

  std::vector<OptWord> pos, neg;
  for (int i = 0; i < np; ++i) pos.push_back(input_word(net, i, k));
  for (int i = 0; i < nn; ++i) neg.push_back(input_word(net, np + i, k));

  SignalId y;
  if (nn == 0) {
    y = b.one();  // the weighted sum is never negative
  } else if (style == LtgStyle::TwoTree) {
    OptWord p_sum = pos.empty() ? OptWord{} : b.sum_tree(pos, 0, pos.size());
    OptWord n_sum = b.sum_tree(neg, 0, neg.size());
    SignalId borrow = b.sub_borrow(p_sum, n_sum);
    y = borrow == kNone ? b.one() : b.g1(GateKind::Not, borrow);
  } else {
    // One tree over two's-complement words of fixed width W; negated
    // operands are complemented (high bits become constant ones) and the
    // pending +1 per negation enters as one constant word.
    long hi = static_cast<long>(np) * ((1L << k) - 1);
    long lo = static_cast<long>(nn) * ((1L << k) - 1);
    int w = 1 + std::max(bit_width(static_cast<uint64_t>(hi)), bit_width(static_cast<uint64_t>(lo)));
    std::vector<OptWord> operands;
    for (auto& word : pos) operands.push_back(word);
    for (auto& word : neg) {
      OptWord inv(w, kNone);
      for (int j = 0; j < k; ++j) inv[j] = b.g1(GateKind::Not, word[j]);
      for (int j = k; j < w; ++j) inv[j] = b.one();
      operands.push_back(inv);
    }
    OptWord correction(w, kNone);
    for (int j = 0; j < w; ++j)
      if ((static_cast<uint64_t>(nn) >> j) & 1) correction[j] = b.one();
    operands.push_back(correction);
    OptWord sum = b.sum_tree(operands, 0, operands.size(), w);
    SignalId sign = sum.size() >= static_cast<size_t>(w) ? sum[w - 1] : kNone;
    y = sign == kNone ? b.one() : b.g1(GateKind::Not, sign);
  }
  net.add_output(y);
  return net;
}

void PopcountSpec::validate() const {
  if (m < 1) throw ContractError("popcount needs m >= 1");
}

namespace {

OptWord popcount_tree(Builder& b, const std::vector<SignalId>& bits, size_t lo, size_t hi) {
  if (hi - lo == 1) return {bits[lo]};
  size_t mid = lo + (hi - lo + 1) / 2;
  return b.add_words(popcount_tree(b, bits, lo, mid), popcount_tree(b, bits, mid, hi));
}

}  // namespace

Netlist gen_popcount_exact(const PopcountSpec& spec) {
  spec.validate();
  Netlist net(word_input_names("p", spec.m, 1));
  Builder b{net};
  std::vector<SignalId> bits;
  for (int i = 0; i < spec.m; ++i) bits.push_back(net.input(i));
  OptWord count = popcount_tree(b, bits, 0, bits.size());
  count.resize(spec.g(), kNone);
  for (SignalId s : count) net.add_output(b.materialize(s));
  return net;
}

Netlist gen_popcount_truncated(const PopcountSpec& spec, int t, TruncationMode mode) {
  spec.validate();
  if (mode == TruncationMode::DropInputs) {
    if (t < 0 || t >= spec.m) throw ContractError("truncation drop count out of range");
    Netlist net(word_input_names("p", spec.m, 1));
    Builder b{net};
    std::vector<SignalId> bits;
    for (int i = 0; i < spec.m - t; ++i) bits.push_back(net.input(i));
    OptWord count = popcount_tree(b, bits, 0, bits.size());
    count.resize(spec.g(), kNone);
    for (SignalId s : count) net.add_output(b.materialize(s));
    return net;
  }
  if (t < 0 || t >= spec.g()) throw ContractError("truncated LSB count out of range");
  Netlist net = gen_popcount_exact(spec);
  Netlist out(net.input_names());
  Builder b{out};
  std::vector<SignalId> id_map(net.num_inputs());
  for (size_t i = 0; i < net.num_inputs(); ++i) id_map[i] = out.input(i);
  auto exact_outs = out.append(net, id_map);
  for (int i = 0; i < spec.g(); ++i) out.add_output(i < t ? b.zero() : exact_outs[i]);
  return out;
}

int OutputNeuronSpec::zero_count() const {
  return static_cast<int>(std::count(weights.begin(), weights.end(), 0));
}

void OutputNeuronSpec::validate() const {
  for (int w : weights)
    if (w < -1 || w > 1) throw ContractError("output weights must be ternary");
  if (active_count() == 0) throw ContractError("output neuron has no nonzero weights");
}

int output_word_width(int m) {
  if (m < 1) throw ContractError("output_word_width needs m >= 1");
  return bit_width(static_cast<uint64_t>(2 * m));
}

Netlist gen_output_neuron(const OutputNeuronSpec& spec, const Netlist& pc, int word_width) {
  spec.validate();
  int m = static_cast<int>(spec.weights.size());
  int z = spec.zero_count();
  int live = spec.active_count();
  if (pc.num_inputs() != static_cast<size_t>(live))
    throw ContractError("popcount input count does not match nonzero weights");
  if (word_width == 0) word_width = output_word_width(m);

  std::vector<std::string> names;
  for (int j = 0; j < m; ++j)
    if (spec.weights[j] != 0) names.push_back("y" + std::to_string(j));
  Netlist net(names);
  Builder b{net};

  std::vector<SignalId> p_bits;
  int in = 0;
  for (int j = 0; j < m; ++j) {
    if (spec.weights[j] == 0) continue;
    SignalId y = net.input(in++);
    p_bits.push_back(spec.weights[j] == 1 ? y : b.g1(GateKind::Not, y));
  }
  auto pc_outs = net.append(pc, p_bits);

  // o = 2P + Z: low bit is Z's LSB, the rest is P + (Z >> 1).
  OptWord p_word(pc_outs.begin(), pc_outs.end());
  OptWord high = b.add_const(p_word, static_cast<uint64_t>(z) >> 1);
  OptWord o;
  o.push_back((z & 1) ? b.one() : kNone);
  o.insert(o.end(), high.begin(), high.end());
  o.resize(word_width, kNone);
  for (int i = 0; i < word_width; ++i) net.add_output(b.materialize(o[i]));
  return net;
}

Netlist gen_argmax(int c, int width) {
  if (c < 2) throw ContractError("argmax needs at least two operands");
  if (width < 1) throw ContractError("argmax needs width >= 1");
  Netlist net(word_input_names("o", c, width));
  Builder b{net};

  auto operand = [&](int i) { return input_word(net, i, width); };

  int idx_bits = bit_width(static_cast<uint64_t>(c - 1));
  OptWord best = operand(0);
  OptWord index(idx_bits, kNone);  // constant 0

  for (int j = 1; j < c; ++j) {
    OptWord cand = operand(j);
    // strict greater-than, MSB first; ties keep the incumbent (lowest index)
    SignalId gt = kNone, eq = kNone;
    for (int i = width - 1; i >= 0; --i) {
      SignalId a = cand[i], bb = best[i];
      SignalId nb = b.g1(GateKind::Not, bb);
      SignalId here = b.g2(GateKind::And2, a, nb);
      if (eq != kNone) here = b.g2(GateKind::And2, eq, here);
      gt = gt == kNone ? here : b.g2(GateKind::Or2, gt, here);
      if (i > 0) {
        SignalId same = b.g2(GateKind::Xnor2, a, bb);
        eq = eq == kNone ? same : b.g2(GateKind::And2, eq, same);
      }
    }
    SignalId ngt = b.g1(GateKind::Not, gt);
    OptWord next_best(width);
    for (int i = 0; i < width; ++i) {
      SignalId t = b.g2(GateKind::And2, gt, cand[i]);
      SignalId f = b.g2(GateKind::And2, ngt, best[i]);
      next_best[i] = b.g2(GateKind::Or2, t, f);
    }
    best = next_best;
    OptWord next_index(idx_bits);
    for (int t = 0; t < idx_bits; ++t) {
      bool jbit = (static_cast<uint64_t>(j) >> t) & 1;
      if (jbit)
        next_index[t] = index[t] == kNone ? gt : b.g2(GateKind::Or2, gt, index[t]);
      else
        next_index[t] = index[t] == kNone ? kNone : b.g2(GateKind::And2, ngt, index[t]);
    }
    index = next_index;
  }
  for (int t = 0; t < idx_bits; ++t) net.add_output(b.materialize(index[t]));
  return net;
}

void TnnModel::validate() const {
  if (m < 1) throw ContractError("model needs at least one hidden neuron");
  if (c < 2) throw ContractError("model needs at least two classes");
  if (n < 1) throw ContractError("model needs at least one feature");
  if (k < 1 || k > 4) throw ContractError("input precision must be in 1..4");
  if (w1.rows() != m || w1.cols() != n) throw ContractError("w1 shape mismatch");
  if (w2.rows() != c || w2.cols() != m) throw ContractError("w2 shape mismatch");
  if (static_cast<int>(z.size()) != c) throw ContractError("z size mismatch");
  for (int i = 0; i < c; ++i) {
    int zeros = 0;
    for (int j = 0; j < m; ++j)
      if (w2(i, j) == 0) ++zeros;
    if (z[i] != zeros) throw ContractError("z does not match w2 zero counts");
  }
}

void TnnModel::refresh_z() {
  z.assign(c, 0);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < m; ++j)
      if (w2(i, j) == 0) ++z[i];
}

Netlist assemble_tnn(const TnnModel& model, const std::vector<Netlist>& hidden,
                     const std::vector<Netlist>& output) {
  model.validate();
  if (hidden.size() != static_cast<size_t>(model.m)) throw ContractError("hidden component count mismatch");
  if (output.size() != static_cast<size_t>(model.c)) throw ContractError("output component count mismatch");

  Netlist net(word_input_names("f", model.n, model.k));
  Builder b{net};

  // hidden layer: canonical slot wiring (positives then negatives)
  std::vector<SignalId> y(model.m);
  for (int j = 0; j < model.m; ++j) {
    std::vector<int> w_row(model.n);
    for (int i = 0; i < model.n; ++i) w_row[i] = model.w1(j, i);
    auto slots = ltg_slot_order(w_row);
    if (slots.empty()) throw ContractError("hidden neuron " + std::to_string(j) + " has all-zero weights");
    if (hidden[j].num_inputs() != slots.size() * model.k)
      throw ContractError("hidden component " + std::to_string(j) + " input width mismatch");
    if (hidden[j].num_outputs() != 1)
      throw ContractError("hidden component " + std::to_string(j) + " must have one output");
    std::vector<SignalId> map;
    map.reserve(slots.size() * model.k);
    for (int feat : slots)
      for (int bit = 0; bit < model.k; ++bit)
        map.push_back(net.input(static_cast<size_t>(feat) * model.k + bit));
    y[j] = net.append(hidden[j], map)[0];
  }

  // output layer: inverters for -1 weights, popcount component, 2P + Z
  int w_out = output_word_width(model.m);
  std::vector<OptWord> o_words(model.c);
  for (int i = 0; i < model.c; ++i) {
    int live = model.m - model.z[i];
    if (live <= 0) throw ContractError("output neuron " + std::to_string(i) + " has no nonzero weights");
    if (output[i].num_inputs() != static_cast<size_t>(live))
      throw ContractError("output component " + std::to_string(i) + " input width mismatch");
    PopcountSpec pspec{live};
    if (output[i].num_outputs() != static_cast<size_t>(pspec.g()))
      throw ContractError("output component " + std::to_string(i) + " output width mismatch");
    std::vector<SignalId> p_bits;
    for (int j = 0; j < model.m; ++j) {
      int w = model.w2(i, j);
      if (w == 0) continue;
      p_bits.push_back(w == 1 ? y[j] : b.g1(GateKind::Not, y[j]));
    }
    auto pc_outs = net.append(output[i], p_bits);
    OptWord p_word(pc_outs.begin(), pc_outs.end());
    OptWord high = b.add_const(p_word, static_cast<uint64_t>(model.z[i]) >> 1);
    OptWord o;
    o.push_back((model.z[i] & 1) ? b.one() : kNone);
    o.insert(o.end(), high.begin(), high.end());
    o.resize(w_out, kNone);
    for (auto& s : o) s = b.materialize(s);
    o_words[i] = o;
  }

  Netlist amax = gen_argmax(model.c, w_out);
  std::vector<SignalId> amax_map;
  for (int i = 0; i < model.c; ++i)
    for (int t = 0; t < w_out; ++t) amax_map.push_back(o_words[i][t]);
  for (SignalId s : net.append(amax, amax_map)) net.add_output(s);
  return net;
}

Netlist assemble_tnn_exact(const TnnModel& model, LtgStyle style) {
  model.validate();
  std::vector<Netlist> hidden, output;
  for (int j = 0; j < model.m; ++j) {
    LtgSpec spec;
    spec.k = model.k;
    spec.weights.resize(model.n);
    for (int i = 0; i < model.n; ++i) spec.weights[i] = model.w1(j, i);
    hidden.push_back(gen_ltg_exact(spec, style));
  }
  for (int i = 0; i < model.c; ++i) output.push_back(gen_popcount_exact({model.m - model.z[i]}));
  return assemble_tnn(model, hidden, output);
}

double assembly_overhead_area(const TnnModel& model, const CellLibrary& lib) {
  model.validate();
  double overhead = gen_argmax(model.c, output_word_width(model.m)).area(lib);
  for (int i = 0; i < model.c; ++i) {
    OutputNeuronSpec spec;
    spec.weights.resize(model.m);
    for (int j = 0; j < model.m; ++j) spec.weights[j] = model.w2(i, j);
    Netlist pc = gen_popcount_exact({spec.active_count()});
    Netlist neuron = gen_output_neuron(spec, pc, output_word_width(model.m));
    overhead += neuron.area(lib) - pc.area(lib);
  }
  return overhead;
}

}  // namespace axtnn
