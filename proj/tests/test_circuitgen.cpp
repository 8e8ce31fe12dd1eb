#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axtnn/circuitgen.hpp"
#include "axtnn/common.hpp"

using namespace axtnn;

namespace {

// Slot-ordered word values from an exhaustive stimulus index.
std::vector<long> decode_words(uint64_t v, int words, int k) {
  std::vector<long> out(words);
  for (int i = 0; i < words; ++i) out[i] = static_cast<long>((v >> (i * k)) & ((1u << k) - 1));
  return out;
}

// Integer oracle for the canonical (positives-first) LTG interface.
int ltg_oracle(const LtgSpec& spec, uint64_t stimulus_bits) {
  int np = spec.n_pos(), nn = spec.n_neg();
  auto words = decode_words(stimulus_bits, np + nn, spec.k);
  long sum = 0;
  for (int i = 0; i < np; ++i) sum += words[i];
  for (int i = 0; i < nn; ++i) sum -= words[np + i];
  return sum >= 0 ? 1 : 0;
}

void check_ltg_exhaustive(const LtgSpec& spec, LtgStyle style) {
  Netlist net = gen_ltg_exact(spec, style);
  int bits = spec.input_bits();
  REQUIRE(net.num_inputs() == static_cast<size_t>(bits));
  for (uint64_t v = 0; v < (1ULL << bits); ++v) {
    auto out = net.simulate(stimulus_from_bits(v, bits));
    CHECK(out[0] == ltg_oracle(spec, v));
  }
}

}  // namespace

TEST_CASE("LTG: all-positive weights are constant 1") {
  LtgSpec spec{{1}, 1};
  Netlist net = gen_ltg_exact(spec);
  CHECK(net.simulate({0})[0] == 1);
  CHECK(net.simulate({1})[0] == 1);
}

TEST_CASE("LTG: weights [1,-1] k=1 truth table") {
  LtgSpec spec{{1, -1}, 1};
  Netlist net = gen_ltg_exact(spec);
  // inputs: (positive word, negative word)
  CHECK(net.simulate({0, 0})[0] == 1);
  CHECK(net.simulate({0, 1})[0] == 0);
  CHECK(net.simulate({1, 0})[0] == 1);
  CHECK(net.simulate({1, 1})[0] == 1);
}

TEST_CASE("LTG: exhaustive sign oracle, both styles") {
  check_ltg_exhaustive({{1, 1, -1}, 2}, LtgStyle::TwoTree);
  check_ltg_exhaustive({{1, 1, -1}, 2}, LtgStyle::OneTree);
  check_ltg_exhaustive({{1, -1, -1, 1, -1}, 2}, LtgStyle::TwoTree);
  check_ltg_exhaustive({{1, -1, -1, 1, -1}, 2}, LtgStyle::OneTree);
  check_ltg_exhaustive({{-1, -1}, 3}, LtgStyle::TwoTree);
  check_ltg_exhaustive({{-1, -1}, 3}, LtgStyle::OneTree);
  check_ltg_exhaustive({{1, 0, -1, 1}, 1}, LtgStyle::TwoTree);  // zero weight dropped
}

TEST_CASE("LTG: property, one_tree == two_tree on random specs") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    int k = 1 + static_cast<int>(rng.below(3));
    int n = 2 + static_cast<int>(rng.below(5));
    if (n * k > 14) continue;
    LtgSpec spec;
    spec.k = k;
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      int w = static_cast<int>(rng.below(3)) - 1;
      spec.weights.push_back(w);
      nonzero |= w != 0;
    }
    if (!nonzero) spec.weights[0] = 1;
    Netlist a = gen_ltg_exact(spec, LtgStyle::OneTree);
    Netlist b = gen_ltg_exact(spec, LtgStyle::TwoTree);
    int bits = spec.input_bits();
    for (uint64_t v = 0; v < (1ULL << bits); ++v) {
      Stimulus s = stimulus_from_bits(v, bits);
      CHECK(a.simulate(s) == b.simulate(s));
    }
  }
}

TEST_CASE("LTG: refusal over the input-bit maximum") {
  LtgSpec spec;
  spec.k = 2;
  spec.weights.assign(100, 1);  // 200 input bits
  CHECK_THROWS_AS(gen_ltg_exact(spec), BudgetError);
}

TEST_CASE("popcount: identity, small cases, exhaustive m=8") {
  Netlist one = gen_popcount_exact({1});
  CHECK(one.num_outputs() == 1);
  CHECK(word_value(one.simulate({1})) == 1);
  CHECK(word_value(one.simulate({0})) == 0);

  Netlist three = gen_popcount_exact({3});
  CHECK(word_value(three.simulate({1, 0, 1})) == 2);

  Netlist eight = gen_popcount_exact({8});
  CHECK(eight.num_outputs() == 4);
  for (uint64_t v = 0; v < 256; ++v)
    CHECK(word_value(eight.simulate(stimulus_from_bits(v, 8))) ==
          static_cast<uint64_t>(__builtin_popcountll(v)));
}

TEST_CASE("popcount: output never exceeds m") {
  Rng rng(3);
  for (int m : {2, 5, 7, 12}) {
    Netlist pc = gen_popcount_exact({m});
    for (int trial = 0; trial < 100; ++trial) {
      uint64_t v = rng.next() & ((1ULL << m) - 1);
      CHECK(word_value(pc.simulate(stimulus_from_bits(v, m))) <= static_cast<uint64_t>(m));
    }
  }
}

TEST_CASE("truncated popcount: drop-input semantics and mae") {
  Netlist t1 = gen_popcount_truncated({3}, 1);
  CHECK(word_value(t1.simulate({1, 0, 1})) == 1);  // third input dropped

  // mae over all 8 stimuli = 0.5
  Netlist exact = gen_popcount_exact({3});
  double total = 0;
  for (uint64_t v = 0; v < 8; ++v) {
    Stimulus s = stimulus_from_bits(v, 3);
    total += std::abs(static_cast<double>(word_value(exact.simulate(s))) -
                      static_cast<double>(word_value(t1.simulate(s))));
  }
  CHECK(total / 8 == doctest::Approx(0.5));

  // t = 0 is the exact circuit
  Netlist t0 = gen_popcount_truncated({8}, 0);
  for (uint64_t v = 0; v < 256; ++v)
    CHECK(word_value(t0.simulate(stimulus_from_bits(v, 8))) ==
          static_cast<uint64_t>(__builtin_popcountll(v)));

  CHECK_THROWS_AS(gen_popcount_truncated({3}, 3), ContractError);

  // LSB mode zeroes low output bits
  Netlist lsb = gen_popcount_truncated({3}, 1, TruncationMode::DropOutputLsbs);
  CHECK(word_value(lsb.simulate({1, 0, 0})) == 0);
  CHECK(word_value(lsb.simulate({1, 1, 0})) == 2);
}

TEST_CASE("output neuron: 2P + Z") {
  // weights [1,-1,0,1,0], hidden y = (1,1,1,0,0): P = 1, Z = 2 -> o = 4
  OutputNeuronSpec spec{{1, -1, 0, 1, 0}};
  Netlist pc = gen_popcount_exact({3});
  Netlist neuron = gen_output_neuron(spec, pc);
  // inputs are y for nonzero weights in order: y0, y1, y3
  auto out = neuron.simulate({1, 1, 0});
  CHECK(word_value(out) == 4);

  // all +1 weights, y all 1, m=3: o = 6
  OutputNeuronSpec all1{{1, 1, 1}};
  Netlist n2 = gen_output_neuron(all1, gen_popcount_exact({3}));
  CHECK(word_value(n2.simulate({1, 1, 1})) == 6);

  // all-zero neuron rejected
  CHECK_THROWS_AS(gen_output_neuron({{0, 0}}, gen_popcount_exact({1})), ContractError);

  // arity mismatch rejected
  CHECK_THROWS_AS(gen_output_neuron(spec, gen_popcount_exact({2})), ContractError);
}

TEST_CASE("output neuron: o equals true dot product + m, every pattern") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 1 + static_cast<int>(rng.below(7));
    OutputNeuronSpec spec;
    bool nonzero = false;
    for (int j = 0; j < m; ++j) {
      int w = static_cast<int>(rng.below(3)) - 1;
      spec.weights.push_back(w);
      nonzero |= w != 0;
    }
    if (!nonzero) spec.weights[0] = 1;
    Netlist neuron = gen_output_neuron(spec, gen_popcount_exact({spec.active_count()}));
    int live = spec.active_count();
    for (uint64_t v = 0; v < (1ULL << m); ++v) {
      // v assigns every hidden activation; the neuron sees the live subset
      Stimulus s;
      long dot = 0;
      for (int j = 0; j < m; ++j) {
        int y = (v >> j) & 1;
        int yhat = y == 1 ? 1 : -1;
        dot += spec.weights[j] * yhat;
        if (spec.weights[j] != 0) s.push_back(static_cast<uint8_t>(y));
      }
      REQUIRE(s.size() == static_cast<size_t>(live));
      CHECK(static_cast<long>(word_value(neuron.simulate(s))) == dot + m);
    }
  }
}

TEST_CASE("argmax: ties break toward the lowest index") {
  Netlist a2 = gen_argmax(2, 3);
  Stimulus s(6);
  for (int i = 0; i < 3; ++i) {
    s[i] = (4 >> i) & 1;
    s[3 + i] = (4 >> i) & 1;
  }
  CHECK(word_value(a2.simulate(s)) == 0);

  Netlist a3 = gen_argmax(3, 3);
  Stimulus s3(9);
  uint64_t ops[3] = {1, 5, 2};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) s3[j * 3 + i] = (ops[j] >> i) & 1;
  CHECK(word_value(a3.simulate(s3)) == 1);
}

TEST_CASE("argmax: randomized oracle, c=10") {
  Rng rng(23);
  const int c = 10, width = 5;
  Netlist net = gen_argmax(c, width);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<uint64_t> ops(c);
    Stimulus s(c * width);
    for (int j = 0; j < c; ++j) {
      ops[j] = rng.below(1ULL << width);
      for (int i = 0; i < width; ++i) s[j * width + i] = (ops[j] >> i) & 1;
    }
    size_t best = 0;
    for (size_t j = 1; j < ops.size(); ++j)
      if (ops[j] > ops[best]) best = j;
    CHECK(word_value(net.simulate(s)) == best);
  }
}

namespace {

// Independent software classifier in encoded-output space.
int software_class(const TnnModel& model, const std::vector<int>& codes) {
  std::vector<long> o(model.c);
  std::vector<int> y(model.m);
  for (int j = 0; j < model.m; ++j) {
    long sum = 0;
    for (int i = 0; i < model.n; ++i) sum += static_cast<long>(model.w1(j, i)) * codes[i];
    y[j] = sum >= 0 ? 1 : -1;
  }
  for (int i = 0; i < model.c; ++i) {
    long dot = 0;
    for (int j = 0; j < model.m; ++j) dot += static_cast<long>(model.w2(i, j)) * y[j];
    o[i] = dot + model.m;
  }
  int best = 0;
  for (int i = 1; i < model.c; ++i)
    if (o[i] > o[best]) best = i;
  return best;
}

TnnModel random_model(Rng& rng, int n, int m, int c, int k) {
  TnnModel model;
  model.dataset = "random";
  model.n = n;
  model.m = m;
  model.c = c;
  model.k = k;
  model.w1.resize(m, n);
  model.w2.resize(c, m);
  for (int j = 0; j < m; ++j) {
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      model.w1(j, i) = static_cast<int>(rng.below(3)) - 1;
      nonzero |= model.w1(j, i) != 0;
    }
    if (!nonzero) model.w1(j, 0) = 1;
  }
  for (int i = 0; i < c; ++i) {
    bool nonzero = false;
    for (int j = 0; j < m; ++j) {
      model.w2(i, j) = static_cast<int>(rng.below(3)) - 1;
      nonzero |= model.w2(i, j) != 0;
    }
    if (!nonzero) model.w2(i, 0) = 1;
  }
  model.refresh_z();
  model.feat_min.assign(n, 0.0);
  model.feat_max.assign(n, 1.0);
  return model;
}

}  // namespace

TEST_CASE("assemble: tiny exact TNN matches software on all stimuli") {
  TnnModel model;
  model.dataset = "toy";
  model.n = 2;
  model.m = 1;
  model.c = 2;
  model.k = 1;
  model.w1.resize(1, 2);
  model.w1 << 1, -1;
  model.w2.resize(2, 1);
  model.w2 << 1, -1;
  model.refresh_z();
  model.feat_min.assign(2, 0.0);
  model.feat_max.assign(2, 1.0);

  Netlist net = assemble_tnn_exact(model);
  for (uint64_t v = 0; v < 4; ++v) {
    std::vector<int> codes{static_cast<int>(v & 1), static_cast<int>((v >> 1) & 1)};
    Stimulus s{static_cast<uint8_t>(codes[0]), static_cast<uint8_t>(codes[1])};
    CHECK(static_cast<int>(word_value(net.simulate(s))) == software_class(model, codes));
  }
}

TEST_CASE("assemble: random models, exhaustive bit-equivalence") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.below(3));
    int k = 1 + static_cast<int>(rng.below(2));
    if (n * k > 10) k = 1;
    TnnModel model = random_model(rng, n, 1 + static_cast<int>(rng.below(4)),
                                  2 + static_cast<int>(rng.below(3)), k);
    Netlist net = assemble_tnn_exact(model, trial % 2 ? LtgStyle::OneTree : LtgStyle::TwoTree);
    int bits = model.n * model.k;
    for (uint64_t v = 0; v < (1ULL << bits); ++v) {
      Stimulus s = stimulus_from_bits(v, bits);
      std::vector<int> codes(model.n);
      for (int i = 0; i < model.n; ++i)
        codes[i] = static_cast<int>((v >> (i * model.k)) & ((1u << model.k) - 1));
      CHECK(static_cast<int>(word_value(net.simulate(s))) == software_class(model, codes));
    }
  }
}

TEST_CASE("assemble: surrogate decomposition is exact") {
  CellLibrary lib = CellLibrary::generic();
  Rng rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    TnnModel model = random_model(rng, 3, 1 + static_cast<int>(rng.below(4)), 2, 1);
    double components = 0;
    std::vector<Netlist> hidden, output;
    for (int j = 0; j < model.m; ++j) {
      LtgSpec spec;
      spec.k = model.k;
      spec.weights.resize(model.n);
      for (int i = 0; i < model.n; ++i) spec.weights[i] = model.w1(j, i);
      hidden.push_back(gen_ltg_exact(spec));
      components += hidden.back().area(lib);
    }
    for (int i = 0; i < model.c; ++i) {
      output.push_back(gen_popcount_exact({model.m - model.z[i]}));
      components += output.back().area(lib);
    }
    Netlist assembled = assemble_tnn(model, hidden, output);
    CHECK(assembled.area(lib) == doctest::Approx(components + assembly_overhead_area(model, lib)));
  }
}

TEST_CASE("assemble: rejects inconsistent interfaces") {
  TnnModel model;
  model.n = 2;
  model.m = 1;
  model.c = 2;
  model.k = 1;
  model.w1.resize(1, 2);
  model.w1 << 1, 1;
  model.w2.resize(2, 1);
  model.w2 << 1, 1;
  model.refresh_z();
  model.feat_min.assign(2, 0.0);
  model.feat_max.assign(2, 1.0);

  std::vector<Netlist> hidden{gen_popcount_exact({3})};  // wrong width
  std::vector<Netlist> output{gen_popcount_exact({1}), gen_popcount_exact({1})};
  CHECK_THROWS_AS(assemble_tnn(model, hidden, output), ContractError);
}
