#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axtnn/circuitgen.hpp"
#include "axtnn/common.hpp"
#include "axtnn/netlist.hpp"

using namespace axtnn;

namespace {

// Random feed-forward DAG; always valid by construction.
Netlist random_dag(Rng& rng, int inputs, int gates, int outputs) {
  std::vector<std::string> names;
  for (int i = 0; i < inputs; ++i) names.push_back("i" + std::to_string(i));
  Netlist net(names);
  auto kinds = all_gate_kinds();
  for (int i = 0; i < gates; ++i) {
    GateKind k = kinds[rng.below(kinds.size())];
    SignalId a = static_cast<SignalId>(rng.below(net.num_signals()));
    SignalId b = static_cast<SignalId>(rng.below(net.num_signals()));
    net.add(k, a, b);
  }
  for (int i = 0; i < outputs; ++i)
    net.add_output(static_cast<SignalId>(rng.below(net.num_signals())));
  return net;
}

}  // namespace

TEST_CASE("simulate: single gates") {
  Netlist inv({"a"});
  inv.add_output(inv.add(GateKind::Not, inv.input(0)));
  CHECK(inv.simulate({1}) == std::vector<uint8_t>{0});
  CHECK(inv.simulate({0}) == std::vector<uint8_t>{1});

  Netlist x({"a", "b"});
  x.add_output(x.add(GateKind::Xor2, x.input(0), x.input(1)));
  CHECK(x.simulate({1, 1}) == std::vector<uint8_t>{0});
  CHECK(x.simulate({1, 0}) == std::vector<uint8_t>{1});

  CHECK_THROWS_AS(x.simulate({1}), ContractError);
}

TEST_CASE("simulate: popcount vs integer oracle") {
  Netlist pc = gen_popcount_exact({3});
  CHECK(word_value(pc.simulate({1, 0, 1})) == 2);
  for (uint64_t v = 0; v < 8; ++v) {
    auto out = pc.simulate(stimulus_from_bits(v, 3));
    CHECK(word_value(out) == static_cast<uint64_t>(__builtin_popcountll(v)));
  }
}

TEST_CASE("area: sums gate entries; additive over unions") {
  CellLibrary lib = CellLibrary::generic();
  Netlist empty({"a"});
  empty.add_output(empty.input(0));
  CHECK(empty.area(lib) == 0.0);

  Netlist two({"a"});
  two.add(GateKind::Not, two.input(0));
  two.add_output(two.add(GateKind::Not, two.input(0)));
  CHECK(two.area(lib) == 2 * lib.gate_area(GateKind::Not));

  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Netlist a = random_dag(rng, 3, 10, 2);
    Netlist b = random_dag(rng, 3, 8, 1);
    Netlist merged({"x0", "x1", "x2"});
    std::vector<SignalId> map{merged.input(0), merged.input(1), merged.input(2)};
    for (SignalId s : merged.append(a, map)) merged.add_output(s);
    for (SignalId s : merged.append(b, map)) merged.add_output(s);
    CHECK(merged.area(lib) == doctest::Approx(a.area(lib) + b.area(lib)));
  }
}

TEST_CASE("structural text round-trips") {
  Netlist inv({"a"});
  inv.add_output(inv.add(GateKind::Not, inv.input(0)));
  Netlist back = Netlist::parse_structural(inv.export_structural());
  CHECK(back == inv);

  // 3-input popcount: re-simulation matches on all stimuli
  Netlist pc = gen_popcount_exact({3});
  Netlist pc2 = Netlist::parse_structural(pc.export_structural());
  for (uint64_t v = 0; v < 8; ++v) {
    Stimulus s = stimulus_from_bits(v, 3);
    CHECK(pc.simulate(s) == pc2.simulate(s));
  }

  // empty-output netlist is rejected
  Netlist no_out({"a"});
  no_out.add(GateKind::Not, no_out.input(0));
  CHECK_THROWS_AS(no_out.export_structural(), ContractError);
}

TEST_CASE("parse: error cases carry line numbers") {
  CHECK_THROWS_AS(Netlist::parse_structural(".inputs a\n.outputs n1\nn1 = AND2(a)\n.end\n"), ParseError);
  try {
    Netlist::parse_structural(".inputs a\n.outputs n1\nn1 = NOT(n2)\nn2 = NOT(n1)\n.end\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line >= 3);
  }
  CHECK_THROWS_AS(Netlist::parse_structural(".inputs a\n.outputs n9\n.end\n"), ParseError);
}

TEST_CASE("property: export/parse identity on random DAGs") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Netlist net = random_dag(rng, 1 + static_cast<int>(rng.below(5)), static_cast<int>(rng.below(30)),
                             1 + static_cast<int>(rng.below(3)));
    Netlist back = Netlist::parse_structural(net.export_structural());
    CHECK(back == net);
  }
}

TEST_CASE("property: word-parallel simulation agrees with scalar") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    int inputs = 1 + static_cast<int>(rng.below(6));
    Netlist net = random_dag(rng, inputs, 20, 2);
    size_t domain = 1ULL << inputs;
    size_t words = (domain + 63) / 64;
    std::vector<std::vector<uint64_t>> in_words(inputs, std::vector<uint64_t>(words, 0));
    for (size_t v = 0; v < domain; ++v)
      for (int i = 0; i < inputs; ++i)
        if ((v >> i) & 1) in_words[i][v / 64] |= 1ULL << (v % 64);
    auto out_words = net.simulate_words(in_words, words);
    for (size_t v = 0; v < domain; ++v) {
      auto out = net.simulate(stimulus_from_bits(v, inputs));
      for (size_t o = 0; o < out.size(); ++o)
        CHECK(((out_words[o][v / 64] >> (v % 64)) & 1) == out[o]);
    }
  }
}
