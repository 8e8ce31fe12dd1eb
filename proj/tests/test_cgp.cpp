#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axtnn/cgp.hpp"
#include "axtnn/circuitgen.hpp"

using namespace axtnn;

namespace {

int gene_hamming(const Genome& a, const Genome& b) {
  int d = 0;
  for (int i = 0; i < a.length(); ++i) {
    d += a.nodes[i].a != b.nodes[i].a;
    d += a.nodes[i].b != b.nodes[i].b;
    d += a.nodes[i].fn != b.nodes[i].fn;
  }
  for (int i = 0; i < a.num_outputs; ++i) d += a.output_genes[i] != b.output_genes[i];
  return d;
}

}  // namespace

TEST_CASE("genome: seed embedding decodes back to the seed function") {
  Rng rng(5);
  Netlist seed = gen_popcount_exact({5});
  Genome g = Genome::from_netlist(seed, rng);
  Netlist decoded = g.decode();
  REQUIRE(decoded.num_inputs() == seed.num_inputs());
  REQUIRE(decoded.num_outputs() == seed.num_outputs());
  for (uint64_t v = 0; v < 32; ++v) {
    Stimulus s = stimulus_from_bits(v, 5);
    CHECK(decoded.simulate(s) == seed.simulate(s));
  }
}

TEST_CASE("mutate: zero count identity, one count distance one") {
  Rng rng(6);
  Netlist seed = gen_popcount_exact({4});
  Genome g = Genome::from_netlist(seed, rng);

  Genome same = g;
  mutate(same, 0, rng);
  CHECK(same == g);

  for (int trial = 0; trial < 200; ++trial) {
    Genome one = g;
    mutate(one, 1, rng);
    CHECK(gene_hamming(g, one) == 1);
  }
}

TEST_CASE("mutate: property, mutants always decode to valid netlists") {
  Rng rng(7);
  Netlist seed = gen_popcount_exact({6});
  Genome g = Genome::from_netlist(seed, rng);
  for (int trial = 0; trial < 10000; ++trial) {
    mutate(g, 3, rng);
    Netlist net = g.decode();
    net.validate();
    CHECK(net.num_outputs() == seed.num_outputs());
  }
}

TEST_CASE("fitness: exact seed scores its own area; threshold gates candidates") {
  CellLibrary lib = CellLibrary::generic();
  LtgSpec spec{{1, 1, -1}, 1};
  Netlist exact = gen_ltg_exact(spec);
  Rng rng(8);
  Genome seed_genome = Genome::from_netlist(exact, rng);

  FitnessEvaluator eval(exact, spec, EvaluatorKind::Auto, BddManager::kDefaultNodeBudget);
  CHECK(fitness(seed_genome, eval, lib, ErrorMetric::Mde, mpq_class(0)) ==
        doctest::Approx(exact.area(lib)));

  // constant-1 genome: mde = 0.25 (see the bdderr suite)
  Netlist const1(exact.input_names());
  const1.add_output(const1.add(GateKind::Const1));
  Genome c1 = Genome::from_netlist(const1, rng);
  mpq_class tau_low(1, 10), tau_high(3, 10);
  CHECK(std::isinf(fitness(c1, eval, lib, ErrorMetric::Mde, tau_low)));
  CHECK(fitness(c1, eval, lib, ErrorMetric::Mde, tau_high) == doctest::Approx(0.0));
}

TEST_CASE("evolve: tau = 0 stays exact and never grows") {
  CellLibrary lib = CellLibrary::generic();
  Netlist seed = gen_popcount_exact({5});
  CgpConfig cfg;
  cfg.metric = ErrorMetric::Mae;
  cfg.tau = 0.0;
  cfg.max_iterations = 2000;
  cfg.seed = 99;
  EvolutionResult r = evolve(seed, std::nullopt, lib, cfg);
  CHECK(r.best_area <= seed.area(lib));
  CHECK(r.best_report.mae == 0);
  CHECK(r.best_report.wcae == 0);
}

TEST_CASE("evolve: 8-input popcount shrinks under tau_mae = 0.5") {
  CellLibrary lib = CellLibrary::generic();
  Netlist seed = gen_popcount_exact({8});
  CgpConfig cfg;
  cfg.metric = ErrorMetric::Mae;
  cfg.tau = 0.5;
  cfg.max_iterations = 20000;
  cfg.seed = 12345;
  EvolutionResult r = evolve(seed, std::nullopt, lib, cfg);
  CHECK(r.best_area < seed.area(lib));
  CHECK(r.best_report.mae <= mpq_class(1, 2));

  // history is monotone non-increasing in best feasible area
  for (size_t i = 1; i < r.history.size(); ++i)
    CHECK(r.history[i].second < r.history[i - 1].second);
}

TEST_CASE("evolve: deterministic under fixed seed with iteration termination") {
  CellLibrary lib = CellLibrary::generic();
  Netlist seed = gen_popcount_exact({6});
  CgpConfig cfg;
  cfg.metric = ErrorMetric::Mae;
  cfg.tau = 0.4;
  cfg.max_iterations = 3000;
  cfg.seed = 777;
  EvolutionResult a = evolve(seed, std::nullopt, lib, cfg);
  EvolutionResult b = evolve(seed, std::nullopt, lib, cfg);
  CHECK(a.best == b.best);
  CHECK(a.best_area == b.best_area);
  CHECK(a.history == b.history);
}

TEST_CASE("evolve: infeasible configurations are rejected") {
  CellLibrary lib = CellLibrary::generic();
  Netlist seed = gen_popcount_exact({4});
  CgpConfig cfg;  // no termination criterion
  cfg.metric = ErrorMetric::Mae;
  CHECK_THROWS_AS(evolve(seed, std::nullopt, lib, cfg), ContractError);

  CgpConfig cfg2;
  cfg2.metric = ErrorMetric::Mde;  // LTG metric without a spec
  cfg2.max_iterations = 10;
  CHECK_THROWS_AS(evolve(seed, std::nullopt, lib, cfg2), ContractError);
}

TEST_CASE("evolve: LTG mode with BDD evaluator matches enumerate results") {
  CellLibrary lib = CellLibrary::generic();
  LtgSpec spec{{1, 1, -1, -1}, 1};
  Netlist exact = gen_ltg_exact(spec);
  CgpConfig cfg;
  cfg.metric = ErrorMetric::Mde;
  cfg.tau = 0.25;
  cfg.max_iterations = 1500;
  cfg.seed = 31337;

  cfg.evaluator = EvaluatorKind::Enumerate;
  EvolutionResult via_enum = evolve(exact, spec, lib, cfg);
  cfg.evaluator = EvaluatorKind::Bdd;
  EvolutionResult via_bdd = evolve(exact, spec, lib, cfg);

  // same seed, same decisions: identical trajectories
  CHECK(via_enum.best == via_bdd.best);
  CHECK(via_enum.history == via_bdd.history);
  CHECK(via_enum.best_report == via_bdd.best_report);
}
