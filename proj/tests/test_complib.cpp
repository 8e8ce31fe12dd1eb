#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "axtnn/complib.hpp"

using namespace axtnn;

namespace {

LibraryBuildConfig tiny_build(uint64_t seed) {
  LibraryBuildConfig cfg;
  cfg.cgp.max_iterations = 400;
  cfg.restarts = 2;
  cfg.tau_points = 3;
  cfg.seed = seed;
  cfg.jobs = 2;
  return cfg;
}

}  // namespace

TEST_CASE("tau schedules: published popcount ranges, log spacing") {
  auto [mae, wcae] = popcount_tau_schedule(8);
  CHECK(mae.lo == doctest::Approx(0.1));
  CHECK(mae.hi == doctest::Approx(4.0));  // 0.5 * 2^ceil(log2 8)
  CHECK(wcae.lo == doctest::Approx(1.0));
  CHECK(wcae.hi == doctest::Approx(128.0));  // 0.5 * 2^8

  auto [mae2, wcae2] = popcount_tau_schedule(2);
  CHECK(wcae2.hi == doctest::Approx(2.0));

  TauSchedule s{ErrorMetric::Mae, 1.0, 100.0, 3};
  auto pts = s.points();
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == doctest::Approx(1.0));
  CHECK(pts[1] == doctest::Approx(10.0));
  CHECK(pts[2] == doctest::Approx(100.0));

  TauSchedule bad{ErrorMetric::Mae, 0.0, 1.0, 2};
  CHECK_THROWS_AS(bad.points(), ContractError);
}

TEST_CASE("popcount library: exact present, everything verified, within tau") {
  CellLibrary lib = CellLibrary::generic();
  LibraryBuildStats stats;
  ComponentLibrary built = build_popcount_library({3, 8}, tiny_build(42), lib, &stats);

  for (int m : {3, 8}) {
    ComponentKey key = ComponentKey::popcount(m);
    REQUIRE(built.has_key(key));
    const ApproxComponent* exact = built.exact_for(key);
    REQUIRE(exact != nullptr);
    CHECK(exact->report.mae == 0);
    for (const auto& comp : built.for_key(key)) {
      CHECK(verify_component(comp, lib));
      if (!comp.exact) {
        mpq_class tau(comp.tau);
        tau.canonicalize();
        CHECK(comp.report.metric_value(comp.metric) <= tau);
      }
    }
  }
  CHECK(stats.runs > 0);
  CHECK(stats.failed_runs == 0);
}

TEST_CASE("ltg library: exact two-tree present, audit pass, oversized refused") {
  CellLibrary lib = CellLibrary::generic();
  LtgSpec small{{1, -1}, 1};
  ComponentLibrary built = build_ltg_library({small}, tiny_build(7), lib);
  ComponentKey key = ComponentKey::ltg(small);
  REQUIRE(built.has_key(key));
  const ApproxComponent* exact = built.exact_for(key);
  REQUIRE(exact != nullptr);
  CHECK(exact->report.mde == 0);
  for (const auto& comp : built.for_key(key)) CHECK(verify_component(comp, lib));

  LtgSpec oversized;
  oversized.k = 2;
  oversized.weights.assign(100, 1);  // 200 input bits
  CHECK_THROWS_AS(build_ltg_library({oversized}, tiny_build(7), lib), BudgetError);
}

TEST_CASE("pareto filter: hand cases") {
  CellLibrary lib = CellLibrary::generic();
  ComponentKey key = ComponentKey::popcount(3);
  Netlist exact = key.exact_netlist();

  auto comp_with = [&](double area, int wcae_err, const std::string& tag) {
    ApproxComponent c;
    c.key = key;
    c.netlist = exact;
    c.id = tag;  // synthetic ids so duplicates of the same netlist coexist
    c.area = area;
    c.metric = ErrorMetric::Wcae;
    c.tau = 10;
    c.report.mode = ErrorMode::Popcount;
    c.report.inputs = 3;
    c.report.mae = 0;
    c.report.wcae = wcae_err;
    return c;
  };

  ComponentLibrary a;
  a.add(comp_with(10, 0, "x"));
  a.add(comp_with(12, 0, "y"));
  ComponentLibrary fa = pareto_filter(a);
  CHECK(fa.size() == 1);
  CHECK(fa.for_key(key)[0].area == 10);

  ComponentLibrary b;
  b.add(comp_with(5, 3, "p"));
  b.add(comp_with(6, 1, "q"));
  b.add(comp_with(7, 0, "r"));
  CHECK(pareto_filter(b).size() == 3);  // mutually non-dominated
}

TEST_CASE("pareto filter: property, output non-dominated and dominates removals") {
  CellLibrary lib = CellLibrary::generic();
  ComponentKey key = ComponentKey::popcount(4);
  Netlist exact = key.exact_netlist();
  Rng rng(99);

  ComponentLibrary full;
  for (int i = 0; i < 100; ++i) {
    ApproxComponent c;
    c.key = key;
    c.netlist = exact;
    c.id = "c" + std::to_string(i);
    c.area = static_cast<double>(rng.below(50));
    c.metric = ErrorMetric::Mae;
    c.tau = 10;
    c.report.mode = ErrorMode::Popcount;
    c.report.inputs = 4;
    c.report.mae = mpq_class(static_cast<unsigned long>(rng.below(64)), 16);
    c.report.mae.canonicalize();
    c.report.wcae = 4;
    full.add(c);
  }
  ComponentLibrary filtered = pareto_filter(full);
  const auto& kept = filtered.for_key(key);

  auto dominates = [](const ApproxComponent& a, const ApproxComponent& b) {
    bool no_worse = a.area <= b.area && a.report.mae <= b.report.mae;
    bool better = a.area < b.area || a.report.mae < b.report.mae;
    return no_worse && better;
  };
  // pairwise non-dominated
  for (const auto& a : kept)
    for (const auto& b : kept)
      if (a.id != b.id) CHECK(!dominates(a, b));
  // every removed element is dominated by something kept
  for (const auto& c : full.for_key(key)) {
    bool still_there = false;
    for (const auto& k : kept) still_there |= k.id == c.id;
    if (still_there) continue;
    bool covered = false;
    for (const auto& k : kept) covered |= dominates(k, c) || (k.area == c.area && k.report.mae == c.report.mae);
    CHECK(covered);
  }
}

TEST_CASE("library persistence round-trips and re-verifies") {
  CellLibrary lib = CellLibrary::generic();
  ComponentLibrary built = build_popcount_library({3}, tiny_build(11), lib);
  std::string dir = "complib_roundtrip";
  built.save(dir);
  ComponentLibrary loaded = ComponentLibrary::load(dir);
  CHECK(loaded.size() == built.size());
  for (const ComponentKey& key : loaded.keys())
    for (const auto& comp : loaded.for_key(key)) CHECK(verify_component(comp, lib));
  std::filesystem::remove_all(dir);
}

TEST_CASE("duplicate runs deduplicate by content") {
  CellLibrary lib = CellLibrary::generic();
  ComponentLibrary a = build_popcount_library({3}, tiny_build(5), lib);
  size_t before = a.size();
  ComponentLibrary b = build_popcount_library({3}, tiny_build(5), lib);
  a.merge(b);  // identical content: nothing new
  CHECK(a.size() == before);
}
