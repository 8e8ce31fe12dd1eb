// axtnn -- approximate printed ternary neural network design pipeline.
//
// Subcommands cover the full flow: train models, generate exact bespoke
// netlists, evolve the approximate component library, compose accuracy/area
// fronts with interface costs, run analog-variation Monte Carlo, and emit a
// summary report. One global seed drives every stage.

#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "axtnn/pipeline.hpp"

using namespace axtnn;

int main(int argc, char** argv) {
  CLI::App app{"approximate printed TNN designer"};
  app.require_subcommand(1);

  std::string config_path, tech, interface_table, out_dir, dataset;
  uint64_t seed = 0;
  bool have_seed = false, force = false;
  int jobs = 0;

  app.add_option("--config", config_path, "run configuration (JSON)");
  app.add_option("--tech", tech, "technology file override");
  app.add_option("--interface-table", interface_table, "interface cost table override");
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--dataset", dataset, "dataset CSV override");
  app.add_option("--seed", seed, "global seed override")->each([&](const std::string&) {
    have_seed = true;
  });
  app.add_option("--jobs", jobs, "worker pool size");
  app.add_flag("--force", force, "re-run stages whose outputs already exist");

  auto* cmd_train = app.add_subcommand("train", "train one TNN per input precision");
  auto* cmd_gen = app.add_subcommand("gen-exact", "assemble exact bespoke netlists");
  auto* cmd_lib = app.add_subcommand("build-library", "evolve the approximate component library");
  auto* cmd_opt = app.add_subcommand("optimize", "NSGA-II accuracy/area fronts + system Pareto");
  auto* cmd_var = app.add_subcommand("variation", "analog-interface variation Monte Carlo");
  auto* cmd_rep = app.add_subcommand("report", "summary table for a finished run");
  auto* cmd_all = app.add_subcommand("all", "run the full pipeline in order");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::from_file(config_path);
    if (!dataset.empty()) cfg.dataset = dataset;
    if (!tech.empty()) cfg.tech_file = tech;
    if (!interface_table.empty()) cfg.interface_file = interface_table;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (have_seed) cfg.seed = seed;
    if (jobs > 0) cfg.jobs = jobs;
    cfg.force = force;

    if (cmd_train->parsed()) stage_train(cfg);
    if (cmd_gen->parsed()) stage_gen_exact(cfg);
    if (cmd_lib->parsed()) stage_build_library(cfg);
    if (cmd_opt->parsed()) stage_optimize(cfg);
    if (cmd_var->parsed()) stage_variation(cfg);
    if (cmd_rep->parsed()) stage_report(cfg);
    if (cmd_all->parsed()) {
      stage_train(cfg);
      stage_gen_exact(cfg);
      stage_build_library(cfg);
      stage_optimize(cfg);
      stage_variation(cfg);
      stage_report(cfg);
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
