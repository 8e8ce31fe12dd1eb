#pragma once

#include <string>
#include <vector>

#include "axtnn/moo.hpp"
#include "axtnn/varsim.hpp"

namespace axtnn {

/// One experiment = one config. All stage randomness is fanned out from
/// `seed` via named derivations, so a run is reproducible end to end.
struct RunConfig {
  std::string dataset;  // CSV path
  int label_col = -1;
  std::vector<int> ks = {1, 2};
  std::vector<int> hidden_sizes = {3, 6, 10};
  TrainConfig train;
  LibraryBuildConfig library;
  NsgaConfig nsga;
  VariationConfig variation;
  std::string tech_file;       // empty: shipped generic technology
  std::string interface_file;  // empty: published defaults
  std::string out_dir = "out";
  uint64_t seed = 17;
  int jobs = 1;
  bool force = false;

  static RunConfig from_file(const std::string& path);
  void validate() const;

  CellLibrary cells() const;
  InterfaceCostTable interfaces() const;
  std::string dataset_name() const;
  std::string model_path(int k) const;
  std::string exact_netlist_path(int k) const;
  std::string library_dir() const;
  std::string front_csv_path(int k) const;
  std::string combined_front_path() const;
};

/// Missing-prerequisite error carrying the command that produces it.
struct PrerequisiteError : ConfigError {
  PrerequisiteError(const std::string& what, const std::string& command)
      : ConfigError(what + " (run `axtnn " + command + "` first)") {}
};

std::vector<std::string> stage_train(const RunConfig& cfg);
std::vector<std::string> stage_gen_exact(const RunConfig& cfg);
std::string stage_build_library(const RunConfig& cfg);
std::vector<std::string> stage_optimize(const RunConfig& cfg);
std::vector<std::string> stage_variation(const RunConfig& cfg);
std::string stage_report(const RunConfig& cfg);

/// Front CSV row serialization (shared by optimize and the tests).
std::string front_to_csv(const std::vector<ParetoPoint>& front);

}  // namespace axtnn
