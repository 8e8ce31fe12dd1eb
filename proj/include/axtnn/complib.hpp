#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axtnn/cgp.hpp"

namespace axtnn {

/// Canonical library key: LTGs by (positive count, negative count, k) —
/// one circuit serves every neuron with the same signature — and popcounts
/// by input count only (Z is never part of the key).
struct ComponentKey {
  enum class Kind { Ltg, Popcount } kind = Kind::Popcount;
  int n_pos = 0, n_neg = 0, k = 1;  // LTG
  int m = 0;                        // popcount

  static ComponentKey ltg(const LtgSpec& spec);
  static ComponentKey popcount(int m);
  static ComponentKey parse(const std::string& s);

  LtgSpec canonical_ltg_spec() const;
  /// The exact circuit for this key (two-tree LTGs by default).
  Netlist exact_netlist(LtgStyle style = LtgStyle::TwoTree) const;

  std::string str() const;
  bool operator<(const ComponentKey& o) const { return str() < o.str(); }
  bool operator==(const ComponentKey& o) const = default;
};

/// One approximate (or exact) circuit with its verified error report, area
/// and provenance. id is a content hash of the netlist text and key.
struct ApproxComponent {
  ComponentKey key;
  std::string id;
  Netlist netlist;
  ErrorReport report;
  double area = 0.0;
  bool exact = false;
  ErrorMetric metric = ErrorMetric::Mae;  // provenance
  double tau = 0.0;
  std::string run_id;

  static std::string content_id(const ComponentKey& key, const Netlist& net);
};

/// Logarithmically spaced thresholds, endpoints inclusive.
struct TauSchedule {
  ErrorMetric metric = ErrorMetric::Mae;
  double lo = 0.0, hi = 0.0;
  int count = 0;

  std::vector<double> points() const;
  void validate() const;
};

/// Published ranges: mae in [0.1, 0.5*2^g] with g = ceil(log2 m), wcae in
/// [1, 0.5*2^m].
std::pair<TauSchedule, TauSchedule> popcount_tau_schedule(int m, int count = 10);

/// The popcount rule applied to the LTG distance-magnitude width gD =
/// ceil(log2(max|S| + 1)): mde in [0.1, 0.5*2^gD], wcde in [1, 0.5*2^gD].
std::pair<TauSchedule, TauSchedule> ltg_tau_schedule(const LtgSpec& spec, int count = 10);

class ComponentLibrary {
 public:
  /// Adds unless an identical netlist is already stored for the key.
  bool add(ApproxComponent comp);

  const std::vector<ApproxComponent>& for_key(const ComponentKey& key) const;
  bool has_key(const ComponentKey& key) const;
  const ApproxComponent* by_id(const std::string& id) const;
  const ApproxComponent* exact_for(const ComponentKey& key) const;

  std::vector<ComponentKey> keys() const;
  size_t size() const;

  void merge(const ComponentLibrary& other);

  /// Directory persistence: <id>.gnl + <id>.json per component, index.json
  /// written last as the commit point.
  void save(const std::string& dir) const;
  static ComponentLibrary load(const std::string& dir);

 private:
  std::map<ComponentKey, std::vector<ApproxComponent>> by_key_;
};

struct LibraryBuildConfig {
  CgpConfig cgp;        // termination/budget template; metric, tau, seed set per run
  int restarts = 3;     // independent CGP runs per (key, metric, tau), best kept
  int tau_points = 10;
  uint64_t seed = 1;
  int jobs = 1;
  LtgStyle ltg_style = LtgStyle::TwoTree;
};

struct LibraryBuildStats {
  int runs = 0;
  int failed_runs = 0;
};

/// One exact component per size plus CGP results over the tau schedules
/// (mae and wcae). Every stored component is re-verified post hoc.
ComponentLibrary build_popcount_library(const std::vector<int>& sizes, const LibraryBuildConfig& cfg,
                                        const CellLibrary& lib, LibraryBuildStats* stats = nullptr);

/// LTG components against both mde and wcde, per spec key.
ComponentLibrary build_ltg_library(const std::vector<LtgSpec>& specs, const LibraryBuildConfig& cfg,
                                   const CellLibrary& lib, LibraryBuildStats* stats = nullptr);

/// Keeps the (area, error) non-dominated subset per key and provenance
/// metric; the exact component is always retained.
ComponentLibrary pareto_filter(const ComponentLibrary& library);

/// Recomputes the error report (independent bdderr call against the key's
/// exact circuit) and the area; true iff both match the stored values.
bool verify_component(const ApproxComponent& comp, const CellLibrary& lib);

}  // namespace axtnn
