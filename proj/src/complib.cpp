#include "axtnn/complib.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace fs = std::filesystem;

namespace axtnn {

ComponentKey ComponentKey::ltg(const LtgSpec& spec) {
  spec.validate(1 << 20);  // key formation has no size limit
  ComponentKey key;
  key.kind = Kind::Ltg;
  key.n_pos = spec.n_pos();
  key.n_neg = spec.n_neg();
  key.k = spec.k;
  return key;
}

ComponentKey ComponentKey::popcount(int m) {
  PopcountSpec{m}.validate();
  ComponentKey key;
  key.kind = Kind::Popcount;
  key.m = m;
  return key;
}

std::string ComponentKey::str() const {
  if (kind == Kind::Ltg)
    return "ltg_p" + std::to_string(n_pos) + "_n" + std::to_string(n_neg) + "_k" + std::to_string(k);
  return "pc_m" + std::to_string(m);
}

ComponentKey ComponentKey::parse(const std::string& s) {
  ComponentKey key;
  if (s.rfind("pc_m", 0) == 0) {
    key.kind = Kind::Popcount;
    key.m = std::stoi(s.substr(4));
    return key;
  }
  if (s.rfind("ltg_p", 0) == 0) {
    size_t n_at = s.find("_n"), k_at = s.find("_k");
    if (n_at == std::string::npos || k_at == std::string::npos)
      throw ConfigError("bad component key: " + s);
    key.kind = Kind::Ltg;
    key.n_pos = std::stoi(s.substr(5, n_at - 5));
    key.n_neg = std::stoi(s.substr(n_at + 2, k_at - n_at - 2));
    key.k = std::stoi(s.substr(k_at + 2));
    return key;
  }
  throw ConfigError("bad component key: " + s);
}

LtgSpec ComponentKey::canonical_ltg_spec() const {
  if (kind != Kind::Ltg) throw ContractError("not an LTG key");
  LtgSpec spec;
  spec.k = k;
  spec.weights.assign(n_pos, 1);
  spec.weights.insert(spec.weights.end(), n_neg, -1);
  return spec;
}

Netlist ComponentKey::exact_netlist(LtgStyle style) const {
  if (kind == Kind::Ltg) return gen_ltg_exact(canonical_ltg_spec(), style);
  return gen_popcount_exact({m});
}

std::string ApproxComponent::content_id(const ComponentKey& key, const Netlist& net) {
  return hex64(fnv1a(key.str() + "\n" + net.export_structural()));
}

void TauSchedule::validate() const {
  if (lo <= 0) throw ContractError("tau schedule lo must be > 0");
  if (hi < lo) throw ContractError("tau schedule hi must be >= lo");
  if (count < 1) throw ContractError("tau schedule needs at least one point");
}

std::vector<double> TauSchedule::points() const {
  validate();
  std::vector<double> pts;
  pts.reserve(count);
  if (count == 1) {
    pts.push_back(lo);
    return pts;
  }
  double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i) pts.push_back(lo * std::exp(ratio * i / (count - 1)));
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

std::pair<TauSchedule, TauSchedule> popcount_tau_schedule(int m, int count) {
  if (m < 2) throw ContractError("popcount tau schedule needs m >= 2");
  int g = bit_width(static_cast<uint64_t>(m - 1));  // ceil(log2 m)
  TauSchedule mae{ErrorMetric::Mae, 0.1, 0.5 * std::pow(2.0, g), count};
  TauSchedule wcae{ErrorMetric::Wcae, 1.0, 0.5 * std::pow(2.0, m), count};
  return {mae, wcae};
}

std::pair<TauSchedule, TauSchedule> ltg_tau_schedule(const LtgSpec& spec, int count) {
  long max_d = spec.max_abs_sum() + 1;
  int gd = bit_width(static_cast<uint64_t>(max_d - 1));  // ceil(log2 max_d)
  double hi = 0.5 * std::pow(2.0, gd);
  TauSchedule mde{ErrorMetric::Mde, 0.1, std::max(hi, 0.1), count};
  TauSchedule wcde{ErrorMetric::Wcde, 1.0, std::max(hi, 1.0), count};
  return {mde, wcde};
}

bool ComponentLibrary::add(ApproxComponent comp) {
  auto& list = by_key_[comp.key];
  for (const auto& existing : list)
    if (existing.id == comp.id) return false;
  list.push_back(std::move(comp));
  return true;
}

const std::vector<ApproxComponent>& ComponentLibrary::for_key(const ComponentKey& key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end()) throw ConfigError("library has no components for key " + key.str());
  return it->second;
}

bool ComponentLibrary::has_key(const ComponentKey& key) const { return by_key_.count(key) != 0; }

const ApproxComponent* ComponentLibrary::by_id(const std::string& id) const {
  for (const auto& [key, list] : by_key_)
    for (const auto& comp : list)
      if (comp.id == id) return &comp;
  return nullptr;
}

const ApproxComponent* ComponentLibrary::exact_for(const ComponentKey& key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end()) return nullptr;
  for (const auto& comp : it->second)
    if (comp.exact) return &comp;
  return nullptr;
}

std::vector<ComponentKey> ComponentLibrary::keys() const {
  std::vector<ComponentKey> out;
  out.reserve(by_key_.size());
  for (const auto& [key, list] : by_key_) out.push_back(key);
  return out;
}

size_t ComponentLibrary::size() const {
  size_t n = 0;
  for (const auto& [key, list] : by_key_) n += list.size();
  return n;
}

void ComponentLibrary::merge(const ComponentLibrary& other) {
  for (const auto& [key, list] : other.by_key_)
    for (const auto& comp : list) add(comp);
}

void ComponentLibrary::save(const std::string& dir) const {
  fs::create_directories(dir);
  nlohmann::json index = nlohmann::json::array();
  for (const auto& [key, list] : by_key_) {
    for (const auto& comp : list) {
      std::string gnl_name = comp.id + ".gnl";
      comp.netlist.save(dir + "/" + gnl_name);
      nlohmann::json meta;
      meta["key"] = comp.key.str();
      meta["id"] = comp.id;
      meta["netlist"] = gnl_name;
      meta["area"] = comp.area;
      meta["exact"] = comp.exact;
      meta["metric"] = metric_name(comp.metric);
      meta["tau"] = comp.tau;
      meta["run_id"] = comp.run_id;
      meta["error"] = nlohmann::json::parse(comp.report.to_json_string());
      std::ofstream mf(dir + "/" + comp.id + ".json");
      if (!mf) throw ConfigError("cannot write component metadata in " + dir);
      mf << meta.dump(2) << "\n";
      index.push_back({{"key", comp.key.str()}, {"id", comp.id}});
    }
  }
  std::ofstream idx(dir + "/index.json");
  if (!idx) throw ConfigError("cannot write library index in " + dir);
  idx << index.dump(2) << "\n";
}

ComponentLibrary ComponentLibrary::load(const std::string& dir) {
  std::ifstream idx(dir + "/index.json");
  if (!idx) throw ConfigError("no library index in " + dir);
  nlohmann::json index;
  idx >> index;
  ComponentLibrary lib;
  for (const auto& entry : index) {
    std::string id = entry.at("id").get<std::string>();
    std::ifstream mf(dir + "/" + id + ".json");
    if (!mf) throw ConfigError("missing component metadata " + id);
    nlohmann::json meta;
    mf >> meta;
    ApproxComponent comp;
    comp.key = ComponentKey::parse(meta.at("key").get<std::string>());
    comp.id = id;
    comp.netlist = Netlist::load(dir + "/" + meta.at("netlist").get<std::string>());
    comp.area = meta.at("area").get<double>();
    comp.exact = meta.at("exact").get<bool>();
    comp.metric = metric_from_name(meta.at("metric").get<std::string>());
    comp.tau = meta.at("tau").get<double>();
    comp.run_id = meta.value("run_id", std::string{});
    comp.report = ErrorReport::from_json_string(meta.at("error").dump());
    lib.add(std::move(comp));
  }
  return lib;
}

// ---------------------------------------------------------------------------

namespace {

struct BuildTask {
  ComponentKey key;
  ErrorMetric metric;
  double tau;
  int tau_index;
  int restart;
};

ApproxComponent make_exact_component(const ComponentKey& key, const CellLibrary& lib, LtgStyle style) {
  ApproxComponent comp;
  comp.key = key;
  comp.netlist = key.exact_netlist(style);
  comp.id = ApproxComponent::content_id(key, comp.netlist);
  comp.exact = true;
  comp.area = comp.netlist.area(lib);
  comp.tau = 0.0;
  comp.run_id = "exact";
  if (key.kind == ComponentKey::Kind::Ltg) {
    comp.metric = ErrorMetric::Mde;
    comp.report.mode = ErrorMode::Ltg;
    comp.report.inputs = key.n_pos * key.k + key.n_neg * key.k;
    comp.report.ep = 0;
    comp.report.mde = 0;
    comp.report.wcde = 0;
  } else {
    comp.metric = ErrorMetric::Mae;
    comp.report.mode = ErrorMode::Popcount;
    comp.report.inputs = key.m;
    comp.report.mae = 0;
    comp.report.wcae = 0;
  }
  return comp;
}

// Runs the task list on a small worker pool; slot order keeps the result
// deterministic regardless of scheduling.
std::vector<std::optional<ApproxComponent>> run_tasks(const std::vector<BuildTask>& tasks,
                                                      const LibraryBuildConfig& cfg,
                                                      const CellLibrary& lib,
                                                      std::atomic<int>& failures) {
  std::vector<std::optional<ApproxComponent>> slots(tasks.size());
  std::atomic<size_t> next{0};
  int jobs = std::max(1, cfg.jobs);
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const BuildTask& task = tasks[i];
      try {
        Netlist seed = task.key.exact_netlist(cfg.ltg_style);
        if (seed.area(lib) == 0.0) continue;  // nothing to shrink
        CgpConfig run_cfg = cfg.cgp;
        run_cfg.metric = task.metric;
        run_cfg.tau = task.tau;
        std::string run_id = task.key.str() + ":" + metric_name(task.metric) + ":t" +
                             std::to_string(task.tau_index) + ":r" + std::to_string(task.restart);
        run_cfg.seed = derive_seed(cfg.seed, run_id);
        std::optional<LtgSpec> spec;
        if (task.key.kind == ComponentKey::Kind::Ltg) spec = task.key.canonical_ltg_spec();
        EvolutionResult res = evolve(seed, spec, lib, run_cfg);

        ApproxComponent comp;
        comp.key = task.key;
        comp.netlist = res.best.decode();
        comp.id = ApproxComponent::content_id(task.key, comp.netlist);
        comp.report = res.best_report;
        comp.area = res.best_area;
        comp.exact = false;
        comp.metric = task.metric;
        comp.tau = task.tau;
        comp.run_id = run_id;
        slots[i] = std::move(comp);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "library build: run for %s failed: %s\n", tasks[i].key.str().c_str(),
                     e.what());
        ++failures;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return slots;
}

ComponentLibrary build_library(const std::vector<ComponentKey>& keys,
                               const std::vector<std::pair<TauSchedule, TauSchedule>>& schedules,
                               const LibraryBuildConfig& cfg, const CellLibrary& lib,
                               LibraryBuildStats* stats) {
  ComponentLibrary out;
  std::vector<BuildTask> tasks;
  for (size_t ki = 0; ki < keys.size(); ++ki) {
    out.add(make_exact_component(keys[ki], lib, cfg.ltg_style));
    for (const TauSchedule& sched : {schedules[ki].first, schedules[ki].second}) {
      if (sched.count < 1) continue;
      auto pts = sched.points();
      for (int ti = 0; ti < static_cast<int>(pts.size()); ++ti)
        for (int r = 0; r < cfg.restarts; ++r)
          tasks.push_back({keys[ki], sched.metric, pts[ti], ti, r});
    }
  }
  std::atomic<int> failures{0};
  auto slots = run_tasks(tasks, cfg, lib, failures);

  // keep the best restart per (key, metric, tau); re-verify before storing
  for (size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) continue;
    bool best_of_restarts = true;
    for (size_t j = 0; j < slots.size(); ++j) {
      if (i == j || !slots[j]) continue;
      const BuildTask &a = tasks[i], &b = tasks[j];
      if (a.key == b.key && a.metric == b.metric && a.tau_index == b.tau_index &&
          (slots[j]->area < slots[i]->area ||
           (slots[j]->area == slots[i]->area && b.restart < a.restart))) {
        best_of_restarts = false;
        break;
      }
    }
    if (!best_of_restarts) continue;
    if (!verify_component(*slots[i], lib)) {
      std::fprintf(stderr, "library build: verification failed for %s\n", slots[i]->id.c_str());
      ++failures;
      continue;
    }
    out.add(std::move(*slots[i]));
  }
  if (stats) {
    stats->runs += static_cast<int>(tasks.size());
    stats->failed_runs += failures.load();
  }
  return out;
}

}  // namespace

ComponentLibrary build_popcount_library(const std::vector<int>& sizes, const LibraryBuildConfig& cfg,
                                        const CellLibrary& lib, LibraryBuildStats* stats) {
  std::vector<ComponentKey> keys;
  std::vector<std::pair<TauSchedule, TauSchedule>> schedules;
  for (int m : sizes) {
    keys.push_back(ComponentKey::popcount(m));
    if (m >= 2) {
      schedules.push_back(popcount_tau_schedule(m, cfg.tau_points));
    } else {
      TauSchedule none{ErrorMetric::Mae, 0.1, 0.1, 0};
      schedules.push_back({none, none});
    }
  }
  return build_library(keys, schedules, cfg, lib, stats);
}

ComponentLibrary build_ltg_library(const std::vector<LtgSpec>& specs, const LibraryBuildConfig& cfg,
                                   const CellLibrary& lib, LibraryBuildStats* stats) {
  std::vector<ComponentKey> keys;
  std::vector<std::pair<TauSchedule, TauSchedule>> schedules;
  for (const LtgSpec& spec : specs) {
    spec.validate();  // refuses n*k over the supported maximum
    ComponentKey key = ComponentKey::ltg(spec);
    bool duplicate = false;
    for (const auto& k : keys) duplicate |= k == key;
    if (duplicate) continue;
    keys.push_back(key);
    schedules.push_back(ltg_tau_schedule(spec, cfg.tau_points));
  }
  return build_library(keys, schedules, cfg, lib, stats);
}

ComponentLibrary pareto_filter(const ComponentLibrary& library) {
  ComponentLibrary out;
  for (const ComponentKey& key : library.keys()) {
    const auto& comps = library.for_key(key);
    for (const auto& comp : comps) {
      if (comp.exact) {
        out.add(comp);
        continue;
      }
      mpq_class err = comp.report.metric_value(comp.metric);
      bool dominated = false;
      for (const auto& other : comps) {
        if (other.id == comp.id) continue;
        mpq_class other_err;
        if (other.exact)
          other_err = 0;
        else if (other.metric != comp.metric)
          continue;  // dominance judged within the provenance metric
        else
          other_err = other.report.metric_value(comp.metric);
        bool no_worse = other.area <= comp.area && other_err <= err;
        bool better = other.area < comp.area || other_err < err;
        if (no_worse && better) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.add(comp);
    }
  }
  return out;
}

bool verify_component(const ApproxComponent& comp, const CellLibrary& lib) {
  Netlist exact = comp.key.exact_netlist();
  ErrorReport recomputed;
  if (comp.key.kind == ComponentKey::Kind::Ltg)
    recomputed = ltg_error(exact, comp.netlist, comp.key.canonical_ltg_spec());
  else
    recomputed = popcount_error(exact, comp.netlist);
  if (!(recomputed == comp.report)) return false;
  return comp.netlist.area(lib) == comp.area;
}

}  // namespace axtnn
