#include "axtnn/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "axtnn/svg.hpp"

namespace fs = std::filesystem;

namespace axtnn {

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  RunConfig cfg;
  cfg.dataset = j.value("dataset", cfg.dataset);
  cfg.label_col = j.value("label_col", cfg.label_col);
  if (j.contains("ks")) cfg.ks = j["ks"].get<std::vector<int>>();
  if (j.contains("hidden_sizes")) cfg.hidden_sizes = j["hidden_sizes"].get<std::vector<int>>();
  cfg.tech_file = j.value("tech_file", cfg.tech_file);
  cfg.interface_file = j.value("interface_file", cfg.interface_file);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.jobs = j.value("jobs", cfg.jobs);
  if (j.contains("train")) {
    const auto& t = j["train"];
    cfg.train.epochs = t.value("epochs", cfg.train.epochs);
    cfg.train.batch = t.value("batch", cfg.train.batch);
    cfg.train.restarts = t.value("restarts", cfg.train.restarts);
    cfg.train.polish_sweeps = t.value("polish_sweeps", cfg.train.polish_sweeps);
    if (t.contains("learning_rates"))
      cfg.train.learning_rates = t["learning_rates"].get<std::vector<double>>();
  }
  if (j.contains("library")) {
    const auto& l = j["library"];
    cfg.library.restarts = l.value("restarts", cfg.library.restarts);
    cfg.library.tau_points = l.value("tau_points", cfg.library.tau_points);
    cfg.library.cgp.max_iterations = l.value("cgp_iterations", cfg.library.cgp.max_iterations);
    cfg.library.cgp.wall_clock_seconds = l.value("cgp_seconds", cfg.library.cgp.wall_clock_seconds);
    cfg.library.cgp.lambda = l.value("lambda", cfg.library.cgp.lambda);
  }
  if (j.contains("nsga")) {
    const auto& n = j["nsga"];
    cfg.nsga.population = n.value("population", cfg.nsga.population);
    cfg.nsga.generations = n.value("generations", cfg.nsga.generations);
    cfg.nsga.crossover_prob = n.value("crossover_prob", cfg.nsga.crossover_prob);
    cfg.nsga.mutation_rate = n.value("mutation_rate", cfg.nsga.mutation_rate);
  }
  if (j.contains("variation")) {
    const auto& v = j["variation"];
    cfg.variation.sigma = v.value("sigma", cfg.variation.sigma);
    cfg.variation.trials = v.value("trials", cfg.variation.trials);
  }
  return cfg;
}

void RunConfig::validate() const {
  if (dataset.empty()) throw ConfigError("config needs a dataset path");
  if (!fs::exists(dataset)) throw ConfigError("dataset file does not exist: " + dataset);
  if (!tech_file.empty() && !fs::exists(tech_file))
    throw ConfigError("technology file does not exist: " + tech_file);
  if (!interface_file.empty() && !fs::exists(interface_file))
    throw ConfigError("interface table does not exist: " + interface_file);
  if (ks.empty()) throw ConfigError("config needs at least one precision");
  for (int k : ks)
    if (k < 1 || k > 4) throw ConfigError("precisions must be within 1..4");
  if (hidden_sizes.empty()) throw ConfigError("config needs a hidden-size grid");
}

CellLibrary RunConfig::cells() const {
  return tech_file.empty() ? CellLibrary::generic() : CellLibrary::load(tech_file);
}

InterfaceCostTable RunConfig::interfaces() const {
  return interface_file.empty() ? InterfaceCostTable::defaults()
                                : InterfaceCostTable::load(interface_file);
}

std::string RunConfig::dataset_name() const {
  size_t pos = dataset.find_last_of('/');
  std::string base = pos == std::string::npos ? dataset : dataset.substr(pos + 1);
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") base.resize(base.size() - 4);
  return base;
}

std::string RunConfig::model_path(int k) const {
  return out_dir + "/models/" + dataset_name() + "_k" + std::to_string(k) + ".json";
}
std::string RunConfig::exact_netlist_path(int k) const {
  return out_dir + "/netlists/" + dataset_name() + "_k" + std::to_string(k) + "_exact.gnl";
}
std::string RunConfig::library_dir() const { return out_dir + "/library"; }
std::string RunConfig::front_csv_path(int k) const {
  return out_dir + "/fronts/" + dataset_name() + "_k" + std::to_string(k) + ".csv";
}
std::string RunConfig::combined_front_path() const {
  return out_dir + "/fronts/" + dataset_name() + "_combined.csv";
}

namespace {

void write_run_manifest(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  std::string path = cfg.out_dir + "/run.json";
  if (fs::exists(path) && !cfg.force) return;
  nlohmann::json j;
  j["dataset"] = cfg.dataset;
  j["label_col"] = cfg.label_col;
  j["ks"] = cfg.ks;
  j["hidden_sizes"] = cfg.hidden_sizes;
  j["seed"] = cfg.seed;
  j["tech_file"] = cfg.tech_file;
  j["interface_file"] = cfg.interface_file;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

Dataset load_dataset(const RunConfig& cfg) {
  return Dataset::ingest_csv(cfg.dataset, cfg.label_col, cfg.seed);
}

std::vector<LtgSpec> model_ltg_specs(const TnnModel& model) {
  std::vector<LtgSpec> specs;
  for (int j = 0; j < model.m; ++j) {
    LtgSpec spec;
    spec.k = model.k;
    spec.weights.resize(model.n);
    for (int i = 0; i < model.n; ++i) spec.weights[i] = model.w1(j, i);
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<int> model_popcount_sizes(const TnnModel& model) {
  std::set<int> sizes;
  for (int i = 0; i < model.c; ++i) sizes.insert(model.m - model.z[i]);
  return {sizes.begin(), sizes.end()};
}

}  // namespace

std::vector<std::string> stage_train(const RunConfig& cfg) {
  cfg.validate();
  write_run_manifest(cfg);
  fs::create_directories(cfg.out_dir + "/models");
  Dataset data = load_dataset(cfg);
  std::vector<std::string> paths;
  for (int k : cfg.ks) {
    std::string path = cfg.model_path(k);
    paths.push_back(path);
    if (fs::exists(path) && !cfg.force) {
      std::fprintf(stderr, "train: %s exists, skipping (use --force to retrain)\n", path.c_str());
      continue;
    }
    TrainConfig tc = cfg.train;
    tc.seed = cfg.seed;
    TnnModel model = train_grid(data, k, cfg.hidden_sizes, tc);
    model.save(path);
    std::fprintf(stderr, "train: %s (m=%d, train=%.4f, test=%.4f)\n", path.c_str(), model.m,
                 accuracy(model, std::nullopt, nullptr, data, Split::Train),
                 accuracy(model, std::nullopt, nullptr, data, Split::Test));
  }
  return paths;
}

std::vector<std::string> stage_gen_exact(const RunConfig& cfg) {
  cfg.validate();
  write_run_manifest(cfg);
  fs::create_directories(cfg.out_dir + "/netlists");
  CellLibrary cells = cfg.cells();
  std::vector<std::string> paths;
  for (int k : cfg.ks) {
    if (!fs::exists(cfg.model_path(k)))
      throw PrerequisiteError("missing model " + cfg.model_path(k), "train");
    TnnModel model = TnnModel::load(cfg.model_path(k));
    std::string path = cfg.exact_netlist_path(k);
    paths.push_back(path);
    if (fs::exists(path) && !cfg.force) {
      std::fprintf(stderr, "gen-exact: %s exists, skipping\n", path.c_str());
      continue;
    }
    Netlist net = assemble_tnn_exact(model, cfg.library.ltg_style);
    net.save(path);
    double area = net.area(cells);
    nlohmann::json report;
    report["model"] = cfg.model_path(k);
    report["gates"] = net.num_gates();
    report["area_units"] = area;
    report["area_mm2"] = area * cells.area_unit_mm2();
    report["power_mw"] = cells.estimate_power(area);
    nlohmann::json hist;
    auto h = net.gate_histogram();
    for (GateKind kind : all_gate_kinds())
      if (h[static_cast<int>(kind)] > 0) hist[gate_name(kind)] = h[static_cast<int>(kind)];
    report["gate_histogram"] = hist;
    std::ofstream rf(path.substr(0, path.size() - 4) + "_report.json");
    rf << report.dump(2) << "\n";
    std::fprintf(stderr, "gen-exact: %s (%zu gates, area %.1f)\n", path.c_str(), net.num_gates(),
                 area);
  }
  return paths;
}

std::string stage_build_library(const RunConfig& cfg) {
  cfg.validate();
  write_run_manifest(cfg);
  std::string dir = cfg.library_dir();
  if (fs::exists(dir + "/index.json") && !cfg.force) {
    std::fprintf(stderr, "build-library: %s exists, skipping\n", dir.c_str());
    return dir;
  }
  CellLibrary cells = cfg.cells();
  std::vector<LtgSpec> specs;
  std::vector<int> sizes;
  for (int k : cfg.ks) {
    if (!fs::exists(cfg.model_path(k)))
      throw PrerequisiteError("missing model " + cfg.model_path(k), "train");
    TnnModel model = TnnModel::load(cfg.model_path(k));
    auto s = model_ltg_specs(model);
    specs.insert(specs.end(), s.begin(), s.end());
    for (int m : model_popcount_sizes(model)) sizes.push_back(m);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  LibraryBuildConfig lc = cfg.library;
  lc.seed = derive_seed(cfg.seed, "library:" + cfg.dataset_name());
  lc.jobs = cfg.jobs;
  if (lc.cgp.max_iterations <= 0 && lc.cgp.wall_clock_seconds <= 0)
    lc.cgp.max_iterations = 20000;

  LibraryBuildStats stats;
  ComponentLibrary lib = build_ltg_library(specs, lc, cells, &stats);
  lib.merge(build_popcount_library(sizes, lc, cells, &stats));
  lib = pareto_filter(lib);
  lib.save(dir);
  std::fprintf(stderr, "build-library: %zu components under %s (%d runs, %d failed)\n", lib.size(),
               dir.c_str(), stats.runs, stats.failed_runs);
  return dir;
}

std::string front_to_csv(const std::vector<ParetoPoint>& front) {
  std::ostringstream out;
  out << "accuracy_test,accuracy_eval,est_area,total_area_mm2,total_power_mw,k,interface,assignment\n";
  char buf[256];
  for (const auto& p : front) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f,%d,%s,%s\n", p.accuracy_test,
                  p.accuracy_eval, p.est_area, p.total_area_mm2, p.total_power_mw, p.k,
                  converter_name(p.interface_kind), p.assignment_id.c_str());
    out << buf;
  }
  return out.str();
}

std::vector<std::string> stage_optimize(const RunConfig& cfg) {
  cfg.validate();
  write_run_manifest(cfg);
  fs::create_directories(cfg.out_dir + "/fronts/assignments");
  if (!fs::exists(cfg.library_dir() + "/index.json"))
    throw PrerequisiteError("missing component library", "build-library");
  CellLibrary cells = cfg.cells();
  InterfaceCostTable table = cfg.interfaces();
  ComponentLibrary lib = ComponentLibrary::load(cfg.library_dir());
  Dataset data = load_dataset(cfg);

  std::vector<std::string> outputs;
  std::vector<std::vector<ParetoPoint>> fronts;
  std::vector<ScatterSeries> series;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  for (int k : cfg.ks) {
    if (!fs::exists(cfg.model_path(k)))
      throw PrerequisiteError("missing model " + cfg.model_path(k), "train");
    TnnModel model = TnnModel::load(cfg.model_path(k));
    NsgaConfig nc = cfg.nsga;
    nc.seed = cfg.seed;
    auto front = nsga2(model, lib, data, cells, nc);
    // attach interface costs for the per-k file as well
    auto costed = system_pareto({front}, table, model.n, cells);
    fronts.push_back(costed);

    std::string path = cfg.front_csv_path(k);
    write_text_file(path, front_to_csv(costed));
    outputs.push_back(path);
    ScatterSeries s;
    s.label = "k=" + std::to_string(k);
    s.color = colors[(k - 1) % 4];
    s.staircase = true;
    for (const auto& p : costed) s.points.push_back({p.total_area_mm2, p.accuracy_test});
    series.push_back(std::move(s));
    for (const auto& p : costed)
      p.assignment.save(cfg.out_dir + "/fronts/assignments/" + p.assignment_id + ".json");
    std::fprintf(stderr, "optimize: %s (%zu points)\n", path.c_str(), costed.size());
  }

  auto combined = system_pareto(fronts, table, data.num_features(), cells);
  write_text_file(cfg.combined_front_path(), front_to_csv(combined));
  outputs.push_back(cfg.combined_front_path());

  std::string svg_path = cfg.out_dir + "/fronts/" + cfg.dataset_name() + "_fronts.svg";
  write_text_file(svg_path, svg_scatter(series, "total area (mm2, incl. interface)", "test accuracy"));
  outputs.push_back(svg_path);
  return outputs;
}

std::vector<std::string> stage_variation(const RunConfig& cfg) {
  cfg.validate();
  write_run_manifest(cfg);
  fs::create_directories(cfg.out_dir + "/variation");
  Dataset data = load_dataset(cfg);
  std::vector<std::string> outputs;
  std::vector<BoxStats> boxes;
  nlohmann::json summary;
  for (int k : cfg.ks) {
    if (!fs::exists(cfg.model_path(k)))
      throw PrerequisiteError("missing model " + cfg.model_path(k), "train");
    TnnModel model = TnnModel::load(cfg.model_path(k));
    VariationConfig vc = cfg.variation;
    vc.seed = derive_seed(cfg.seed, "variation:" + cfg.dataset_name() + ":k" + std::to_string(k));
    VariationResult r = mc_accuracy(model, std::nullopt, nullptr, data, Split::Test, vc);

    std::string tag = cfg.dataset_name() + "_k" + std::to_string(k);
    std::string csv_path = cfg.out_dir + "/variation/" + tag + "_exact.csv";
    std::ostringstream csv;
    csv << "trial,accuracy\n";
    for (size_t t = 0; t < r.trial_accuracy.size(); ++t)
      csv << t << "," << r.trial_accuracy[t] << "\n";
    write_text_file(csv_path, csv.str());
    outputs.push_back(csv_path);

    nlohmann::json row;
    row["nominal"] = r.nominal;
    row["mean"] = r.mean;
    row["stddev"] = r.stddev;
    row["min"] = r.min;
    row["max"] = r.max;
    row["sigma"] = vc.sigma;
    row["trials"] = vc.trials;
    summary[tag] = row;

    auto sorted = r.trial_accuracy;
    std::sort(sorted.begin(), sorted.end());
    auto q = [&](double f) { return sorted[static_cast<size_t>(f * (sorted.size() - 1))]; };
    boxes.push_back({tag, r.min, q(0.25), q(0.5), q(0.75), r.max});
    std::fprintf(stderr, "variation: %s (nominal %.4f, mean %.4f, std %.4f)\n", tag.c_str(),
                 r.nominal, r.mean, r.stddev);
  }
  std::string summary_path = cfg.out_dir + "/variation/summary.json";
  std::ofstream sf(summary_path);
  sf << summary.dump(2) << "\n";
  outputs.push_back(summary_path);
  std::string svg_path = cfg.out_dir + "/variation/boxplot.svg";
  write_text_file(svg_path, svg_boxplot(boxes, "test accuracy"));
  outputs.push_back(svg_path);
  return outputs;
}

std::string stage_report(const RunConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir + "/report");
  CellLibrary cells = cfg.cells();
  InterfaceCostTable table = cfg.interfaces();
  Dataset data = load_dataset(cfg);

  std::ostringstream csv;
  csv << "dataset,k,m,design,accuracy,margin,est_area_units,classifier_mm2,interface,interface_mm2,"
         "total_mm2,total_mw\n";
  auto emit = [&](const TnnModel& model, const std::string& design, double acc, long margin,
                  double est_area) {
    ConverterKind kind = model.k == 1 ? ConverterKind::Abc : ConverterKind::Flash;
    InterfaceCost cost = table.cost(kind, model.k);
    double classifier_mm2 = est_area * cells.area_unit_mm2();
    double iface_mm2 = model.n * cost.area_mm2;
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%s,%.4f,%ld,%.2f,%.4f,%s,%.4f,%.4f,%.4f\n",
                  model.dataset.c_str(), model.k, model.m, design.c_str(), acc, margin, est_area,
                  classifier_mm2, converter_name(kind), iface_mm2, classifier_mm2 + iface_mm2,
                  cells.estimate_power(est_area) + model.n * cost.power_mw);
    csv << buf;
  };

  for (int k : cfg.ks) {
    if (!fs::exists(cfg.model_path(k)))
      throw PrerequisiteError("missing model " + cfg.model_path(k), "train");
    TnnModel model = TnnModel::load(cfg.model_path(k));
    double exact_acc = accuracy(model, std::nullopt, nullptr, data, Split::Test);
    long margin = confidence_margin(model, std::nullopt, nullptr, data, Split::Test);
    double exact_area = assemble_tnn_exact(model, cfg.library.ltg_style).area(cells);
    emit(model, "exact", exact_acc, margin, exact_area);

    std::string front_path = cfg.front_csv_path(k);
    if (fs::exists(front_path) && fs::exists(cfg.library_dir() + "/index.json")) {
      ComponentLibrary lib = ComponentLibrary::load(cfg.library_dir());
      std::ifstream ff(front_path);
      std::string line;
      std::getline(ff, line);  // header
      struct Row {
        double acc, est;
        std::string id;
      };
      std::vector<Row> rows;
      while (std::getline(ff, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells_v;
        while (std::getline(ss, cell, ',')) cells_v.push_back(cell);
        if (cells_v.size() >= 8) rows.push_back({std::stod(cells_v[0]), std::stod(cells_v[2]), cells_v[7]});
      }
      for (double loss_cap : {0.02, 0.05}) {
        const Row* pick = nullptr;
        for (const auto& r : rows)
          if (r.acc >= exact_acc - loss_cap && (!pick || r.est < pick->est)) pick = &r;
        if (pick) {
          ComponentAssignment a =
              ComponentAssignment::load(cfg.out_dir + "/fronts/assignments/" + pick->id + ".json");
          long am = confidence_margin(model, a, &lib, data, Split::Test);
          emit(model, "approx_loss<=" + std::to_string(static_cast<int>(loss_cap * 100)) + "%",
               pick->acc, am, pick->est);
        }
      }
    }
  }
  std::string path = cfg.out_dir + "/report/summary.csv";
  write_text_file(path, csv.str());
  std::printf("%s", csv.str().c_str());
  return path;
}

}  // namespace axtnn
