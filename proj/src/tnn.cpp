#include "axtnn/tnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace axtnn {

double Dataset::normalized(int row, int col) const {
  double span = feat_max[col] - feat_min[col];
  if (span <= 0) return 0.0;
  double v = (features(row, col) - feat_min[col]) / span;
  return std::clamp(v, 0.0, 1.0);
}

std::vector<int> Dataset::quantized_row(int row, int k) const {
  std::vector<int> codes(num_features());
  for (int c = 0; c < num_features(); ++c) codes[c] = quantize(normalized(row, c), k);
  return codes;
}

Dataset Dataset::ingest_csv(const std::string& path, int label_col, uint64_t seed,
                            double train_fraction) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
        row.push_back(v);
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header row
      throw ParseError("non-numeric cell", line_no);
    }
    if (width == 0) width = row.size();
    if (row.size() != width) throw ParseError("ragged row", line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty() || width < 2) throw ConfigError("dataset is empty or has no features: " + path);
  if (label_col < 0) label_col = static_cast<int>(width) - 1;
  if (label_col >= static_cast<int>(width)) throw ConfigError("label column out of range");

  Dataset data;
  size_t pos = path.find_last_of('/');
  std::string base = pos == std::string::npos ? path : path.substr(pos + 1);
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") base.resize(base.size() - 4);
  data.name = base;

  int n = static_cast<int>(width) - 1;
  data.features.resize(static_cast<Eigen::Index>(rows.size()), n);
  std::vector<double> raw_labels(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    int c_out = 0;
    for (int c = 0; c < static_cast<int>(width); ++c) {
      if (c == label_col)
        raw_labels[r] = rows[r][c];
      else
        data.features(static_cast<Eigen::Index>(r), c_out++) = rows[r][c];
    }
  }
  // labels -> dense 0..c-1 by sorted distinct value
  std::vector<double> distinct = raw_labels;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) throw ConfigError("dataset has fewer than two classes");
  data.num_classes = static_cast<int>(distinct.size());
  data.labels.resize(rows.size());
  for (size_t r = 0; r < rows.size(); ++r)
    data.labels[r] = static_cast<int>(
        std::lower_bound(distinct.begin(), distinct.end(), raw_labels[r]) - distinct.begin());

  // deterministic shuffle, 70/30 split
  std::vector<int> order(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) order[i] = static_cast<int>(i);
  Rng rng(derive_seed(seed, "split:" + data.name));
  for (size_t i = rows.size() - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(i + 1)]);
  size_t n_train = static_cast<size_t>(rows.size() * train_fraction);
  if (n_train == 0 || n_train == rows.size()) throw ConfigError("split leaves an empty side");
  data.train_idx.assign(order.begin(), order.begin() + n_train);
  data.test_idx.assign(order.begin() + n_train, order.end());

  // normalization constants on the train split only
  data.feat_min.assign(n, std::numeric_limits<double>::infinity());
  data.feat_max.assign(n, -std::numeric_limits<double>::infinity());
  for (int r : data.train_idx)
    for (int c = 0; c < n; ++c) {
      data.feat_min[c] = std::min(data.feat_min[c], data.features(r, c));
      data.feat_max[c] = std::max(data.feat_max[c], data.features(r, c));
    }
  return data;
}

// ---------------------------------------------------------------------------

namespace {

TernaryMatrix ternarize(const Eigen::MatrixXd& w) {
  double delta = 0.7 * w.array().abs().mean();
  TernaryMatrix t(w.rows(), w.cols());
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      t(r, c) = w(r, c) > delta ? 1 : (w(r, c) < -delta ? -1 : 0);
  return t;
}

// sign(0) = 1 on integer-valued sums
Eigen::MatrixXd sign_activation(const Eigen::MatrixXd& h) {
  return h.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
}

struct Checkpoint {
  double eval_acc = -1.0;
  double train_acc = -1.0;
  TernaryMatrix w1, w2;
};

// Checkpoints and runs are ranked by whole-train-split accuracy; the tiny
// ternary hypothesis class leaves little room to overfit it.
double selection_score(double eval_acc, double train_acc, int n_eval, int n_fit) {
  if (eval_acc < 0) return -1;
  return (eval_acc * n_eval + train_acc * n_fit) / (n_eval + n_fit);
}


double batch_accuracy(const TernaryMatrix& w1, const TernaryMatrix& w2, const Eigen::MatrixXd& x,
                      const std::vector<int>& labels) {
  Eigen::MatrixXd h = x * w1.cast<double>().transpose();
  Eigen::MatrixXd y = sign_activation(h);
  Eigen::MatrixXd o = y * w2.cast<double>().transpose();
  int correct = 0;
  for (Eigen::Index r = 0; r < o.rows(); ++r) {
    int best = 0;
    for (Eigen::Index c = 1; c < o.cols(); ++c)
      if (o(r, c) > o(r, best)) best = static_cast<int>(c);
    correct += best == labels[r];
  }
  return static_cast<double>(correct) / static_cast<double>(o.rows());
}

// (correct count, capped hinge margin sum): the margin term breaks ties so
// boundaries settle away from training points.
std::pair<long, long> polish_score(const TernaryMatrix& w1, const TernaryMatrix& w2,
                                   const Eigen::MatrixXd& x, const std::vector<int>& labels) {
  Eigen::MatrixXd h = x * w1.cast<double>().transpose();
  Eigen::MatrixXd o = sign_activation(h) * w2.cast<double>().transpose();
  long correct = 0, hinge = 0;
  constexpr long kMarginCap = 4;
  for (Eigen::Index r = 0; r < o.rows(); ++r) {
    long own = static_cast<long>(o(r, labels[r]));
    long rival = std::numeric_limits<long>::min();
    bool top = true;
    for (Eigen::Index c = 0; c < o.cols(); ++c) {
      if (c == labels[r]) continue;
      long v = static_cast<long>(o(r, c));
      rival = std::max(rival, v);
      // argmax ties break toward the lowest index
      if (v > own || (v == own && c < labels[r])) top = false;
    }
    correct += top;
    hinge += std::clamp(own - rival, -kMarginCap, kMarginCap);
  }
  return {correct, hinge};
}

// Coordinate-descent polish on the ternary weights themselves: try the two
// alternative values per weight, keep strict improvements in (train-split
// accuracy, margin sum). Deterministic scan order.
void polish(TernaryMatrix& w1, TernaryMatrix& w2, const Eigen::MatrixXd& x,
            const std::vector<int>& labels, int sweeps) {
  auto score = polish_score(w1, w2, x, labels);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    bool improved = false;
    for (TernaryMatrix* w : {&w1, &w2}) {
      for (Eigen::Index r = 0; r < w->rows(); ++r) {
        for (Eigen::Index c = 0; c < w->cols(); ++c) {
          int original = (*w)(r, c);
          for (int candidate : {-1, 0, 1}) {
            if (candidate == original) continue;
            (*w)(r, c) = candidate;
            auto trial = polish_score(w1, w2, x, labels);
            if (trial > score) {
              score = trial;
              original = candidate;
              improved = true;
            } else {
              (*w)(r, c) = original;
            }
          }
        }
      }
    }
    if (!improved) break;
  }
}

struct Adam {
  Eigen::MatrixXd m, v;
  double b1 = 0.9, b2 = 0.999, eps = 1e-8;
  explicit Adam(Eigen::Index rows, Eigen::Index cols)
      : m(Eigen::MatrixXd::Zero(rows, cols)), v(Eigen::MatrixXd::Zero(rows, cols)) {}
  void step(Eigen::MatrixXd& w, const Eigen::MatrixXd& g, double lr, long t) {
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g.cwiseProduct(g);
    double c1 = 1.0 - std::pow(b1, static_cast<double>(t));
    double c2 = 1.0 - std::pow(b2, static_cast<double>(t));
    w -= (lr / c1) * m.cwiseQuotient(((v / c2).cwiseSqrt().array() + eps).matrix());
  }
};

Checkpoint run_training(const Eigen::MatrixXd& x_fit, const std::vector<int>& y_fit,
                        const Eigen::MatrixXd& x_eval, const std::vector<int>& y_eval, int m,
                        int c, double lr, int epochs, int batch, Rng& rng) {
  int n = static_cast<int>(x_fit.cols());
  Eigen::MatrixXd w1(m, n), w2(c, m);
  for (Eigen::Index r = 0; r < w1.rows(); ++r)
    for (Eigen::Index cc = 0; cc < w1.cols(); ++cc) w1(r, cc) = rng.uniform01() - 0.5;
  for (Eigen::Index r = 0; r < w2.rows(); ++r)
    for (Eigen::Index cc = 0; cc < w2.cols(); ++cc) w2(r, cc) = rng.uniform01() - 0.5;

  Adam opt1(m, n), opt2(c, m);
  double temperature = std::max(1.0, m / 2.0);
  long t = 0;
  int rows = static_cast<int>(x_fit.rows());
  std::vector<int> order(rows);
  for (int i = 0; i < rows; ++i) order[i] = i;

  Checkpoint best;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    // step decay keeps late epochs from oscillating around the ternary grid
    double lr_now = lr;
    if (epoch >= epochs / 2) lr_now *= 0.5;
    if (epoch >= (3 * epochs) / 4) lr_now *= 0.5;
    for (int i = rows - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    int bs = batch > 0 ? batch : rows;
    for (int start = 0; start < rows; start += bs) {
      int len = std::min(bs, rows - start);
      Eigen::MatrixXd xb(len, n);
      std::vector<int> yb(len);
      for (int i = 0; i < len; ++i) {
        xb.row(i) = x_fit.row(order[start + i]);
        yb[i] = y_fit[order[start + i]];
      }
      TernaryMatrix t1 = ternarize(w1), t2 = ternarize(w2);
      Eigen::MatrixXd t1d = t1.cast<double>(), t2d = t2.cast<double>();
      Eigen::MatrixXd h = xb * t1d.transpose();
      Eigen::MatrixXd y = sign_activation(h);
      Eigen::MatrixXd logits = (y * t2d.transpose()) / temperature;
      // softmax cross-entropy
      Eigen::MatrixXd p = logits;
      for (int r = 0; r < len; ++r) {
        double mx = p.row(r).maxCoeff();
        p.row(r) = (p.row(r).array() - mx).exp();
        p.row(r) /= p.row(r).sum();
        p(r, yb[r]) -= 1.0;
      }
      p /= static_cast<double>(len);
      Eigen::MatrixXd g2 = p.transpose() * y;            // dL/dW2 (straight-through)
      Eigen::MatrixXd dy = p * t2d;                      // back through the output weights
      Eigen::MatrixXd g1 = dy.transpose() * xb;          // identity STE through sign
      ++t;
      opt2.step(w2, g2, lr_now, t);
      opt1.step(w1, g1, lr_now, t);
      w1 = w1.cwiseMax(-1.0).cwiseMin(1.0);
      w2 = w2.cwiseMax(-1.0).cwiseMin(1.0);
    }
    TernaryMatrix t1 = ternarize(w1), t2 = ternarize(w2);
    double eval_acc = batch_accuracy(t1, t2, x_eval, y_eval);
    double train_acc = batch_accuracy(t1, t2, x_fit, y_fit);
    double sel = selection_score(eval_acc, train_acc, static_cast<int>(x_eval.rows()),
                                 static_cast<int>(x_fit.rows()));
    double best_sel = selection_score(best.eval_acc, best.train_acc, static_cast<int>(x_eval.rows()),
                                      static_cast<int>(x_fit.rows()));
    if (sel > best_sel) best = {eval_acc, train_acc, std::move(t1), std::move(t2)};
  }
  return best;
}

}  // namespace

TnnModel train(const Dataset& data, int k, int m, const TrainConfig& cfg) {
  if (m < 1 || m > 50) throw ContractError("hidden size must be in [1, 50]");
  if (k < 1 || k > 4) throw ContractError("input precision must be in 1..4");
  if (cfg.epochs < 1 || cfg.epochs > 30) throw ContractError("epochs must be in [1, 30]");
  if (data.train_idx.empty()) throw ContractError("dataset has no train split");

  int n = data.num_features(), c = data.num_classes;
  int n_train = static_cast<int>(data.train_idx.size());
  int n_eval = std::max(1, static_cast<int>(n_train * cfg.eval_fraction));
  int n_fit = n_train - n_eval;
  if (n_fit < 1) throw ContractError("train split too small for the eval slice");

  Eigen::MatrixXd x_fit(n_fit, n), x_eval(n_eval, n), x_all(n_train, n);
  std::vector<int> y_fit(n_fit), y_eval(n_eval), y_all(n_train);
  for (int i = 0; i < n_train; ++i) {
    int row = data.train_idx[i];
    auto codes = data.quantized_row(row, k);
    Eigen::RowVectorXd v(n);
    for (int j = 0; j < n; ++j) v(j) = static_cast<double>(codes[j]);
    x_all.row(i) = v;
    y_all[i] = data.labels[row];
    if (i < n_fit) {
      x_fit.row(i) = v;
      y_fit[i] = data.labels[row];
    } else {
      x_eval.row(i - n_fit) = v;
      y_eval[i - n_fit] = data.labels[row];
    }
  }

  Checkpoint best;
  for (size_t li = 0; li < cfg.learning_rates.size(); ++li) {
    for (int restart = 0; restart < cfg.restarts; ++restart) {
      Rng rng(derive_seed(cfg.seed, "train:" + data.name + ":k" + std::to_string(k) + ":m" +
                                        std::to_string(m) + ":lr" + std::to_string(li) + ":r" +
                                        std::to_string(restart)));
      Checkpoint ck = run_training(x_fit, y_fit, x_eval, y_eval, m, c,
                                   cfg.learning_rates[li], cfg.epochs, cfg.batch, rng);
      double sel = selection_score(ck.eval_acc, ck.train_acc, n_eval, n_fit);
      double best_sel = selection_score(best.eval_acc, best.train_acc, n_eval, n_fit);
      if (sel > best_sel) best = std::move(ck);
    }
  }

  if (cfg.polish_sweeps > 0) polish(best.w1, best.w2, x_all, y_all, cfg.polish_sweeps);

  TnnModel model;
  model.dataset = data.name;
  model.k = k;
  model.n = n;
  model.m = m;
  model.c = c;
  model.w1 = best.w1;
  model.w2 = best.w2;
  model.seed = cfg.seed;
  model.feat_min = data.feat_min;
  model.feat_max = data.feat_max;
  model.refresh_z();
  // a neuron that ternarized to all zeros cannot be built; nudge its largest
  // shadow weight to keep the circuit well-formed (rare, tiny models only)
  for (int j = 0; j < model.m; ++j) {
    bool nonzero = false;
    for (int i = 0; i < n; ++i) nonzero |= model.w1(j, i) != 0;
    if (!nonzero) model.w1(j, 0) = 1;
  }
  for (int i = 0; i < c; ++i) {
    bool nonzero = false;
    for (int j = 0; j < model.m; ++j) nonzero |= model.w2(i, j) != 0;
    if (!nonzero) model.w2(i, i % model.m) = 1;
  }
  model.refresh_z();
  model.validate();
  return model;
}

TnnModel train_grid(const Dataset& data, int k, const std::vector<int>& ms, const TrainConfig& cfg) {
  if (ms.empty()) throw ContractError("empty hidden-size grid");
  std::optional<TnnModel> best;
  double best_acc = -1.0;
  for (int m : ms) {
    TnnModel model = train(data, k, m, cfg);
    double acc = accuracy(model, std::nullopt, nullptr, data, Split::Train);
    if (acc > best_acc || (acc == best_acc && best && m < best->m)) {
      best_acc = acc;
      best = std::move(model);
    }
  }
  return *best;
}

std::vector<int> hidden_activations(const TnnModel& model, const std::vector<int>& codes) {
  if (static_cast<int>(codes.size()) != model.n) throw ContractError("code vector size mismatch");
  std::vector<int> y(model.m);
  for (int j = 0; j < model.m; ++j) {
    long sum = 0;
    for (int i = 0; i < model.n; ++i) sum += static_cast<long>(model.w1(j, i)) * codes[i];
    y[j] = sum >= 0 ? 1 : -1;
  }
  return y;
}

std::vector<long> encoded_outputs(const TnnModel& model, const std::vector<int>& codes) {
  std::vector<int> y = hidden_activations(model, codes);
  std::vector<long> o(model.c);
  for (int i = 0; i < model.c; ++i) {
    long dot = 0;
    for (int j = 0; j < model.m; ++j) dot += static_cast<long>(model.w2(i, j)) * y[j];
    o[i] = dot + model.m;  // == 2P + Z
  }
  return o;
}

namespace {

int argmax_lowest(const std::vector<long>& o) {
  int best = 0;
  for (size_t i = 1; i < o.size(); ++i)
    if (o[i] > o[best]) best = static_cast<int>(i);
  return best;
}

}  // namespace

int infer_exact(const TnnModel& model, const std::vector<int>& codes) {
  return argmax_lowest(encoded_outputs(model, codes));
}

void ComponentAssignment::save(const std::string& path) const {
  nlohmann::json j;
  j["hidden"] = hidden_ids;
  j["output"] = output_ids;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write assignment: " + path);
  out << j.dump(2) << "\n";
}

ComponentAssignment ComponentAssignment::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open assignment: " + path);
  nlohmann::json j;
  in >> j;
  ComponentAssignment a;
  a.hidden_ids = j.at("hidden").get<std::vector<std::string>>();
  a.output_ids = j.at("output").get<std::vector<std::string>>();
  return a;
}

ComponentKey hidden_neuron_key(const TnnModel& model, int neuron) {
  LtgSpec spec;
  spec.k = model.k;
  spec.weights.resize(model.n);
  for (int i = 0; i < model.n; ++i) spec.weights[i] = model.w1(neuron, i);
  return ComponentKey::ltg(spec);
}

ComponentKey output_neuron_key(const TnnModel& model, int neuron) {
  return ComponentKey::popcount(model.m - model.z[neuron]);
}

ComponentAssignment exact_assignment(const TnnModel& model, const ComponentLibrary& lib) {
  ComponentAssignment a;
  for (int j = 0; j < model.m; ++j) {
    const ApproxComponent* comp = lib.exact_for(hidden_neuron_key(model, j));
    if (!comp) throw ConfigError("library lacks exact component for " + hidden_neuron_key(model, j).str());
    a.hidden_ids.push_back(comp->id);
  }
  for (int i = 0; i < model.c; ++i) {
    const ApproxComponent* comp = lib.exact_for(output_neuron_key(model, i));
    if (!comp) throw ConfigError("library lacks exact component for " + output_neuron_key(model, i).str());
    a.output_ids.push_back(comp->id);
  }
  return a;
}

void validate_assignment(const TnnModel& model, const ComponentAssignment& a,
                         const ComponentLibrary& lib) {
  if (static_cast<int>(a.hidden_ids.size()) != model.m ||
      static_cast<int>(a.output_ids.size()) != model.c)
    throw ContractError("assignment shape does not match the model");
  for (int j = 0; j < model.m; ++j) {
    const ApproxComponent* comp = lib.by_id(a.hidden_ids[j]);
    if (!comp) throw ConfigError("unresolved component id " + a.hidden_ids[j]);
    if (!(comp->key == hidden_neuron_key(model, j)))
      throw ConfigError("component " + a.hidden_ids[j] + " does not match neuron key");
  }
  for (int i = 0; i < model.c; ++i) {
    const ApproxComponent* comp = lib.by_id(a.output_ids[i]);
    if (!comp) throw ConfigError("unresolved component id " + a.output_ids[i]);
    if (!(comp->key == output_neuron_key(model, i)))
      throw ConfigError("component " + a.output_ids[i] + " does not match neuron key");
  }
}

std::vector<long> encoded_outputs_approx(const TnnModel& model, const ComponentAssignment& a,
                                         const ComponentLibrary& lib,
                                         const std::vector<int>& codes) {
  validate_assignment(model, a, lib);
  if (static_cast<int>(codes.size()) != model.n) throw ContractError("code vector size mismatch");

  std::vector<int> y(model.m);
  for (int j = 0; j < model.m; ++j) {
    const ApproxComponent* comp = lib.by_id(a.hidden_ids[j]);
    std::vector<int> w_row(model.n);
    for (int i = 0; i < model.n; ++i) w_row[i] = model.w1(j, i);
    auto slots = ltg_slot_order(w_row);
    Stimulus s;
    s.reserve(slots.size() * model.k);
    for (int feat : slots)
      for (int bit = 0; bit < model.k; ++bit) s.push_back((codes[feat] >> bit) & 1);
    y[j] = comp->netlist.simulate(s)[0];
  }

  std::vector<long> o(model.c);
  for (int i = 0; i < model.c; ++i) {
    const ApproxComponent* comp = lib.by_id(a.output_ids[i]);
    Stimulus p;
    for (int j = 0; j < model.m; ++j) {
      int w = model.w2(i, j);
      if (w == 0) continue;
      p.push_back(w == 1 ? y[j] : 1 - y[j]);
    }
    long pc = static_cast<long>(word_value(comp->netlist.simulate(p)));
    o[i] = 2 * pc + model.z[i];
  }
  return o;
}

int infer_approx(const TnnModel& model, const ComponentAssignment& a, const ComponentLibrary& lib,
                 const std::vector<int>& codes) {
  return argmax_lowest(encoded_outputs_approx(model, a, lib, codes));
}

namespace {

const std::vector<int>& split_rows(const Dataset& data, Split split) {
  return split == Split::Train ? data.train_idx : data.test_idx;
}

}  // namespace

double accuracy(const TnnModel& model, const std::optional<ComponentAssignment>& assignment,
                const ComponentLibrary* lib, const Dataset& data, Split split) {
  const auto& rows = split_rows(data, split);
  if (rows.empty()) throw ContractError("accuracy over an empty split");
  if (assignment && !lib) throw ContractError("assignment given without a library");
  int correct = 0;
  for (int row : rows) {
    auto codes = data.quantized_row(row, model.k);
    int cls = assignment ? infer_approx(model, *assignment, *lib, codes) : infer_exact(model, codes);
    correct += cls == data.labels[row];
  }
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

long confidence_margin(const TnnModel& model, const std::optional<ComponentAssignment>& assignment,
                       const ComponentLibrary* lib, const Dataset& data, Split split) {
  if (model.c < 2) throw ContractError("confidence margin needs at least two classes");
  const auto& rows = split_rows(data, split);
  if (rows.empty()) throw ContractError("margin over an empty split");
  if (assignment && !lib) throw ContractError("assignment given without a library");
  long margin = std::numeric_limits<long>::max();
  for (int row : rows) {
    auto codes = data.quantized_row(row, model.k);
    std::vector<long> o = assignment ? encoded_outputs_approx(model, *assignment, *lib, codes)
                                     : encoded_outputs(model, codes);
    int top = argmax_lowest(o);
    long second = std::numeric_limits<long>::min();
    for (int i = 0; i < model.c; ++i)
      if (i != top) second = std::max(second, o[i]);
    margin = std::min(margin, o[top] - second);
  }
  return margin;
}

}  // namespace axtnn
