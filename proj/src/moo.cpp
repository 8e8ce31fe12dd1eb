#include "axtnn/moo.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace axtnn {

double surrogate_area(const TnnModel& model, const ComponentAssignment& assignment,
                      const ComponentLibrary& library, const CellLibrary& cells) {
  model.validate();
  validate_assignment(model, assignment, library);
  double area = assembly_overhead_area(model, cells);
  for (const std::string& id : assignment.hidden_ids) area += library.by_id(id)->area;
  for (const std::string& id : assignment.output_ids) area += library.by_id(id)->area;
  return area;
}

namespace {

// Word-parallel evaluation context: hidden-component outputs are cached as
// sample bitmasks; per individual only the output popcounts re-simulate.
struct EvalContext {
  const TnnModel* model;
  const CellLibrary* cells;
  std::vector<std::vector<const ApproxComponent*>> hidden_choices;  // per neuron
  std::vector<std::vector<const ApproxComponent*>> output_choices;
  int genes_hidden, genes_output;

  struct SampleSet {
    size_t count = 0, words = 0;
    std::vector<int> labels;
    // y bitmask per (neuron, candidate component)
    std::vector<std::vector<std::vector<uint64_t>>> y_words;
  };
  SampleSet eval_set, test_set;

  double overhead_area;
  std::vector<double> hidden_area, output_area;  // flattened by (neuron, choice)

  int gene_count() const { return genes_hidden + genes_output; }

  const std::vector<const ApproxComponent*>& choices(int gene) const {
    return gene < genes_hidden ? hidden_choices[gene] : output_choices[gene - genes_hidden];
  }
};

EvalContext::SampleSet build_sample_set(const TnnModel& model, const Dataset& data,
                                        const std::vector<int>& rows,
                                        const std::vector<std::vector<const ApproxComponent*>>& hidden) {
  EvalContext::SampleSet set;
  set.count = rows.size();
  set.words = (rows.size() + 63) / 64;
  set.labels.reserve(rows.size());
  for (int r : rows) set.labels.push_back(data.labels[r]);

  // quantized codes packed per input bit across samples
  std::vector<std::vector<int>> codes(rows.size());
  for (size_t s = 0; s < rows.size(); ++s) codes[s] = data.quantized_row(rows[s], model.k);

  set.y_words.resize(model.m);
  for (int j = 0; j < model.m; ++j) {
    std::vector<int> w_row(model.n);
    for (int i = 0; i < model.n; ++i) w_row[i] = model.w1(j, i);
    auto slots = ltg_slot_order(w_row);
    std::vector<std::vector<uint64_t>> in_words(slots.size() * model.k,
                                                std::vector<uint64_t>(set.words, 0));
    for (size_t s = 0; s < rows.size(); ++s) {
      for (size_t p = 0; p < slots.size(); ++p)
        for (int bit = 0; bit < model.k; ++bit)
          if ((codes[s][slots[p]] >> bit) & 1)
            in_words[p * model.k + bit][s / 64] |= 1ULL << (s % 64);
    }
    set.y_words[j].reserve(hidden[j].size());
    for (const ApproxComponent* comp : hidden[j])
      set.y_words[j].push_back(comp->netlist.simulate_words(in_words, set.words)[0]);
  }
  return set;
}

// correct classifications of one gene vector over a sample set
int count_correct(const EvalContext& ctx, const EvalContext::SampleSet& set,
                  const std::vector<int>& genes) {
  const TnnModel& model = *ctx.model;
  std::vector<std::vector<uint64_t>> p_words;
  std::vector<std::vector<long>> o(model.c, std::vector<long>(set.count));
  for (int i = 0; i < model.c; ++i) {
    const ApproxComponent* comp = ctx.output_choices[i][genes[ctx.genes_hidden + i]];
    p_words.clear();
    for (int j = 0; j < model.m; ++j) {
      int w = model.w2(i, j);
      if (w == 0) continue;
      const auto& y = set.y_words[j][genes[j]];
      if (w == 1) {
        p_words.push_back(y);
      } else {
        std::vector<uint64_t> inv(set.words);
        for (size_t word = 0; word < set.words; ++word) inv[word] = ~y[word];
        p_words.push_back(std::move(inv));
      }
    }
    auto bits = comp->netlist.simulate_words(p_words, set.words);
    for (size_t s = 0; s < set.count; ++s) {
      long p = 0;
      for (size_t b = 0; b < bits.size(); ++b)
        p |= static_cast<long>((bits[b][s / 64] >> (s % 64)) & 1) << b;
      o[i][s] = 2 * p + model.z[i];
    }
  }
  int correct = 0;
  for (size_t s = 0; s < set.count; ++s) {
    int best = 0;
    for (int i = 1; i < model.c; ++i)
      if (o[i][s] > o[best][s]) best = i;
    correct += best == set.labels[s];
  }
  return correct;
}

struct Candidate {
  std::vector<int> genes;
  double loss = 0.0;
  double area = 0.0;
  int rank = 0;
  double crowding = 0.0;
};

bool dominates(const Candidate& a, const Candidate& b) {
  bool no_worse = a.loss <= b.loss && a.area <= b.area;
  bool better = a.loss < b.loss || a.area < b.area;
  return no_worse && better;
}

void evaluate(const EvalContext& ctx, Candidate& c) {
  c.loss = 1.0 - static_cast<double>(count_correct(ctx, ctx.eval_set, c.genes)) /
                     static_cast<double>(ctx.eval_set.count);
  double area = ctx.overhead_area;
  for (int g = 0; g < ctx.genes_hidden; ++g) area += ctx.hidden_choices[g][c.genes[g]]->area;
  for (int g = 0; g < ctx.genes_output; ++g)
    area += ctx.output_choices[g][c.genes[ctx.genes_hidden + g]]->area;
  c.area = area;
}

// fast non-dominated sort + crowding distance (classic NSGA-II machinery)
void rank_population(std::vector<Candidate>& pop) {
  size_t n = pop.size();
  std::vector<std::vector<int>> dominated_by(n);
  std::vector<int> dom_count(n, 0);
  std::vector<std::vector<int>> fronts(1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (dominates(pop[i], pop[j]))
        dominated_by[i].push_back(static_cast<int>(j));
      else if (dominates(pop[j], pop[i]))
        ++dom_count[i];
    }
    if (dom_count[i] == 0) {
      pop[i].rank = 0;
      fronts[0].push_back(static_cast<int>(i));
    }
  }
  for (size_t f = 0; f < fronts.size(); ++f) {
    std::vector<int> next;
    for (int i : fronts[f]) {
      for (int j : dominated_by[i]) {
        if (--dom_count[j] == 0) {
          pop[j].rank = static_cast<int>(f) + 1;
          next.push_back(j);
        }
      }
    }
    if (!next.empty()) fronts.push_back(std::move(next));
  }
  // crowding per front, both objectives
  for (auto& front : fronts) {
    for (int i : front) pop[i].crowding = 0.0;
    for (int obj = 0; obj < 2; ++obj) {
      std::sort(front.begin(), front.end(), [&](int a, int b) {
        double va = obj == 0 ? pop[a].loss : pop[a].area;
        double vb = obj == 0 ? pop[b].loss : pop[b].area;
        return va < vb || (va == vb && a < b);
      });
      double lo = obj == 0 ? pop[front.front()].loss : pop[front.front()].area;
      double hi = obj == 0 ? pop[front.back()].loss : pop[front.back()].area;
      pop[front.front()].crowding = std::numeric_limits<double>::infinity();
      pop[front.back()].crowding = std::numeric_limits<double>::infinity();
      if (hi <= lo) continue;
      for (size_t idx = 1; idx + 1 < front.size(); ++idx) {
        double prev = obj == 0 ? pop[front[idx - 1]].loss : pop[front[idx - 1]].area;
        double next = obj == 0 ? pop[front[idx + 1]].loss : pop[front[idx + 1]].area;
        pop[front[idx]].crowding += (next - prev) / (hi - lo);
      }
    }
  }
}

bool crowded_less(const Candidate& a, const Candidate& b) {
  return a.rank < b.rank || (a.rank == b.rank && a.crowding > b.crowding);
}

}  // namespace

std::vector<ParetoPoint> nsga2(const TnnModel& model, const ComponentLibrary& library,
                               const Dataset& data, const CellLibrary& cells, const NsgaConfig& cfg) {
  model.validate();
  if (cfg.population < 4) throw ContractError("population too small");
  if (cfg.generations < 1) throw ContractError("need at least one generation");

  EvalContext ctx;
  ctx.model = &model;
  ctx.cells = &cells;
  ctx.genes_hidden = model.m;
  ctx.genes_output = model.c;
  ctx.overhead_area = assembly_overhead_area(model, cells);

  // per-neuron candidate tables (deterministic order: area, then id)
  auto sorted_choices = [&](const ComponentKey& key) {
    if (!library.has_key(key))
      throw ConfigError("library lacks components for key " + key.str());
    std::vector<const ApproxComponent*> list;
    for (const auto& comp : library.for_key(key)) list.push_back(&comp);
    std::sort(list.begin(), list.end(), [](const ApproxComponent* a, const ApproxComponent* b) {
      return a->area < b->area || (a->area == b->area && a->id < b->id);
    });
    return list;
  };
  for (int j = 0; j < model.m; ++j) ctx.hidden_choices.push_back(sorted_choices(hidden_neuron_key(model, j)));
  for (int i = 0; i < model.c; ++i) ctx.output_choices.push_back(sorted_choices(output_neuron_key(model, i)));

  // the exact component must exist for the anchor individual
  std::vector<int> exact_genes(ctx.gene_count(), 0);
  for (int g = 0; g < ctx.gene_count(); ++g) {
    const auto& list = ctx.choices(g);
    int found = -1;
    for (size_t idx = 0; idx < list.size(); ++idx)
      if (list[idx]->exact) found = static_cast<int>(idx);
    if (found < 0) throw ConfigError("library lacks an exact component for gene " + std::to_string(g));
    exact_genes[g] = found;
  }

  // sample sets: evaluation slice (tail of train) for objectives, test for reporting
  int n_train = static_cast<int>(data.train_idx.size());
  int n_eval = std::max(1, static_cast<int>(n_train * cfg.eval_fraction));
  std::vector<int> eval_rows(data.train_idx.end() - n_eval, data.train_idx.end());
  ctx.eval_set = build_sample_set(model, data, eval_rows, ctx.hidden_choices);
  ctx.test_set = build_sample_set(model, data, data.test_idx, ctx.hidden_choices);

  Rng rng(derive_seed(cfg.seed, "nsga2:" + model.dataset + ":k" + std::to_string(model.k)));
  double mut_rate = cfg.mutation_rate > 0 ? cfg.mutation_rate : 1.0 / ctx.gene_count();

  auto random_candidate = [&] {
    Candidate c;
    c.genes.resize(ctx.gene_count());
    for (int g = 0; g < ctx.gene_count(); ++g)
      c.genes[g] = static_cast<int>(rng.below(ctx.choices(g).size()));
    return c;
  };

  std::vector<Candidate> pop;
  Candidate anchor;
  anchor.genes = exact_genes;
  pop.push_back(anchor);
  while (static_cast<int>(pop.size()) < cfg.population) pop.push_back(random_candidate());
  for (auto& c : pop) evaluate(ctx, c);
  rank_population(pop);

  for (int gen = 0; gen < cfg.generations; ++gen) {
    // binary tournaments + uniform crossover + per-gene reset mutation
    std::vector<Candidate> offspring;
    offspring.reserve(pop.size());
    auto tournament = [&]() -> const Candidate& {
      const Candidate& a = pop[rng.below(pop.size())];
      const Candidate& b = pop[rng.below(pop.size())];
      return crowded_less(a, b) ? a : b;
    };
    while (offspring.size() < pop.size()) {
      const Candidate& pa = tournament();
      const Candidate& pb = tournament();
      Candidate child;
      child.genes.resize(ctx.gene_count());
      bool cross = rng.uniform01() < cfg.crossover_prob;
      for (int g = 0; g < ctx.gene_count(); ++g)
        child.genes[g] = (cross && rng.flip()) ? pb.genes[g] : pa.genes[g];
      for (int g = 0; g < ctx.gene_count(); ++g)
        if (rng.uniform01() < mut_rate)
          child.genes[g] = static_cast<int>(rng.below(ctx.choices(g).size()));
      evaluate(ctx, child);
      offspring.push_back(std::move(child));
    }
    // elitist (mu + lambda) truncation
    pop.insert(pop.end(), offspring.begin(), offspring.end());
    rank_population(pop);
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Candidate& a, const Candidate& b) { return crowded_less(a, b); });
    pop.resize(cfg.population);
    rank_population(pop);
  }

  // rank-0, deduplicated by genes, cleanly re-filtered
  std::vector<Candidate> front;
  for (const auto& c : pop)
    if (c.rank == 0) front.push_back(c);
  std::sort(front.begin(), front.end(), [](const Candidate& a, const Candidate& b) {
    return a.area < b.area || (a.area == b.area && a.genes < b.genes);
  });
  front.erase(std::unique(front.begin(), front.end(),
                          [](const Candidate& a, const Candidate& b) { return a.genes == b.genes; }),
              front.end());
  std::vector<Candidate> clean;
  for (const auto& c : front) {
    bool dominated = false;
    for (const auto& other : front)
      if (&other != &c && (dominates(other, c) || (other.loss == c.loss && other.area == c.area &&
                                                   other.genes < c.genes)))
        dominated = true;
    if (!dominated) clean.push_back(c);
  }

  std::vector<ParetoPoint> points;
  for (const auto& c : clean) {
    ParetoPoint p;
    p.k = model.k;
    p.est_area = c.area;
    p.accuracy_eval = 1.0 - c.loss;
    p.accuracy_test = static_cast<double>(count_correct(ctx, ctx.test_set, c.genes)) /
                      static_cast<double>(ctx.test_set.count);
    for (int j = 0; j < model.m; ++j)
      p.assignment.hidden_ids.push_back(ctx.hidden_choices[j][c.genes[j]]->id);
    for (int i = 0; i < model.c; ++i)
      p.assignment.output_ids.push_back(ctx.output_choices[i][c.genes[model.m + i]]->id);
    std::string blob;
    for (const auto& id : p.assignment.hidden_ids) blob += id + ",";
    for (const auto& id : p.assignment.output_ids) blob += id + ",";
    p.assignment_id = hex64(fnv1a(blob));
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<ParetoPoint> system_pareto(const std::vector<std::vector<ParetoPoint>>& fronts_per_k,
                                       const InterfaceCostTable& table, int num_features,
                                       const CellLibrary& cells) {
  if (num_features < 1) throw ContractError("system pareto needs the feature count");
  std::vector<ParetoPoint> all;
  for (const auto& front : fronts_per_k) {
    for (ParetoPoint p : front) {
      p.interface_kind = p.k == 1 ? ConverterKind::Abc : ConverterKind::Flash;
      InterfaceCost cost = table.cost(p.interface_kind, p.k);
      p.total_area_mm2 = p.est_area * cells.area_unit_mm2() + num_features * cost.area_mm2;
      p.total_power_mw = cells.estimate_power(p.est_area) + num_features * cost.power_mw;
      all.push_back(std::move(p));
    }
  }
  std::sort(all.begin(), all.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return a.total_area_mm2 < b.total_area_mm2 ||
           (a.total_area_mm2 == b.total_area_mm2 && a.accuracy_test > b.accuracy_test);
  });
  std::vector<ParetoPoint> front;
  for (const auto& p : all) {
    bool dominated = false;
    for (const auto& q : all) {
      bool no_worse = q.accuracy_test >= p.accuracy_test && q.total_area_mm2 <= p.total_area_mm2;
      bool better = q.accuracy_test > p.accuracy_test || q.total_area_mm2 < p.total_area_mm2;
      if (no_worse && better) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      bool duplicate = false;
      for (const auto& q : front)
        duplicate |= q.accuracy_test == p.accuracy_test && q.total_area_mm2 == p.total_area_mm2;
      if (!duplicate) front.push_back(p);
    }
  }
  return front;
}

double inverted_hypervolume(const std::vector<std::pair<double, double>>& normalized_points) {
  if (normalized_points.empty()) throw ContractError("hypervolume of an empty front");
  for (auto [x, y] : normalized_points)
    if (x < 0 || y < 0 || x > 1.0 + 1e-9 || y > 1.0 + 1e-9)
      throw ContractError("hypervolume points must be normalized to [0,1]");
  // area of union of [0,x_i] x [0,y_i]: integrate g(x) = max{y_i : x_i >= x}
  std::vector<std::pair<double, double>> pts = normalized_points;
  std::sort(pts.begin(), pts.end());
  std::vector<double> suffix_max(pts.size());
  double running = 0.0;
  for (size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].second);
    suffix_max[i] = running;
  }
  double area = 0.0, prev_x = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].first > prev_x) {
      area += (pts[i].first - prev_x) * suffix_max[i];
      prev_x = pts[i].first;
    }
  }
  return area;
}

bool mutually_nondominated(const std::vector<std::pair<double, double>>& front) {
  for (size_t i = 0; i < front.size(); ++i)
    for (size_t j = 0; j < front.size(); ++j) {
      if (i == j) continue;
      bool no_worse = front[i].first <= front[j].first && front[i].second <= front[j].second;
      bool better = front[i].first < front[j].first || front[i].second < front[j].second;
      if (no_worse && better) return false;
    }
  return true;
}

}  // namespace axtnn
