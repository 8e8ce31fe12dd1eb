#include "axtnn/cgp.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace axtnn {

namespace {

int arity_of_fn(int fn) { return gate_arity(static_cast<GateKind>(fn)); }

}  // namespace

Netlist Genome::decode() const {
  int base = num_inputs;
  std::vector<uint8_t> active(nodes.size(), 0);
  std::vector<int> stack;
  auto push = [&](int addr) {
    if (addr >= base && !active[addr - base]) {
      active[addr - base] = 1;
      stack.push_back(addr - base);
    }
  };
  for (int g : output_genes) push(g);
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    int ar = arity_of_fn(nodes[i].fn);
    if (ar >= 1) push(nodes[i].a);
    if (ar == 2) push(nodes[i].b);
  }

  Netlist net(input_names);
  std::vector<SignalId> remap(base + nodes.size(), 0);
  for (int i = 0; i < base; ++i) remap[i] = static_cast<SignalId>(i);
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!active[i]) continue;
    remap[base + i] =
        net.add(static_cast<GateKind>(nodes[i].fn), remap[nodes[i].a], remap[nodes[i].b]);
  }
  for (int g : output_genes) net.add_output(remap[g]);
  return net;
}

Genome Genome::from_netlist(const Netlist& seed, Rng& rng, int length) {
  Genome g;
  g.num_inputs = static_cast<int>(seed.num_inputs());
  g.num_outputs = static_cast<int>(seed.num_outputs());
  g.input_names = seed.input_names();
  int embedded = static_cast<int>(seed.num_gates());
  if (length == 0) length = std::max(8, 2 * embedded);
  if (length < embedded) throw ContractError("grid shorter than the seed");
  g.nodes.resize(length);
  for (int i = 0; i < embedded; ++i) {
    const Gate& gate = seed.gates()[i];
    g.nodes[i] = {static_cast<int>(gate.a), static_cast<int>(gate.b), static_cast<int>(gate.kind)};
    int ar = gate_arity(gate.kind);
    if (ar < 2) g.nodes[i].b = g.nodes[i].a;  // keep the gene legal
    if (ar < 1) g.nodes[i].a = g.nodes[i].b = 0;
  }
  for (int i = embedded; i < length; ++i) {
    int limit = g.num_inputs + i;
    g.nodes[i] = {static_cast<int>(rng.below(limit)), static_cast<int>(rng.below(limit)),
                  static_cast<int>(rng.below(kGateKindCount))};
  }
  g.output_genes.resize(g.num_outputs);
  for (int i = 0; i < g.num_outputs; ++i) g.output_genes[i] = static_cast<int>(seed.outputs()[i]);
  return g;
}

void mutate(Genome& genome, int count, Rng& rng) {
  int l = genome.length();
  long node_genes = 3L * l;
  long total = node_genes + genome.num_outputs;
  for (int done = 0; done < count;) {
    long slot = static_cast<long>(rng.below(static_cast<uint64_t>(total)));
    if (slot < node_genes) {
      int node = static_cast<int>(slot / 3);
      int which = static_cast<int>(slot % 3);
      if (which == 2) {
        int old = genome.nodes[node].fn;
        int next;
        do {
          next = static_cast<int>(rng.below(kGateKindCount));
        } while (next == old);
        genome.nodes[node].fn = next;
      } else {
        int limit = genome.num_inputs + node;
        if (limit < 2) continue;  // single legal value; pick another slot
        int& gene = which == 0 ? genome.nodes[node].a : genome.nodes[node].b;
        int next;
        do {
          next = static_cast<int>(rng.below(static_cast<uint64_t>(limit)));
        } while (next == gene);
        gene = next;
      }
    } else {
      int out = static_cast<int>(slot - node_genes);
      int limit = genome.num_inputs + l;
      if (limit < 2) continue;
      int next;
      do {
        next = static_cast<int>(rng.below(static_cast<uint64_t>(limit)));
      } while (next == genome.output_genes[out]);
      genome.output_genes[out] = next;
    }
    ++done;
  }
}

void CgpConfig::validate() const {
  if (lambda < 1) throw ContractError("lambda must be >= 1");
  if (tau < 0) throw ContractError("tau must be >= 0");
  if (mutations < 0) throw ContractError("mutation count must be >= 0");
  if (max_iterations <= 0 && wall_clock_seconds <= 0)
    throw ContractError("set an iteration or wall-clock termination criterion");
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kEnumerationLimit = 14;  // inputs at or below: exhaustive words

std::vector<std::vector<uint64_t>> exhaustive_words(int inputs, size_t words) {
  std::vector<std::vector<uint64_t>> in(inputs, std::vector<uint64_t>(words));
  static const uint64_t low[6] = {0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
                                  0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
  for (int i = 0; i < inputs; ++i)
    for (size_t w = 0; w < words; ++w)
      in[i][w] = i < 6 ? low[i] : (((w >> (i - 6)) & 1) ? ~0ULL : 0ULL);
  return in;
}

}  // namespace

struct EnumContext {
  size_t domain = 0, words = 0;
  std::vector<std::vector<uint64_t>> in_words;
  std::vector<std::vector<uint64_t>> exact_out;
  std::vector<uint32_t> distance;  // LTG: |S| + 1 per stimulus
  std::vector<uint8_t> exact_value;  // popcount value per stimulus
};

FitnessEvaluator::FitnessEvaluator(const Netlist& exact, const LtgSpec& spec, EvaluatorKind kind,
                                   size_t node_budget)
    : mode_(ErrorMode::Ltg), exact_(exact), spec_(spec) {
  int inputs = static_cast<int>(exact.num_inputs());
  enumerate_ = kind == EvaluatorKind::Enumerate ||
               (kind == EvaluatorKind::Auto && inputs <= kEnumerationLimit);
  if (enumerate_ && inputs > 24) throw ContractError("enumeration limited to 24 inputs");
  if (enumerate_) {
    enum_ = std::make_unique<EnumContext>();
    enum_->domain = 1ULL << inputs;
    enum_->words = (enum_->domain + 63) / 64;
    enum_->in_words = exhaustive_words(inputs, enum_->words);
    enum_->exact_out = exact.simulate_words(enum_->in_words, enum_->words);
    enum_->distance.resize(enum_->domain);
    int np = spec.n_pos(), nn = spec.n_neg(), k = spec.k;
    for (size_t stim = 0; stim < enum_->domain; ++stim) {
      long sum = 0;
      for (int i = 0; i < np + nn; ++i) {
        long x = static_cast<long>((stim >> (i * k)) & ((1UL << k) - 1));
        sum += i < np ? x : -x;
      }
      enum_->distance[stim] = static_cast<uint32_t>((sum < 0 ? -sum : sum) + 1);
    }
  } else {
    ErrorAnalysisOptions opts;
    opts.node_budget = node_budget;
    ltg_ = std::make_unique<LtgErrorAnalyzer>(exact, spec, opts);
  }
}

FitnessEvaluator::FitnessEvaluator(const Netlist& exact, EvaluatorKind kind, size_t node_budget)
    : mode_(ErrorMode::Popcount), exact_(exact) {
  int inputs = static_cast<int>(exact.num_inputs());
  enumerate_ = kind == EvaluatorKind::Enumerate ||
               (kind == EvaluatorKind::Auto && inputs <= kEnumerationLimit);
  if (enumerate_ && inputs > 24) throw ContractError("enumeration limited to 24 inputs");
  if (enumerate_) {
    enum_ = std::make_unique<EnumContext>();
    enum_->domain = 1ULL << inputs;
    enum_->words = (enum_->domain + 63) / 64;
    enum_->in_words = exhaustive_words(inputs, enum_->words);
    enum_->exact_out = exact.simulate_words(enum_->in_words, enum_->words);
    enum_->exact_value.resize(enum_->domain);
    for (size_t stim = 0; stim < enum_->domain; ++stim) {
      uint8_t v = 0;
      for (size_t b = 0; b < enum_->exact_out.size(); ++b)
        v |= ((enum_->exact_out[b][stim / 64] >> (stim % 64)) & 1) << b;
      enum_->exact_value[stim] = v;
    }
  } else {
    ErrorAnalysisOptions opts;
    opts.node_budget = node_budget;
    pc_ = std::make_unique<PopcountErrorAnalyzer>(exact, opts);
  }
}

FitnessEvaluator::~FitnessEvaluator() = default;

namespace {

mpq_class fraction(unsigned long long num, int log2_den) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(log2_den));
  mpq_class q(mpz_class(static_cast<unsigned long>(num)), den);
  q.canonicalize();
  return q;
}

}  // namespace

ErrorReport FitnessEvaluator::error(const Netlist& candidate) {
  if (candidate.num_inputs() != exact_.num_inputs())
    throw ContractError("candidate input interface mismatch");
  if (!enumerate_) return mode_ == ErrorMode::Ltg ? ltg_->analyze(candidate) : pc_->analyze(candidate);

  int inputs = static_cast<int>(exact_.num_inputs());
  auto out = candidate.simulate_words(enum_->in_words, enum_->words);
  ErrorReport report;
  report.mode = mode_;
  report.inputs = inputs;
  if (mode_ == ErrorMode::Ltg) {
    unsigned long long mism = 0, weighted = 0, worst = 0;
    for (size_t w = 0; w < enum_->words; ++w) {
      uint64_t diff = enum_->exact_out[0][w] ^ out[0][w];
      if (w == enum_->words - 1 && enum_->domain % 64 != 0) diff &= (1ULL << (enum_->domain % 64)) - 1;
      while (diff) {
        int b = __builtin_ctzll(diff);
        diff &= diff - 1;
        uint32_t d = enum_->distance[w * 64 + static_cast<size_t>(b)];
        ++mism;
        weighted += d;
        worst = std::max<unsigned long long>(worst, d);
      }
    }
    report.ep = fraction(mism, inputs);
    report.mde = fraction(weighted, inputs);
    report.wcde = static_cast<unsigned long>(worst);
  } else {
    unsigned long long weighted = 0, worst = 0;
    for (size_t stim = 0; stim < enum_->domain; ++stim) {
      int v = 0;
      for (size_t b = 0; b < out.size(); ++b)
        v |= static_cast<int>((out[b][stim / 64] >> (stim % 64)) & 1) << b;
      int d = v - enum_->exact_value[stim];
      if (d < 0) d = -d;
      weighted += static_cast<unsigned long long>(d);
      worst = std::max<unsigned long long>(worst, static_cast<unsigned long long>(d));
    }
    report.mae = fraction(weighted, inputs);
    report.wcae = static_cast<unsigned long>(worst);
  }
  return report;
}

double fitness(const Genome& genome, FitnessEvaluator& eval, const CellLibrary& lib,
               ErrorMetric metric, const mpq_class& tau, ErrorReport* report_out,
               long* budget_trips) {
  Netlist net = genome.decode();
  ErrorReport report;
  try {
    report = eval.error(net);
  } catch (const BudgetError&) {
    if (budget_trips) {
      if (*budget_trips == 0)
        std::fprintf(stderr, "warning: BDD node budget exceeded; candidate discarded\n");
      ++*budget_trips;
    }
    return std::numeric_limits<double>::infinity();
  }
  if (report_out) *report_out = report;
  if (!report.within(metric, tau)) return std::numeric_limits<double>::infinity();
  return net.area(lib);
}

EvolutionResult evolve(const Netlist& seed, const std::optional<LtgSpec>& ltg_spec,
                       const CellLibrary& lib, const CgpConfig& cfg) {
  cfg.validate();
  bool ltg_metric = metric_mode(cfg.metric) == ErrorMode::Ltg;
  if (ltg_metric && !ltg_spec) throw ContractError("LTG metric needs an LtgSpec");
  if (!ltg_metric && ltg_spec) throw ContractError("arithmetic metric does not take an LtgSpec");

  Rng rng(cfg.seed);
  Genome parent = Genome::from_netlist(seed, rng, cfg.grid_length);
  int mutations = cfg.mutations > 0 ? cfg.mutations : std::max(1, parent.gene_count() / 100);

  std::unique_ptr<FitnessEvaluator> eval;
  if (ltg_metric)
    eval = std::make_unique<FitnessEvaluator>(seed, *ltg_spec, cfg.evaluator, cfg.node_budget);
  else
    eval = std::make_unique<FitnessEvaluator>(seed, cfg.evaluator, cfg.node_budget);

  mpq_class tau(cfg.tau);
  tau.canonicalize();

  EvolutionResult result;
  ErrorReport parent_report;
  double parent_fit = fitness(parent, *eval, lib, cfg.metric, tau, &parent_report, &result.budget_trips);
  if (!std::isfinite(parent_fit)) throw ContractError("seed is infeasible under the error threshold");

  result.best = parent;
  result.best_area = parent_fit;
  result.best_report = parent_report;
  result.history.emplace_back(0, parent_fit);

  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  long iter = 0;
  while (true) {
    if (cfg.max_iterations > 0 && iter >= cfg.max_iterations) break;
    if (cfg.wall_clock_seconds > 0 && (iter & 63) == 0 && elapsed() >= cfg.wall_clock_seconds) break;
    ++iter;

    double best_off_fit = std::numeric_limits<double>::infinity();
    Genome best_off;
    ErrorReport best_off_report;
    for (int o = 0; o < cfg.lambda; ++o) {
      Genome child = parent;
      mutate(child, mutations, rng);
      ErrorReport rep;
      double fit = fitness(child, *eval, lib, cfg.metric, tau, &rep, &result.budget_trips);
      if (fit < best_off_fit) {
        best_off_fit = fit;
        best_off = std::move(child);
        best_off_report = rep;
      }
    }
    if (best_off_fit <= parent_fit) {  // ties accepted: neutral drift
      parent = best_off;
      parent_fit = best_off_fit;
      parent_report = best_off_report;
    }
    if (parent_fit < result.best_area) {
      result.best = parent;
      result.best_area = parent_fit;
      result.best_report = parent_report;
      result.history.emplace_back(iter, parent_fit);
    }
  }
  result.iterations = iter;
  result.seconds = elapsed();

  // independent post-hoc audit of the returned genome via the BDD path
  Netlist best_net = result.best.decode();
  ErrorReport audit = ltg_metric ? ltg_error(seed, best_net, *ltg_spec) : popcount_error(seed, best_net);
  if (!audit.within(cfg.metric, tau))
    throw ContractError("post-hoc audit failed: returned genome violates tau");
  result.best_report = audit;
  return result;
}

}  // namespace axtnn
