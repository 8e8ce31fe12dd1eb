#include "axtnn/bdderr.hpp"

#include <algorithm>

#include <json.hpp>

namespace axtnn {

const char* metric_name(ErrorMetric m) {
  switch (m) {
    case ErrorMetric::Ep:
      return "ep";
    case ErrorMetric::Mde:
      return "mde";
    case ErrorMetric::Wcde:
      return "wcde";
    case ErrorMetric::Mae:
      return "mae";
    case ErrorMetric::Wcae:
      return "wcae";
  }
  return "?";
}

ErrorMetric metric_from_name(const std::string& name) {
  if (name == "ep") return ErrorMetric::Ep;
  if (name == "mde") return ErrorMetric::Mde;
  if (name == "wcde") return ErrorMetric::Wcde;
  if (name == "mae") return ErrorMetric::Mae;
  if (name == "wcae") return ErrorMetric::Wcae;
  throw ConfigError("unknown error metric: " + name);
}

ErrorMode metric_mode(ErrorMetric m) {
  return (m == ErrorMetric::Mae || m == ErrorMetric::Wcae) ? ErrorMode::Popcount : ErrorMode::Ltg;
}

mpq_class ErrorReport::epmde() const {
  if (mode != ErrorMode::Ltg) throw ContractError("epmde is an LTG metric");
  if (ep == 0) throw ContractError("epmde undefined when ep = 0");
  mpq_class r = mde / ep;
  r.canonicalize();
  return r;
}

mpq_class ErrorReport::metric_value(ErrorMetric m) const {
  if (metric_mode(m) != mode) throw ContractError("metric does not match the report mode");
  switch (m) {
    case ErrorMetric::Ep:
      return ep;
    case ErrorMetric::Mde:
      return mde;
    case ErrorMetric::Wcde:
      return mpq_class(wcde);
    case ErrorMetric::Mae:
      return mae;
    case ErrorMetric::Wcae:
      return mpq_class(wcae);
  }
  throw ContractError("unknown metric");
}

bool ErrorReport::operator==(const ErrorReport& other) const {
  if (mode != other.mode || inputs != other.inputs) return false;
  if (mode == ErrorMode::Ltg)
    return ep == other.ep && mde == other.mde && wcde == other.wcde;
  return mae == other.mae && wcae == other.wcae;
}

std::string ErrorReport::to_json_string() const {
  nlohmann::json j;
  j["mode"] = mode == ErrorMode::Ltg ? "ltg" : "popcount";
  j["inputs"] = inputs;
  if (mode == ErrorMode::Ltg) {
    j["ep"] = ep.get_str();
    j["mde"] = mde.get_str();
    j["wcde"] = wcde.get_str();
    j["ep_dec"] = ep.get_d();
    j["mde_dec"] = mde.get_d();
  } else {
    j["mae"] = mae.get_str();
    j["wcae"] = wcae.get_str();
    j["mae_dec"] = mae.get_d();
  }
  return j.dump();
}

namespace {

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ConfigError("bad rational: " + s);
  q.canonicalize();
  return q;
}

}  // namespace

ErrorReport ErrorReport::from_json_string(const std::string& s) {
  nlohmann::json j = nlohmann::json::parse(s);
  ErrorReport r;
  r.mode = j.at("mode").get<std::string>() == "ltg" ? ErrorMode::Ltg : ErrorMode::Popcount;
  r.inputs = j.at("inputs").get<int>();
  if (r.mode == ErrorMode::Ltg) {
    r.ep = parse_rational(j.at("ep").get<std::string>());
    r.mde = parse_rational(j.at("mde").get<std::string>());
    r.wcde = mpz_class(j.at("wcde").get<std::string>());
  } else {
    r.mae = parse_rational(j.at("mae").get<std::string>());
    r.wcae = mpz_class(j.at("wcae").get<std::string>());
  }
  return r;
}

std::vector<int> interleaved_order(int words, int bits) {
  std::vector<int> order(static_cast<size_t>(words) * bits);
  int level = 0;
  for (int bit = bits - 1; bit >= 0; --bit)
    for (int w = 0; w < words; ++w) order[static_cast<size_t>(w) * bits + bit] = level++;
  return order;
}

namespace {

using BddWord = std::vector<BddRef>;  // LSB first

BddRef word_bit(const BddWord& w, size_t i, BddManager& mgr) {
  return i < w.size() ? w[i] : mgr.zero();
}

BddRef majority(BddManager& m, BddRef a, BddRef b, BddRef c) {
  return m.apply_or(m.apply_and(a, b), m.apply_and(c, m.apply_xor(a, b)));
}

// a + b with natural width growth
BddWord bdd_add(BddManager& m, const BddWord& a, const BddWord& b) {
  size_t w = std::max(a.size(), b.size());
  BddWord out;
  out.reserve(w + 1);
  BddRef carry = m.zero();
  for (size_t i = 0; i < w; ++i) {
    BddRef x = word_bit(a, i, m), y = word_bit(b, i, m);
    BddRef s = m.apply_xor(m.apply_xor(x, y), carry);
    carry = majority(m, x, y, carry);
    out.push_back(s);
  }
  if (carry != m.zero()) out.push_back(carry);
  return out;
}

// a - b in two's complement, exactly `width` bits (mod 2^width)
BddWord bdd_sub(BddManager& m, const BddWord& a, const BddWord& b, size_t width) {
  BddWord out;
  out.reserve(width);
  BddRef carry = m.one();
  for (size_t i = 0; i < width; ++i) {
    BddRef x = word_bit(a, i, m);
    BddRef y = m.apply_not(word_bit(b, i, m));
    out.push_back(m.apply_xor(m.apply_xor(x, y), carry));
    carry = majority(m, x, y, carry);
  }
  return out;
}

// |v| for a two's-complement word: negate-on-sign
BddWord bdd_abs(BddManager& m, const BddWord& v) {
  BddRef sign = v.back();
  BddWord neg;  // ~v + 1
  neg.reserve(v.size());
  BddRef carry = m.one();
  for (BddRef bit : v) {
    BddRef x = m.apply_not(bit);
    neg.push_back(m.apply_xor(x, carry));
    carry = m.apply_and(x, carry);
  }
  BddWord mag;
  mag.reserve(v.size());
  BddRef nsign = m.apply_not(sign);
  for (size_t i = 0; i < v.size(); ++i)
    mag.push_back(m.apply_or(m.apply_and(sign, neg[i]), m.apply_and(nsign, v[i])));
  return mag;
}

BddWord bdd_sum_tree(BddManager& m, const std::vector<BddWord>& words, size_t lo, size_t hi) {
  if (hi - lo == 1) return words[lo];
  size_t mid = lo + (hi - lo + 1) / 2;
  return bdd_add(m, bdd_sum_tree(m, words, lo, mid), bdd_sum_tree(m, words, mid, hi));
}

mpz_class pow2z(int e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return v;
}

mpq_class make_fraction(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Greedy MSB-first maximum of a magnitude word constrained to `constraint`.
mpz_class bdd_max_value(BddManager& m, const BddWord& mag, BddRef constraint) {
  mpz_class val = 0;
  BddRef r = constraint;
  for (size_t i = mag.size(); i-- > 0;) {
    BddRef ri = m.apply_and(r, mag[i]);
    if (ri != m.zero()) {
      val += pow2z(static_cast<int>(i));
      r = ri;
    }
  }
  return val;
}

void check_pair_interface(const Netlist& exact, const Netlist& approx, bool single_output) {
  if (exact.num_inputs() != approx.num_inputs())
    throw ContractError("exact/approx input interfaces differ");
  if (single_output && (exact.num_outputs() != 1 || approx.num_outputs() != 1))
    throw ContractError("LTG circuits must have one output");
}

}  // namespace

LtgErrorAnalyzer::LtgErrorAnalyzer(Netlist exact, LtgSpec spec, ErrorAnalysisOptions opts)
    : exact_(std::move(exact)), spec_(std::move(spec)), opts_(std::move(opts)) {
  spec_.validate();
  if (exact_.num_inputs() != static_cast<size_t>(spec_.input_bits()))
    throw ContractError("exact LTG does not match the spec input width");
  if (exact_.num_outputs() != 1) throw ContractError("exact LTG must have one output");
  if (opts_.order.empty()) opts_.order = interleaved_order(spec_.n_pos() + spec_.n_neg(), spec_.k);
  rebuild();
}

LtgErrorAnalyzer::~LtgErrorAnalyzer() = default;

void LtgErrorAnalyzer::rebuild() {
  int v = spec_.input_bits();
  mgr_ = std::make_unique<BddManager>(v, opts_.node_budget);
  exact_out_ = build_bdds(*mgr_, exact_, opts_.order)[0];

  // reference signed weighted sum S = sum(positive words) - sum(negative words)
  int np = spec_.n_pos(), nn = spec_.n_neg(), k = spec_.k;
  std::vector<BddWord> pos, neg;
  for (int w = 0; w < np + nn; ++w) {
    BddWord word(k);
    for (int j = 0; j < k; ++j) word[j] = mgr_->var(opts_.order[static_cast<size_t>(w) * k + j]);
    (w < np ? pos : neg).push_back(std::move(word));
  }
  BddWord p_sum = pos.empty() ? BddWord{mgr_->zero()} : bdd_sum_tree(*mgr_, pos, 0, pos.size());
  BddWord n_sum = neg.empty() ? BddWord{mgr_->zero()} : bdd_sum_tree(*mgr_, neg, 0, neg.size());
  long xmax = (1L << k) - 1;
  int width = 1 + std::max(bit_width(static_cast<uint64_t>(np * xmax)),
                           bit_width(static_cast<uint64_t>(nn * xmax)));
  BddWord s = bdd_sub(*mgr_, p_sum, n_sum, static_cast<size_t>(width));
  mag_ = bdd_abs(*mgr_, s);
  base_nodes_ = mgr_->node_count();
}

ErrorReport LtgErrorAnalyzer::analyze(const Netlist& approx) {
  check_pair_interface(exact_, approx, true);
  ErrorReport report;
  report.mode = ErrorMode::Ltg;
  report.inputs = static_cast<int>(exact_.num_inputs());
  try {
    BddRef approx_out = build_bdds(*mgr_, approx, opts_.order)[0];
    BddRef miter = mgr_->apply_xor(exact_out_, approx_out);
    if (miter == mgr_->zero()) {
      report.ep = 0;
      report.mde = 0;
      report.wcde = 0;
    } else {
      mpz_class domain = pow2z(report.inputs);
      mpz_class mismatches = mgr_->sat_count(miter);
      report.ep = make_fraction(mismatches, domain);
      mpz_class weighted = mismatches;  // the "+1" distance offset on every mismatch
      for (size_t i = 0; i < mag_.size(); ++i) {
        BddRef bit = mgr_->apply_and(miter, mag_[i]);
        if (bit != mgr_->zero()) weighted += pow2z(static_cast<int>(i)) * mgr_->sat_count(bit);
      }
      report.mde = make_fraction(weighted, domain);
      report.wcde = bdd_max_value(*mgr_, mag_, miter) + 1;
    }
  } catch (const BudgetError&) {
    rebuild();
    throw;
  }
  if (mgr_->node_count() > base_nodes_ + (mgr_->node_budget() - base_nodes_) / 2) rebuild();
  return report;
}

PopcountErrorAnalyzer::PopcountErrorAnalyzer(Netlist exact, ErrorAnalysisOptions opts)
    : exact_(std::move(exact)), opts_(std::move(opts)) {
  if (exact_.num_outputs() < 1) throw ContractError("exact circuit has no outputs");
  if (opts_.order.empty()) opts_.order = interleaved_order(static_cast<int>(exact_.num_inputs()), 1);
  rebuild();
}

PopcountErrorAnalyzer::~PopcountErrorAnalyzer() = default;

void PopcountErrorAnalyzer::rebuild() {
  mgr_ = std::make_unique<BddManager>(static_cast<int>(exact_.num_inputs()), opts_.node_budget);
  exact_word_ = build_bdds(*mgr_, exact_, opts_.order);
  base_nodes_ = mgr_->node_count();
}

ErrorReport PopcountErrorAnalyzer::analyze(const Netlist& approx) {
  check_pair_interface(exact_, approx, false);
  ErrorReport report;
  report.mode = ErrorMode::Popcount;
  report.inputs = static_cast<int>(exact_.num_inputs());
  try {
    std::vector<BddRef> approx_word = build_bdds(*mgr_, approx, opts_.order);
    size_t width = std::max(exact_word_.size(), approx_word.size()) + 1;
    BddWord diff = bdd_sub(*mgr_, exact_word_, approx_word, width);
    BddWord mag = bdd_abs(*mgr_, diff);
    mpz_class domain = pow2z(report.inputs);
    mpz_class weighted = 0;
    for (size_t i = 0; i < mag.size(); ++i)
      if (mag[i] != mgr_->zero()) weighted += pow2z(static_cast<int>(i)) * mgr_->sat_count(mag[i]);
    report.mae = make_fraction(weighted, domain);
    report.wcae = bdd_max_value(*mgr_, mag, mgr_->one());
  } catch (const BudgetError&) {
    rebuild();
    throw;
  }
  if (mgr_->node_count() > base_nodes_ + (mgr_->node_budget() - base_nodes_) / 2) rebuild();
  return report;
}

ErrorReport ltg_error(const Netlist& exact, const Netlist& approx, const LtgSpec& spec,
                      ErrorAnalysisOptions opts) {
  LtgErrorAnalyzer analyzer(exact, spec, std::move(opts));
  return analyzer.analyze(approx);
}

ErrorReport popcount_error(const Netlist& exact, const Netlist& approx, ErrorAnalysisOptions opts) {
  PopcountErrorAnalyzer analyzer(exact, std::move(opts));
  return analyzer.analyze(approx);
}

namespace {

// all 2^n stimuli, bit-parallel: input i toggles with period 2^i
std::vector<std::vector<uint64_t>> exhaustive_input_words(int inputs, size_t words) {
  std::vector<std::vector<uint64_t>> in(inputs, std::vector<uint64_t>(words));
  static const uint64_t low_patterns[6] = {0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL,
                                           0xf0f0f0f0f0f0f0f0ULL, 0xff00ff00ff00ff00ULL,
                                           0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
  for (int i = 0; i < inputs; ++i) {
    for (size_t w = 0; w < words; ++w) {
      if (i < 6)
        in[i][w] = low_patterns[i];
      else
        in[i][w] = ((w >> (i - 6)) & 1) ? ~0ULL : 0ULL;
    }
  }
  return in;
}

uint64_t extract_value(const std::vector<std::vector<uint64_t>>& word_bits, size_t stim) {
  uint64_t v = 0;
  for (size_t b = 0; b < word_bits.size(); ++b)
    v |= ((word_bits[b][stim / 64] >> (stim % 64)) & 1) << b;
  return v;
}

}  // namespace

ErrorReport brute_force_ltg_error(const Netlist& exact, const Netlist& approx, const LtgSpec& spec) {
  check_pair_interface(exact, approx, true);
  int inputs = static_cast<int>(exact.num_inputs());
  if (inputs > 24) throw BudgetError("brute force refuses more than 24 inputs");
  if (inputs != spec.input_bits()) throw ContractError("spec does not match circuit inputs");

  size_t domain = 1ULL << inputs;
  size_t words = (domain + 63) / 64;
  auto in = exhaustive_input_words(inputs, words);
  auto out_e = exact.simulate_words(in, words);
  auto out_a = approx.simulate_words(in, words);

  int np = spec.n_pos(), nn = spec.n_neg(), k = spec.k;
  unsigned long long mismatches = 0, weighted = 0, worst = 0;
  for (size_t w = 0; w < words; ++w) {
    uint64_t diff = out_e[0][w] ^ out_a[0][w];
    if (w == words - 1 && domain % 64 != 0) diff &= (1ULL << (domain % 64)) - 1;
    while (diff) {
      int b = __builtin_ctzll(diff);
      diff &= diff - 1;
      uint64_t stim = w * 64 + static_cast<uint64_t>(b);
      long sum = 0;
      for (int i = 0; i < np + nn; ++i) {
        long x = static_cast<long>((stim >> (i * k)) & ((1UL << k) - 1));
        sum += i < np ? x : -x;
      }
      unsigned long long d = static_cast<unsigned long long>(sum < 0 ? -sum : sum) + 1;
      ++mismatches;
      weighted += d;
      worst = std::max(worst, d);
    }
  }
  ErrorReport report;
  report.mode = ErrorMode::Ltg;
  report.inputs = inputs;
  report.ep = make_fraction(mpz_class(static_cast<unsigned long>(mismatches)), pow2z(inputs));
  report.mde = make_fraction(mpz_class(static_cast<unsigned long>(weighted)), pow2z(inputs));
  report.wcde = static_cast<unsigned long>(worst);
  return report;
}

ErrorReport brute_force_popcount_error(const Netlist& exact, const Netlist& approx) {
  check_pair_interface(exact, approx, false);
  int inputs = static_cast<int>(exact.num_inputs());
  if (inputs > 24) throw BudgetError("brute force refuses more than 24 inputs");

  size_t domain = 1ULL << inputs;
  size_t words = (domain + 63) / 64;
  auto in = exhaustive_input_words(inputs, words);
  auto out_e = exact.simulate_words(in, words);
  auto out_a = approx.simulate_words(in, words);

  unsigned long long weighted = 0, worst = 0;
  for (size_t stim = 0; stim < domain; ++stim) {
    long long pe = static_cast<long long>(extract_value(out_e, stim));
    long long pa = static_cast<long long>(extract_value(out_a, stim));
    unsigned long long d = static_cast<unsigned long long>(pe > pa ? pe - pa : pa - pe);
    weighted += d;
    worst = std::max(worst, d);
  }
  ErrorReport report;
  report.mode = ErrorMode::Popcount;
  report.inputs = inputs;
  report.mae = make_fraction(mpz_class(static_cast<unsigned long>(weighted)), pow2z(inputs));
  report.wcae = static_cast<unsigned long>(worst);
  return report;
}

}  // namespace axtnn
