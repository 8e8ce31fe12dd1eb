#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "axtnn/bdd.hpp"
#include "axtnn/circuitgen.hpp"
#include "axtnn/netlist.hpp"

namespace axtnn {

enum class ErrorMode { Ltg, Popcount };
enum class ErrorMetric { Ep, Mde, Wcde, Mae, Wcae };

const char* metric_name(ErrorMetric m);
ErrorMetric metric_from_name(const std::string& name);
ErrorMode metric_mode(ErrorMetric m);

/// Exact error statistics of an approximate circuit against its exact
/// reference over the full input domain (K = 2^inputs). All values are
/// exact rationals; decimals are for reporting only.
struct ErrorReport {
  ErrorMode mode = ErrorMode::Popcount;
  int inputs = 0;

  // LTG distance metrics (Ltg mode)
  mpq_class ep;
  mpq_class mde;
  mpz_class wcde;

  // arithmetic metrics (Popcount mode)
  mpq_class mae;
  mpz_class wcae;

  /// mde conditioned on error; defined only when ep > 0.
  mpq_class epmde() const;

  mpq_class metric_value(ErrorMetric m) const;
  bool within(ErrorMetric m, const mpq_class& tau) const { return metric_value(m) <= tau; }

  double ep_dec() const { return ep.get_d(); }
  double mde_dec() const { return mde.get_d(); }
  double mae_dec() const { return mae.get_d(); }

  bool operator==(const ErrorReport& other) const;

  std::string to_json_string() const;
  static ErrorReport from_json_string(const std::string& s);
};

/// Default variable order for a circuit of `words` input words of `bits`
/// bits each: bit-position-major, MSB first, interleaved across words.
std::vector<int> interleaved_order(int words, int bits);

struct ErrorAnalysisOptions {
  size_t node_budget = BddManager::kDefaultNodeBudget;
  /// Variable order override (var_of_input); empty = interleaved default.
  std::vector<int> order;
};

/// Reusable LTG distance-error analyzer. Builds the reference weighted-sum
/// magnitude bits |S| and the exact output once; each analyze() call adds
/// only the candidate and the miter, rebuilding the store when it bloats.
class LtgErrorAnalyzer {
 public:
  LtgErrorAnalyzer(Netlist exact, LtgSpec spec, ErrorAnalysisOptions opts = {});
  ~LtgErrorAnalyzer();

  ErrorReport analyze(const Netlist& approx);
  const LtgSpec& spec() const { return spec_; }

 private:
  void rebuild();

  Netlist exact_;
  LtgSpec spec_;
  ErrorAnalysisOptions opts_;
  std::unique_ptr<BddManager> mgr_;
  BddRef exact_out_ = 0;
  std::vector<BddRef> mag_;  // |S| bits, LSB first
  size_t base_nodes_ = 0;
};

/// Reusable popcount arithmetic-error analyzer (subtractor + absolute-value
/// miter over the exact and candidate output words).
class PopcountErrorAnalyzer {
 public:
  explicit PopcountErrorAnalyzer(Netlist exact, ErrorAnalysisOptions opts = {});
  ~PopcountErrorAnalyzer();

  ErrorReport analyze(const Netlist& approx);

 private:
  void rebuild();

  Netlist exact_;
  ErrorAnalysisOptions opts_;
  std::unique_ptr<BddManager> mgr_;
  std::vector<BddRef> exact_word_;
  size_t base_nodes_ = 0;
};

/// One-shot conveniences.
ErrorReport ltg_error(const Netlist& exact, const Netlist& approx, const LtgSpec& spec,
                      ErrorAnalysisOptions opts = {});
ErrorReport popcount_error(const Netlist& exact, const Netlist& approx,
                           ErrorAnalysisOptions opts = {});

/// Exhaustive-enumeration ground truth; refuses more than 24 inputs.
ErrorReport brute_force_ltg_error(const Netlist& exact, const Netlist& approx, const LtgSpec& spec);
ErrorReport brute_force_popcount_error(const Netlist& exact, const Netlist& approx);

}  // namespace axtnn
