#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace axtnn {

/// Bad or missing configuration (unknown gate kind, malformed file, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// A resource budget (BDD nodes, input count) was exceeded.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse failure in a text input; carries a 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

inline int bit_width(uint64_t v) {
  int w = 0;
  while (v) {
    ++w;
    v >>= 1;
  }
  return w == 0 ? 1 : w;
}

/// Deterministic RNG wrapper. mt19937_64 has a standard-mandated sequence;
/// the distributions below are hand-rolled so streams are portable across
/// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  /// Uniform integer in [0, n). n > 0.
  uint64_t below(uint64_t n) {
    // rejection sampling, unbiased
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi], inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  /// Uniform double in [0, 1).
  double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pairwise cached).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  bool flip() { return (eng_() >> 63) != 0; }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// splitmix64; used to fan one global seed out into per-stage streams.
inline uint64_t mix_seed(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t global, const std::string& stage) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stage) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_seed(global ^ h);
}

/// FNV-1a over a byte string; content addressing for netlist files.
inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(uint64_t v);

}  // namespace axtnn
