#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "axtnn/common.hpp"

namespace axtnn {

using TernaryMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Trained ternary network: one sign-activated hidden layer and an argmax
/// output layer, weights in {-1, 0, +1}. Holds the normalization constants
/// so raw samples can be quantized exactly as the hardware front-end does.
struct TnnModel {
  std::string dataset;
  int k = 1;        // input precision, bits
  int n = 0;        // feature count
  int m = 0;        // hidden neurons
  int c = 0;        // classes
  TernaryMatrix w1;  // m x n
  TernaryMatrix w2;  // c x m
  std::vector<int> z;  // per-output zero-weight count, |z| == c
  std::vector<double> feat_min, feat_max;  // train-split stats
  uint64_t seed = 0;

  void validate() const;
  /// Recomputes z from w2.
  void refresh_z();

  void save(const std::string& path) const;
  static TnnModel load(const std::string& path);
};

/// code = min(floor(x * 2^k), 2^k - 1), x clamped to [0, 1]; mirrors a
/// 2^k-level Flash converter.
inline int quantize(double x, int k) {
  if (x < 0.0) x = 0.0;
  if (x > 1.0) x = 1.0;
  int levels = 1 << k;
  int code = static_cast<int>(x * levels);
  return code >= levels ? levels - 1 : code;
}

}  // namespace axtnn
