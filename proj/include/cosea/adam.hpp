#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cosea/tensor.hpp"

namespace cosea {

/// Bias-corrected Adam state: first/second moment tensors per parameter
/// name plus the shared step counter.
struct AdamState {
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  std::uint64_t t = 0;
  std::map<std::string, std::pair<TensorPtr, TensorPtr>> moments;  // name -> (m, v)

  /// Allocates zero moments mirroring each parameter's shape.
  void init_like(const std::vector<std::pair<std::string, TensorPtr>>& params);
};

/// One Adam update over all parameters, reading each tensor's accumulated
/// gradient:
///   t <- t+1;  m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
///   p <- p - lr * m_hat / (sqrt(v_hat) + eps)
/// A parameter with no gradient buffer counts as zero gradient. Throws
/// NumericError naming the parameter on a non-finite gradient.
void adam_step(const std::vector<std::pair<std::string, TensorPtr>>& params, AdamState& state,
               double lr);

}  // namespace cosea
