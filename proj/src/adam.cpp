#include "cosea/adam.hpp"

#include <cmath>

#include "cosea/errors.hpp"

namespace cosea {

void AdamState::init_like(const std::vector<std::pair<std::string, TensorPtr>>& params) {
  t = 0;
  moments.clear();
  for (const auto& [name, p] : params) {
    moments.emplace(name, std::make_pair(make_tensor(p->shape), make_tensor(p->shape)));
  }
}

void adam_step(const std::vector<std::pair<std::string, TensorPtr>>& params, AdamState& state,
               double lr) {
  state.t += 1;
  const double b1 = AdamState::kBeta1, b2 = AdamState::kBeta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(state.t));

  for (const auto& [name, p] : params) {
    auto it = state.moments.find(name);
    if (it == state.moments.end()) {
      throw ConfigError("adam_step: no optimizer state for parameter " + name);
    }
    Tensor& m = *it->second.first;
    Tensor& v = *it->second.second;
    if (m.values.size() != p->values.size()) {
      throw ShapeError("adam_step: state shape " + m.shape_str() + " does not match parameter " +
                       name + " " + p->shape_str());
    }
    const bool has_grad = p->has_grad();
    for (std::size_t i = 0; i < p->values.size(); ++i) {
      const double g = has_grad ? p->grad[i] : 0.0;
      if (!std::isfinite(g)) {
        throw NumericError("adam_step: non-finite gradient in parameter " + name);
      }
      m.values[i] = b1 * m.values[i] + (1.0 - b1) * g;
      v.values[i] = b2 * v.values[i] + (1.0 - b2) * g * g;
      const double m_hat = m.values[i] / corr1;
      const double v_hat = v.values[i] / corr2;
      p->values[i] -= lr * m_hat / (std::sqrt(v_hat) + AdamState::kEps);
    }
  }
}

}  // namespace cosea
