#include "cosea/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "cosea/errors.hpp"

namespace cosea {

namespace {

double eval_forward(const std::function<TensorPtr(Tape&)>& build) {
  Tape scratch;
  TensorPtr out = build(scratch);
  if (out->size() != 1) {
    throw ShapeError("grad_check: computation must produce a scalar, got " + out->shape_str());
  }
  if (!std::isfinite(out->values[0])) {
    throw NumericError("grad_check: non-finite forward value");
  }
  return out->values[0];
}

}  // namespace

GradCheckResult grad_check(const std::function<TensorPtr(Tape&)>& build,
                           const std::vector<TensorPtr>& inputs, double h) {
  for (const auto& t : inputs) t->zero_grad();
  Tape tape;
  TensorPtr out = build(tape);
  if (out->size() != 1) {
    throw ShapeError("grad_check: computation must produce a scalar, got " + out->shape_str());
  }
  tape.backward(out);

  std::vector<std::vector<double>> analytic;
  analytic.reserve(inputs.size());
  for (const auto& t : inputs) {
    t->ensure_grad();
    analytic.push_back(t->grad);
  }

  GradCheckResult result;
  for (std::size_t ti = 0; ti < inputs.size(); ++ti) {
    Tensor& t = *inputs[ti];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double saved = t.values[i];
      t.values[i] = saved + h;
      const double fp = eval_forward(build);
      t.values[i] = saved - h;
      const double fm = eval_forward(build);
      t.values[i] = saved;

      const double numeric = (fp - fm) / (2.0 * h);
      const double a = analytic[ti][i];
      const double denom = std::max({std::fabs(a), std::fabs(numeric), 1e-8});
      const double rel = std::fabs(a - numeric) / denom;
      if (rel > result.max_rel_err) {
        result.max_rel_err = rel;
        result.worst_entry = std::to_string(ti) + "[" + std::to_string(i) + "]";
      }
    }
  }

  // Restore the grads of the unperturbed computation.
  for (std::size_t ti = 0; ti < inputs.size(); ++ti) inputs[ti]->grad = analytic[ti];
  return result;
}

}  // namespace cosea
