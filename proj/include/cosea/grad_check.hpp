#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cosea/tape.hpp"
#include "cosea/tensor.hpp"

namespace cosea {

struct GradCheckResult {
  double max_rel_err = 0.0;
  // Identifies the worst entry as "<input index>[<flat offset>]".
  std::string worst_entry;
};

/// Compares the analytic gradient of a scalar-valued computation against
/// central finite differences. `build` must construct the computation from
/// the given tensors on the supplied tape; it is re-run with perturbed
/// input values, so it must read inputs by reference, not by copy.
///
/// The relative error denominator floors at 1e-8 so near-zero gradients do
/// not blow up the ratio.
GradCheckResult grad_check(const std::function<TensorPtr(Tape&)>& build,
                           const std::vector<TensorPtr>& inputs, double h = 1e-5);

}  // namespace cosea
