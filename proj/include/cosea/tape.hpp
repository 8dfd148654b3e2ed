#pragma once

#include <functional>
#include <vector>

#include "cosea/tensor.hpp"

namespace cosea {

/// Records one backward step per differentiable operation, in execution
/// order. `backward` seeds the scalar output with gradient 1 and replays the
/// steps in reverse, accumulating into the `grad` buffers of every tensor
/// the recorded operations touched.
class Tape {
 public:
  void record(std::function<void()> step) { steps_.push_back(std::move(step)); }

  void backward(const TensorPtr& output) {
    if (output->size() != 1) {
      throw ShapeError("backward: output must be scalar, got " + output->shape_str());
    }
    output->ensure_grad();
    output->grad[0] += 1.0;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) (*it)();
  }

  std::size_t size() const { return steps_.size(); }
  void clear() { steps_.clear(); }

 private:
  std::vector<std::function<void()>> steps_;
};

}  // namespace cosea
