#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "cosea/errors.hpp"

namespace cosea {

/// Dense row-major tensor of 64-bit floats. `grad` mirrors `values` once the
/// tensor participates in differentiation and stays empty otherwise.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;
  std::vector<double> grad;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> s, double fill = 0.0);
  Tensor(std::vector<std::size_t> s, std::vector<double> v);

  std::size_t size() const { return values.size(); }
  std::size_t rank() const { return shape.size(); }
  std::size_t dim(std::size_t i) const { return shape[i]; }

  /// Element access for the common 2-D case.
  double& at(std::size_t i, std::size_t j) { return values[i * shape[1] + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * shape[1] + j]; }

  bool has_grad() const { return !grad.empty(); }
  void ensure_grad() {
    if (grad.empty()) grad.assign(values.size(), 0.0);
  }
  void zero_grad() {
    if (!grad.empty()) grad.assign(grad.size(), 0.0);
  }

  bool all_finite() const;
  std::string shape_str() const;
};

using TensorPtr = std::shared_ptr<Tensor>;

TensorPtr make_tensor(std::vector<std::size_t> shape, double fill = 0.0);
TensorPtr make_tensor(std::vector<std::size_t> shape, std::vector<double> values);
TensorPtr make_scalar(double value);

std::size_t shape_product(const std::vector<std::size_t>& shape);
std::string shape_to_string(const std::vector<std::size_t>& shape);

/// Boolean validity per position of a padded sequence. Valid positions form
/// a prefix; padding sits only at the tail, and at least one position is
/// valid.
class SequenceMask {
 public:
  SequenceMask(std::size_t length, std::size_t valid_len);

  /// Builds from explicit flags, rejecting non-prefix validity patterns.
  static SequenceMask from_flags(const std::vector<bool>& valid);

  std::size_t length() const { return length_; }
  std::size_t valid_len() const { return valid_len_; }
  bool valid(std::size_t i) const { return i < valid_len_; }

 private:
  std::size_t length_;
  std::size_t valid_len_;
};

}  // namespace cosea
