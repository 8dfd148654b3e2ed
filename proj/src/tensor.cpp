#include "cosea/tensor.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace cosea {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_to_string(const std::vector<std::size_t>& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << " x ";
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor::Tensor(std::vector<std::size_t> s, double fill)
    : shape(std::move(s)), values(shape_product(shape), fill) {}

Tensor::Tensor(std::vector<std::size_t> s, std::vector<double> v)
    : shape(std::move(s)), values(std::move(v)) {
  if (values.size() != shape_product(shape)) {
    throw ShapeError("tensor: " + std::to_string(values.size()) +
                     " values do not fill shape " + shape_to_string(shape));
  }
}

bool Tensor::all_finite() const {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

std::string Tensor::shape_str() const { return shape_to_string(shape); }

TensorPtr make_tensor(std::vector<std::size_t> shape, double fill) {
  return std::make_shared<Tensor>(std::move(shape), fill);
}

TensorPtr make_tensor(std::vector<std::size_t> shape, std::vector<double> values) {
  return std::make_shared<Tensor>(std::move(shape), std::move(values));
}

TensorPtr make_scalar(double value) {
  return make_tensor({1}, std::vector<double>{value});
}

SequenceMask::SequenceMask(std::size_t length, std::size_t valid_len)
    : length_(length), valid_len_(valid_len) {
  if (valid_len_ == 0) throw EmptySequenceError("mask: sequence has no valid positions");
  if (valid_len_ > length_) {
    throw ShapeError("mask: valid length " + std::to_string(valid_len_) +
                     " exceeds sequence length " + std::to_string(length_));
  }
}

SequenceMask SequenceMask::from_flags(const std::vector<bool>& valid) {
  std::size_t prefix = 0;
  while (prefix < valid.size() && valid[prefix]) ++prefix;
  for (std::size_t i = prefix; i < valid.size(); ++i) {
    if (valid[i]) throw ConfigError("mask: padding must form a suffix");
  }
  return SequenceMask(valid.size(), prefix);
}

}  // namespace cosea
