#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cosea/tape.hpp"
#include "cosea/tensor.hpp"

namespace cosea {

using TokenId = std::uint32_t;

/// Differentiable tensor operations. Each takes an optional tape; with a
/// tape the operation allocates gradient buffers on its inputs and output
/// and records an exact analytic backward step. With `tape == nullptr` the
/// call is forward-only. Every operation validates shapes and rejects
/// non-finite outputs.
namespace ops {

/// y[i,j] = sum_k x[i,k] * w[k,j] + b[j]
TensorPtr linear(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b, Tape* tape);

/// linear without a bias term
TensorPtr matmul(const TensorPtr& x, const TensorPtr& w, Tape* tape);

/// Length-preserving 1-D convolution with zero padding of (k-1)/2 on each
/// side. x is [p x d_in], kernel [k x d_in x d_out], bias [d_out]; k odd.
TensorPtr conv1d_same(const TensorPtr& x, const TensorPtr& kernel, const TensorPtr& bias,
                      Tape* tape);

/// Gated linear unit over the last dimension: splits [p x 2d] into halves
/// a, b and returns a * sigmoid(b).
TensorPtr glu(const TensorPtr& x, Tape* tape);

/// Softmax over the valid prefix of `logits` with max-subtraction; padded
/// positions get weight exactly zero.
TensorPtr masked_softmax(const TensorPtr& logits, const SequenceMask& mask, Tape* tape);

/// Cosine similarity of two vectors as a scalar tensor. Rejects zero-norm
/// inputs instead of silently returning 0.
TensorPtr cosine(const TensorPtr& u, const TensorPtr& v, Tape* tape);

/// Gathers rows of `table` ([V x E]) at `ids`; backward scatters into the
/// gathered rows.
TensorPtr embedding_lookup(const TensorPtr& table, std::span<const TokenId> ids, Tape* tape);

/// out[i] = <m[i,:], a>
TensorPtr row_dot(const TensorPtr& m, const TensorPtr& a, Tape* tape);

/// out[i,:] = w[i] * m[i,:]
TensorPtr scale_rows(const TensorPtr& m, const TensorPtr& w, Tape* tape);

/// out[:] = sum_i w[i] * m[i,:]
TensorPtr weighted_sum(const TensorPtr& m, const TensorPtr& w, Tape* tape);

/// Zeroes the padded rows of m; valid rows pass through.
TensorPtr mask_rows(const TensorPtr& m, const SequenceMask& mask, Tape* tape);

TensorPtr add(const TensorPtr& a, const TensorPtr& b, Tape* tape);
TensorPtr sub(const TensorPtr& a, const TensorPtr& b, Tape* tape);
TensorPtr add_const(const TensorPtr& x, double c, Tape* tape);
TensorPtr scale_const(const TensorPtr& x, double c, Tape* tape);

/// max(0, x) elementwise; gradient flows only where x is strictly positive.
TensorPtr relu(const TensorPtr& x, Tape* tape);

/// Elementwise sum of same-shaped tensors, accumulated in list order.
TensorPtr sum(const std::vector<TensorPtr>& xs, Tape* tape);

/// Scalar contraction sum_i coeffs[i] * x[i] with constant coefficients.
TensorPtr project(const TensorPtr& x, const std::vector<double>& coeffs, Tape* tape);

double sigmoid(double x);

}  // namespace ops
}  // namespace cosea
