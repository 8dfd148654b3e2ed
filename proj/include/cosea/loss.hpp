#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cosea/tape.hpp"
#include "cosea/tensor.hpp"

namespace cosea {

/// Hinge loss on one triple: max(0, margin - cos(q, pos) + cos(q, neg)).
/// Gradient flows only when the hinge is strictly positive.
TensorPtr loss_sampled(const TensorPtr& e_q, const TensorPtr& e_pos, const TensorPtr& e_neg,
                       double margin, Tape* tape);

/// Row-wise hinge values for a full similarity matrix: for each row i,
/// max(0, margin - sim[i][i] + max_{j != i} sim[i][j]), ties in the max
/// broken toward the lowest index. Pure helper shared by loss_minmax and
/// its tests.
std::vector<double> minmax_row_hinges(const std::vector<std::vector<double>>& sim, double margin,
                                      std::vector<std::size_t>* argmax_out = nullptr);

struct MinMaxLossInfo {
  std::vector<std::size_t> hardest_negative;  // per-row argmax column
  std::vector<double> row_losses;
};

/// Batch hinge loss where the negative term is the hardest in-batch
/// negative: mean over rows i of
///   max(0, margin - cos(q_i, c_i) + max_{j != i} cos(q_i, c_j)).
/// Gradient reaches the positive pair and exactly the argmax negative of
/// each active row. Requires at least two rows.
TensorPtr loss_minmax(std::span<const TensorPtr> e_q, std::span<const TensorPtr> e_c,
                      double margin, Tape* tape, MinMaxLossInfo* info = nullptr);

}  // namespace cosea
