#include "cosea/loss.hpp"

#include "cosea/errors.hpp"
#include "cosea/ops.hpp"

namespace cosea {

TensorPtr loss_sampled(const TensorPtr& e_q, const TensorPtr& e_pos, const TensorPtr& e_neg,
                       double margin, Tape* tape) {
  TensorPtr cos_pos = ops::cosine(e_q, e_pos, tape);
  TensorPtr cos_neg = ops::cosine(e_q, e_neg, tape);
  TensorPtr gap = ops::sub(cos_neg, cos_pos, tape);
  return ops::relu(ops::add_const(gap, margin, tape), tape);
}

std::vector<double> minmax_row_hinges(const std::vector<std::vector<double>>& sim, double margin,
                                      std::vector<std::size_t>* argmax_out) {
  const std::size_t n = sim.size();
  std::vector<double> losses(n);
  if (argmax_out) argmax_out->assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sim[i].size() != n) {
      throw ShapeError("minmax_row_hinges: similarity matrix must be square");
    }
    std::size_t best = i == 0 ? 1 : 0;
    for (std::size_t j = best + 1; j < n; ++j) {
      if (j == i) continue;
      if (sim[i][j] > sim[i][best]) best = j;  // strict: ties keep the lowest index
    }
    if (argmax_out) (*argmax_out)[i] = best;
    losses[i] = std::max(0.0, margin - sim[i][i] + sim[i][best]);
  }
  return losses;
}

TensorPtr loss_minmax(std::span<const TensorPtr> e_q, std::span<const TensorPtr> e_c,
                      double margin, Tape* tape, MinMaxLossInfo* info) {
  const std::size_t b = e_q.size();
  if (b < 2) throw ConfigError("loss_minmax: batch size must be >= 2, got " + std::to_string(b));
  if (e_c.size() != b) {
    throw ShapeError("loss_minmax: " + std::to_string(b) + " queries vs " +
                     std::to_string(e_c.size()) + " codes");
  }

  // Forward pass over the whole similarity matrix picks each row's hardest
  // negative; only the diagonal and argmax entries are recorded on tape.
  std::vector<std::vector<double>> sim(b, std::vector<double>(b));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      sim[i][j] = ops::cosine(e_q[i], e_c[j], nullptr)->values[0];
    }
  }
  std::vector<std::size_t> hardest;
  std::vector<double> row_losses = minmax_row_hinges(sim, margin, &hardest);
  if (info) {
    info->hardest_negative = hardest;
    info->row_losses = row_losses;
  }

  std::vector<TensorPtr> rows;
  rows.reserve(b);
  for (std::size_t i = 0; i < b; ++i) {
    TensorPtr cos_pos = ops::cosine(e_q[i], e_c[i], tape);
    TensorPtr cos_neg = ops::cosine(e_q[i], e_c[hardest[i]], tape);
    TensorPtr gap = ops::sub(cos_neg, cos_pos, tape);
    rows.push_back(ops::relu(ops::add_const(gap, margin, tape), tape));
  }
  return ops::scale_const(ops::sum(rows, tape), 1.0 / static_cast<double>(b), tape);
}

}  // namespace cosea
