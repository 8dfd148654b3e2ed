#include "cosea/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cosea {
namespace ops {

namespace {

void check_finite(const TensorPtr& t, const char* op) {
  if (!t->all_finite()) {
    throw NumericError(std::string(op) + ": non-finite output");
  }
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ShapeError(msg);
}

// Grad buffers are allocated up front so a backward step can accumulate
// into any operand, including ones that appear twice in one call.
void prepare(Tape* tape, std::initializer_list<TensorPtr> tensors) {
  if (!tape) return;
  for (const auto& t : tensors) t->ensure_grad();
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

TensorPtr linear(const TensorPtr& x, const TensorPtr& w, const TensorPtr& b, Tape* tape) {
  require(x->rank() == 2 && w->rank() == 2 && b->rank() == 1,
          "linear: expected x [p x m], w [m x n], b [n], got " + x->shape_str() + ", " +
              w->shape_str() + ", " + b->shape_str());
  require(x->dim(1) == w->dim(0), "linear: x " + x->shape_str() + " incompatible with w " +
                                      w->shape_str());
  require(b->dim(0) == w->dim(1),
          "linear: bias " + b->shape_str() + " incompatible with w " + w->shape_str());
  const std::size_t p = x->dim(0), m = x->dim(1), n = w->dim(1);

  auto out = make_tensor({p, n});
  for (std::size_t i = 0; i < p; ++i) {
    double* orow = out->values.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) orow[j] = b->values[j];
    const double* xrow = x->values.data() + i * m;
    for (std::size_t k = 0; k < m; ++k) {
      const double xv = xrow[k];
      const double* wrow = w->values.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += xv * wrow[j];
    }
  }
  check_finite(out, "linear");

  prepare(tape, {x, w, b, out});
  if (tape) {
    tape->record([x, w, b, out, p, m, n] {
      for (std::size_t i = 0; i < p; ++i) {
        const double* g = out->grad.data() + i * n;
        const double* xrow = x->values.data() + i * m;
        double* xg = x->grad.data() + i * m;
        for (std::size_t k = 0; k < m; ++k) {
          const double* wrow = w->values.data() + k * n;
          double* wg = w->grad.data() + k * n;
          double acc = 0.0;
          const double xv = xrow[k];
          for (std::size_t j = 0; j < n; ++j) {
            acc += g[j] * wrow[j];
            wg[j] += xv * g[j];
          }
          xg[k] += acc;
        }
        for (std::size_t j = 0; j < n; ++j) b->grad[j] += g[j];
      }
    });
  }
  return out;
}

TensorPtr matmul(const TensorPtr& x, const TensorPtr& w, Tape* tape) {
  require(x->rank() == 2 && w->rank() == 2 && x->dim(1) == w->dim(0),
          "matmul: x " + x->shape_str() + " incompatible with w " + w->shape_str());
  const std::size_t p = x->dim(0), m = x->dim(1), n = w->dim(1);

  auto out = make_tensor({p, n});
  for (std::size_t i = 0; i < p; ++i) {
    double* orow = out->values.data() + i * n;
    const double* xrow = x->values.data() + i * m;
    for (std::size_t k = 0; k < m; ++k) {
      const double xv = xrow[k];
      const double* wrow = w->values.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += xv * wrow[j];
    }
  }
  check_finite(out, "matmul");

  prepare(tape, {x, w, out});
  if (tape) {
    tape->record([x, w, out, p, m, n] {
      for (std::size_t i = 0; i < p; ++i) {
        const double* g = out->grad.data() + i * n;
        const double* xrow = x->values.data() + i * m;
        double* xg = x->grad.data() + i * m;
        for (std::size_t k = 0; k < m; ++k) {
          const double* wrow = w->values.data() + k * n;
          double* wg = w->grad.data() + k * n;
          double acc = 0.0;
          const double xv = xrow[k];
          for (std::size_t j = 0; j < n; ++j) {
            acc += g[j] * wrow[j];
            wg[j] += xv * g[j];
          }
          xg[k] += acc;
        }
      }
    });
  }
  return out;
}

TensorPtr conv1d_same(const TensorPtr& x, const TensorPtr& kernel, const TensorPtr& bias,
                      Tape* tape) {
  require(x->rank() == 2 && kernel->rank() == 3 && bias->rank() == 1,
          "conv1d_same: expected x [p x d_in], kernel [k x d_in x d_out], bias [d_out], got " +
              x->shape_str() + ", " + kernel->shape_str() + ", " + bias->shape_str());
  const std::size_t p = x->dim(0), din = x->dim(1);
  const std::size_t k = kernel->dim(0), dout = kernel->dim(2);
  if (k % 2 == 0) {
    throw ConfigError("conv1d_same: kernel size must be odd, got " + std::to_string(k));
  }
  if (p == 0) throw EmptySequenceError("conv1d_same: empty sequence");
  require(kernel->dim(1) == din, "conv1d_same: x " + x->shape_str() +
                                     " incompatible with kernel " + kernel->shape_str());
  require(bias->dim(0) == dout, "conv1d_same: bias " + bias->shape_str() +
                                    " incompatible with kernel " + kernel->shape_str());
  const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(k - 1) / 2;

  auto out = make_tensor({p, dout});
  for (std::size_t i = 0; i < p; ++i) {
    double* orow = out->values.data() + i * dout;
    for (std::size_t o = 0; o < dout; ++o) orow[o] = bias->values[o];
    for (std::size_t j = 0; j < k; ++j) {
      const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(j) - r;
      if (src < 0 || src >= static_cast<std::ptrdiff_t>(p)) continue;  // zero padding
      const double* xrow = x->values.data() + static_cast<std::size_t>(src) * din;
      const double* krow = kernel->values.data() + j * din * dout;
      for (std::size_t c = 0; c < din; ++c) {
        const double xv = xrow[c];
        const double* kc = krow + c * dout;
        for (std::size_t o = 0; o < dout; ++o) orow[o] += xv * kc[o];
      }
    }
  }
  check_finite(out, "conv1d_same");

  prepare(tape, {x, kernel, bias, out});
  if (tape) {
    tape->record([x, kernel, bias, out, p, din, k, dout, r] {
      for (std::size_t i = 0; i < p; ++i) {
        const double* g = out->grad.data() + i * dout;
        for (std::size_t o = 0; o < dout; ++o) bias->grad[o] += g[o];
        for (std::size_t j = 0; j < k; ++j) {
          const std::ptrdiff_t src =
              static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(j) - r;
          if (src < 0 || src >= static_cast<std::ptrdiff_t>(p)) continue;
          const double* xrow = x->values.data() + static_cast<std::size_t>(src) * din;
          double* xg = x->grad.data() + static_cast<std::size_t>(src) * din;
          const double* krow = kernel->values.data() + j * din * dout;
          double* kg = kernel->grad.data() + j * din * dout;
          for (std::size_t c = 0; c < din; ++c) {
            const double xv = xrow[c];
            const double* kc = krow + c * dout;
            double* kgc = kg + c * dout;
            double acc = 0.0;
            for (std::size_t o = 0; o < dout; ++o) {
              acc += g[o] * kc[o];
              kgc[o] += xv * g[o];
            }
            xg[c] += acc;
          }
        }
      }
    });
  }
  return out;
}

TensorPtr glu(const TensorPtr& x, Tape* tape) {
  require(x->rank() == 2, "glu: expected [p x 2d], got " + x->shape_str());
  if (x->dim(1) % 2 != 0) {
    throw ShapeError("glu: last dimension must be even, got " + x->shape_str());
  }
  const std::size_t p = x->dim(0), d = x->dim(1) / 2, stride = x->dim(1);

  auto out = make_tensor({p, d});
  for (std::size_t i = 0; i < p; ++i) {
    const double* xrow = x->values.data() + i * stride;
    double* orow = out->values.data() + i * d;
    for (std::size_t c = 0; c < d; ++c) orow[c] = xrow[c] * sigmoid(xrow[d + c]);
  }
  check_finite(out, "glu");

  prepare(tape, {x, out});
  if (tape) {
    tape->record([x, out, p, d, stride] {
      for (std::size_t i = 0; i < p; ++i) {
        const double* xrow = x->values.data() + i * stride;
        double* xg = x->grad.data() + i * stride;
        const double* g = out->grad.data() + i * d;
        for (std::size_t c = 0; c < d; ++c) {
          const double s = sigmoid(xrow[d + c]);
          xg[c] += g[c] * s;
          xg[d + c] += g[c] * xrow[c] * s * (1.0 - s);
        }
      }
    });
  }
  return out;
}

TensorPtr masked_softmax(const TensorPtr& logits, const SequenceMask& mask, Tape* tape) {
  require(logits->rank() == 1, "masked_softmax: expected [p], got " + logits->shape_str());
  require(logits->dim(0) == mask.length(),
          "masked_softmax: logits " + logits->shape_str() + " do not match mask length " +
              std::to_string(mask.length()));
  const std::size_t p = mask.length(), v = mask.valid_len();

  auto out = make_tensor({p});
  double mx = logits->values[0];
  for (std::size_t i = 1; i < v; ++i) mx = std::max(mx, logits->values[i]);
  double denom = 0.0;
  for (std::size_t i = 0; i < v; ++i) {
    out->values[i] = std::exp(logits->values[i] - mx);
    denom += out->values[i];
  }
  for (std::size_t i = 0; i < v; ++i) out->values[i] /= denom;
  check_finite(out, "masked_softmax");

  prepare(tape, {logits, out});
  if (tape) {
    tape->record([logits, out, v] {
      double dot = 0.0;
      for (std::size_t i = 0; i < v; ++i) dot += out->grad[i] * out->values[i];
      for (std::size_t i = 0; i < v; ++i) {
        logits->grad[i] += out->values[i] * (out->grad[i] - dot);
      }
    });
  }
  return out;
}

TensorPtr cosine(const TensorPtr& u, const TensorPtr& v, Tape* tape) {
  require(u->rank() == 1 && v->rank() == 1 && u->dim(0) == v->dim(0),
          "cosine: expected equal-length vectors, got " + u->shape_str() + " and " +
              v->shape_str());
  const std::size_t n = u->dim(0);
  double dot = 0.0, nu2 = 0.0, nv2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += u->values[i] * v->values[i];
    nu2 += u->values[i] * u->values[i];
    nv2 += v->values[i] * v->values[i];
  }
  if (nu2 == 0.0 || nv2 == 0.0) {
    throw DegenerateVectorError("cosine: zero-norm vector");
  }
  const double nu = std::sqrt(nu2), nv = std::sqrt(nv2);
  const double c = dot / (nu * nv);
  auto out = make_scalar(c);
  check_finite(out, "cosine");

  prepare(tape, {u, v, out});
  if (tape) {
    tape->record([u, v, out, n, nu, nv, c] {
      const double g = out->grad[0];
      const double inv = 1.0 / (nu * nv);
      for (std::size_t i = 0; i < n; ++i) {
        u->grad[i] += g * (v->values[i] * inv - c * u->values[i] / (nu * nu));
        v->grad[i] += g * (u->values[i] * inv - c * v->values[i] / (nv * nv));
      }
    });
  }
  return out;
}

TensorPtr embedding_lookup(const TensorPtr& table, std::span<const TokenId> ids, Tape* tape) {
  require(table->rank() == 2, "embedding_lookup: expected table [V x E], got " + table->shape_str());
  if (ids.empty()) throw EmptySequenceError("embedding_lookup: empty id sequence");
  const std::size_t vsize = table->dim(0), e = table->dim(1), p = ids.size();
  for (TokenId id : ids) {
    if (id >= vsize) {
      throw ConfigError("embedding_lookup: id " + std::to_string(id) +
                        " out of range for vocabulary of size " + std::to_string(vsize));
    }
  }

  auto out = make_tensor({p, e});
  for (std::size_t i = 0; i < p; ++i) {
    const double* row = table->values.data() + static_cast<std::size_t>(ids[i]) * e;
    std::copy(row, row + e, out->values.data() + i * e);
  }
  check_finite(out, "embedding_lookup");

  prepare(tape, {table, out});
  if (tape) {
    std::vector<TokenId> ids_copy(ids.begin(), ids.end());
    tape->record([table, out, ids_copy, e] {
      for (std::size_t i = 0; i < ids_copy.size(); ++i) {
        double* tg = table->grad.data() + static_cast<std::size_t>(ids_copy[i]) * e;
        const double* g = out->grad.data() + i * e;
        for (std::size_t c = 0; c < e; ++c) tg[c] += g[c];
      }
    });
  }
  return out;
}

TensorPtr row_dot(const TensorPtr& m, const TensorPtr& a, Tape* tape) {
  require(m->rank() == 2 && a->rank() == 1 && m->dim(1) == a->dim(0),
          "row_dot: m " + m->shape_str() + " incompatible with a " + a->shape_str());
  const std::size_t p = m->dim(0), d = m->dim(1);

  auto out = make_tensor({p});
  for (std::size_t i = 0; i < p; ++i) {
    const double* row = m->values.data() + i * d;
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += row[c] * a->values[c];
    out->values[i] = acc;
  }
  check_finite(out, "row_dot");

  prepare(tape, {m, a, out});
  if (tape) {
    tape->record([m, a, out, p, d] {
      for (std::size_t i = 0; i < p; ++i) {
        const double g = out->grad[i];
        const double* row = m->values.data() + i * d;
        double* mg = m->grad.data() + i * d;
        for (std::size_t c = 0; c < d; ++c) {
          mg[c] += g * a->values[c];
          a->grad[c] += g * row[c];
        }
      }
    });
  }
  return out;
}

TensorPtr scale_rows(const TensorPtr& m, const TensorPtr& w, Tape* tape) {
  require(m->rank() == 2 && w->rank() == 1 && m->dim(0) == w->dim(0),
          "scale_rows: m " + m->shape_str() + " incompatible with weights " + w->shape_str());
  const std::size_t p = m->dim(0), d = m->dim(1);

  auto out = make_tensor({p, d});
  for (std::size_t i = 0; i < p; ++i) {
    const double wi = w->values[i];
    const double* row = m->values.data() + i * d;
    double* orow = out->values.data() + i * d;
    for (std::size_t c = 0; c < d; ++c) orow[c] = wi * row[c];
  }
  check_finite(out, "scale_rows");

  prepare(tape, {m, w, out});
  if (tape) {
    tape->record([m, w, out, p, d] {
      for (std::size_t i = 0; i < p; ++i) {
        const double* g = out->grad.data() + i * d;
        const double* row = m->values.data() + i * d;
        double* mg = m->grad.data() + i * d;
        const double wi = w->values[i];
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          mg[c] += wi * g[c];
          acc += g[c] * row[c];
        }
        w->grad[i] += acc;
      }
    });
  }
  return out;
}

TensorPtr weighted_sum(const TensorPtr& m, const TensorPtr& w, Tape* tape) {
  require(m->rank() == 2 && w->rank() == 1 && m->dim(0) == w->dim(0),
          "weighted_sum: m " + m->shape_str() + " incompatible with weights " + w->shape_str());
  const std::size_t p = m->dim(0), d = m->dim(1);

  auto out = make_tensor({d});
  for (std::size_t i = 0; i < p; ++i) {
    const double wi = w->values[i];
    const double* row = m->values.data() + i * d;
    for (std::size_t c = 0; c < d; ++c) out->values[c] += wi * row[c];
  }
  check_finite(out, "weighted_sum");

  prepare(tape, {m, w, out});
  if (tape) {
    tape->record([m, w, out, p, d] {
      for (std::size_t i = 0; i < p; ++i) {
        const double wi = w->values[i];
        const double* row = m->values.data() + i * d;
        double* mg = m->grad.data() + i * d;
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          mg[c] += wi * out->grad[c];
          acc += out->grad[c] * row[c];
        }
        w->grad[i] += acc;
      }
    });
  }
  return out;
}

TensorPtr mask_rows(const TensorPtr& m, const SequenceMask& mask, Tape* tape) {
  require(m->rank() == 2 && m->dim(0) == mask.length(),
          "mask_rows: m " + m->shape_str() + " does not match mask length " +
              std::to_string(mask.length()));
  const std::size_t v = mask.valid_len(), d = m->dim(1);

  auto out = make_tensor({m->dim(0), d});
  std::copy(m->values.begin(), m->values.begin() + static_cast<std::ptrdiff_t>(v * d),
            out->values.begin());
  check_finite(out, "mask_rows");

  prepare(tape, {m, out});
  if (tape) {
    tape->record([m, out, v, d] {
      for (std::size_t i = 0; i < v * d; ++i) m->grad[i] += out->grad[i];
    });
  }
  return out;
}

TensorPtr add(const TensorPtr& a, const TensorPtr& b, Tape* tape) {
  require(a->shape == b->shape,
          "add: shape mismatch " + a->shape_str() + " vs " + b->shape_str());
  auto out = make_tensor(a->shape);
  for (std::size_t i = 0; i < a->size(); ++i) out->values[i] = a->values[i] + b->values[i];
  check_finite(out, "add");

  prepare(tape, {a, b, out});
  if (tape) {
    tape->record([a, b, out] {
      for (std::size_t i = 0; i < out->size(); ++i) {
        a->grad[i] += out->grad[i];
        b->grad[i] += out->grad[i];
      }
    });
  }
  return out;
}

TensorPtr sub(const TensorPtr& a, const TensorPtr& b, Tape* tape) {
  require(a->shape == b->shape,
          "sub: shape mismatch " + a->shape_str() + " vs " + b->shape_str());
  auto out = make_tensor(a->shape);
  for (std::size_t i = 0; i < a->size(); ++i) out->values[i] = a->values[i] - b->values[i];
  check_finite(out, "sub");

  prepare(tape, {a, b, out});
  if (tape) {
    tape->record([a, b, out] {
      for (std::size_t i = 0; i < out->size(); ++i) {
        a->grad[i] += out->grad[i];
        b->grad[i] -= out->grad[i];
      }
    });
  }
  return out;
}

TensorPtr add_const(const TensorPtr& x, double c, Tape* tape) {
  auto out = make_tensor(x->shape);
  for (std::size_t i = 0; i < x->size(); ++i) out->values[i] = x->values[i] + c;
  check_finite(out, "add_const");

  prepare(tape, {x, out});
  if (tape) {
    tape->record([x, out] {
      for (std::size_t i = 0; i < out->size(); ++i) x->grad[i] += out->grad[i];
    });
  }
  return out;
}

TensorPtr scale_const(const TensorPtr& x, double c, Tape* tape) {
  auto out = make_tensor(x->shape);
  for (std::size_t i = 0; i < x->size(); ++i) out->values[i] = x->values[i] * c;
  check_finite(out, "scale_const");

  prepare(tape, {x, out});
  if (tape) {
    tape->record([x, out, c] {
      for (std::size_t i = 0; i < out->size(); ++i) x->grad[i] += c * out->grad[i];
    });
  }
  return out;
}

TensorPtr relu(const TensorPtr& x, Tape* tape) {
  auto out = make_tensor(x->shape);
  for (std::size_t i = 0; i < x->size(); ++i) out->values[i] = std::max(0.0, x->values[i]);
  check_finite(out, "relu");

  prepare(tape, {x, out});
  if (tape) {
    tape->record([x, out] {
      for (std::size_t i = 0; i < out->size(); ++i) {
        if (x->values[i] > 0.0) x->grad[i] += out->grad[i];
      }
    });
  }
  return out;
}

TensorPtr sum(const std::vector<TensorPtr>& xs, Tape* tape) {
  if (xs.empty()) throw EmptySequenceError("sum: no tensors");
  auto out = make_tensor(xs[0]->shape);
  for (const auto& x : xs) {
    require(x->shape == xs[0]->shape,
            "sum: shape mismatch " + x->shape_str() + " vs " + xs[0]->shape_str());
    for (std::size_t i = 0; i < x->size(); ++i) out->values[i] += x->values[i];
  }
  check_finite(out, "sum");

  if (tape) {
    for (const auto& x : xs) x->ensure_grad();
    out->ensure_grad();
    tape->record([xs, out] {
      for (const auto& x : xs) {
        for (std::size_t i = 0; i < out->size(); ++i) x->grad[i] += out->grad[i];
      }
    });
  }
  return out;
}

TensorPtr project(const TensorPtr& x, const std::vector<double>& coeffs, Tape* tape) {
  require(coeffs.size() == x->size(), "project: " + std::to_string(coeffs.size()) +
                                          " coefficients for tensor " + x->shape_str());
  double acc = 0.0;
  for (std::size_t i = 0; i < x->size(); ++i) acc += coeffs[i] * x->values[i];
  auto out = make_scalar(acc);
  check_finite(out, "project");

  prepare(tape, {x, out});
  if (tape) {
    tape->record([x, out, coeffs] {
      for (std::size_t i = 0; i < x->size(); ++i) x->grad[i] += coeffs[i] * out->grad[0];
    });
  }
  return out;
}

}  // namespace ops
}  // namespace cosea
