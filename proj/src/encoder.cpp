#include "cosea/encoder.hpp"

#include "cosea/errors.hpp"

namespace cosea {

namespace {

// Full-length copy of the weight vector; positions beyond the valid
// prefix are exactly zero by construction of masked_softmax.
std::vector<double> trace_weights(const TensorPtr& weights) { return weights->values; }

}  // namespace

ConvModuleResult conv_module(const TensorPtr& h_prev, const ConvLayerParams& layer,
                             const SequenceMask& mask, bool attention_enabled, Tape* tape) {
  TensorPtr u = ops::conv1d_same(h_prev, layer.kernel, layer.bias, tape);
  TensorPtr v = ops::glu(u, tape);

  ConvModuleResult result;
  TensorPtr z = v;
  if (attention_enabled) {
    TensorPtr logits = ops::row_dot(v, layer.attention, tape);
    TensorPtr alpha = ops::masked_softmax(logits, mask, tape);
    z = ops::scale_rows(v, alpha, tape);
    result.attention = trace_weights(alpha);
  }
  TensorPtr h = ops::add(z, h_prev, tape);
  result.output = ops::mask_rows(h, mask, tape);
  return result;
}

EncodeResult encode_code(std::span<const TokenId> ids, const SequenceMask& mask,
                         const CodeEncoderParams& params, const EncoderConfig& config,
                         Tape* tape) {
  if (ids.size() != mask.length()) {
    throw ShapeError("encode_code: " + std::to_string(ids.size()) + " ids for mask of length " +
                     std::to_string(mask.length()));
  }

  TensorPtr t = ops::embedding_lookup(params.embedding, ids, tape);
  t = ops::mask_rows(t, mask, tape);

  TensorPtr h = ops::linear(t, params.emb2hid_w, params.emb2hid_b, tape);
  h = ops::mask_rows(h, mask, tape);

  EncodeResult result;
  for (const auto& layer : params.layers) {
    ConvModuleResult module = conv_module(h, layer, mask, config.layer_attention, tape);
    h = module.output;
    if (config.layer_attention) result.trace.layer.push_back(std::move(module.attention));
  }

  TensorPtr blocks = ops::linear(h, params.hid2emb_w, params.hid2emb_b, tape);
  blocks = ops::add(blocks, t, tape);
  blocks = ops::mask_rows(blocks, mask, tape);

  TensorPtr logits = ops::row_dot(blocks, params.pool_attention, tape);
  TensorPtr beta = ops::masked_softmax(logits, mask, tape);
  result.embedding = ops::weighted_sum(blocks, beta, tape);
  result.trace.pooling = trace_weights(beta);
  return result;
}

EncodeResult encode_query(std::span<const TokenId> ids, const SequenceMask& mask,
                          const QueryEncoderParams& params, Tape* tape) {
  if (ids.size() != mask.length()) {
    throw ShapeError("encode_query: " + std::to_string(ids.size()) + " ids for mask of length " +
                     std::to_string(mask.length()));
  }

  TensorPtr o = ops::embedding_lookup(params.embedding, ids, tape);
  o = ops::mask_rows(o, mask, tape);

  // Logits live in the transformed hidden space; pooling stays in the
  // embedding space so code and query vectors remain comparable.
  TensorPtr s = ops::matmul(o, params.attn_transform, tape);
  TensorPtr logits = ops::row_dot(s, params.attn_vector, tape);
  TensorPtr alpha = ops::masked_softmax(logits, mask, tape);

  EncodeResult result;
  result.embedding = ops::weighted_sum(o, alpha, tape);
  result.trace.pooling = trace_weights(alpha);
  return result;
}

}  // namespace cosea
