#pragma once

#include <span>
#include <vector>

#include "cosea/ops.hpp"
#include "cosea/params.hpp"
#include "cosea/tape.hpp"

namespace cosea {

/// Attention weights captured while encoding one sequence, for inspection.
/// Each vector spans the full padded length: a distribution over the valid
/// prefix, exactly zero on padding. `layer` is empty when layer attention
/// is disabled.
struct EncodeTrace {
  std::vector<std::vector<double>> layer;  // one per conv layer
  std::vector<double> pooling;             // final attentive-pooling weights
};

struct EncodeResult {
  TensorPtr embedding;
  EncodeTrace trace;
};

struct ConvModuleResult {
  TensorPtr output;
  std::vector<double> attention;  // empty when attention is disabled
};

/// One convolutional module: convolution to 2d channels, gated linear
/// unit, optional attention rescaling of each position, residual add of
/// the module input, padding re-zeroed.
ConvModuleResult conv_module(const TensorPtr& h_prev, const ConvLayerParams& layer,
                             const SequenceMask& mask, bool attention_enabled, Tape* tape);

/// Code encoder: token embedding, projection to the hidden space, the
/// stack of convolutional modules, projection back to the embedding space
/// with an input residual, then attentive pooling over positions.
EncodeResult encode_code(std::span<const TokenId> ids, const SequenceMask& mask,
                         const CodeEncoderParams& params, const EncoderConfig& config,
                         Tape* tape);

/// Query encoder: attentive pooling of token embeddings, with attention
/// logits computed in the transformed hidden space.
EncodeResult encode_query(std::span<const TokenId> ids, const SequenceMask& mask,
                          const QueryEncoderParams& params, Tape* tape);

}  // namespace cosea
