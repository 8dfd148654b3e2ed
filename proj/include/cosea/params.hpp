#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cosea/pretrained.hpp"
#include "cosea/tensor.hpp"
#include "cosea/vocab.hpp"

namespace cosea {

/// Architecture hyperparameters shared by both encoders. One convolution
/// layer per entry of `kernel_sizes`.
struct EncoderConfig {
  std::size_t embedding_dim = 200;
  std::size_t hidden_dim = 400;
  std::vector<std::size_t> kernel_sizes = {3, 3, 3};
  std::size_t max_code_len = 200;
  std::size_t max_query_len = 20;
  bool layer_attention = true;  // false trains the no-rescaling ablation

  std::size_t num_layers() const { return kernel_sizes.size(); }

  /// Throws ConfigError on non-positive dimensions or even kernel sizes.
  void validate() const;

  bool operator==(const EncoderConfig&) const = default;
};

/// One convolutional module: kernel [k x d x 2d], bias [2d], and the
/// layer attention vector [d].
struct ConvLayerParams {
  TensorPtr kernel;
  TensorPtr bias;
  TensorPtr attention;
};

struct CodeEncoderParams {
  TensorPtr embedding;  // [V_c x E]
  TensorPtr emb2hid_w;  // [E x d]
  TensorPtr emb2hid_b;  // [d]
  std::vector<ConvLayerParams> layers;
  TensorPtr hid2emb_w;  // [d x E]
  TensorPtr hid2emb_b;  // [E]
  TensorPtr pool_attention;  // [E]
};

struct QueryEncoderParams {
  TensorPtr embedding;      // [V_q x E]
  TensorPtr attn_transform; // [E x d]
  TensorPtr attn_vector;    // [d]
};

/// Both encoders' parameters with a canonical naming over every tensor.
struct ModelParams {
  CodeEncoderParams code;
  QueryEncoderParams query;

  /// Canonical (name, tensor) sequence; the order is fixed and drives
  /// checkpoint layout, optimizer iteration and initialization.
  std::vector<std::pair<std::string, TensorPtr>> named() const;

  void zero_grads() const;
};

/// Allocates and initializes both encoders. Embedding rows come from the
/// pretrained vectors where available and uniform [-0.1, 0.1] otherwise;
/// projections and kernels are uniform with bound 1/sqrt(fan-in);
/// attention vectors uniform [-0.1, 0.1]; biases zero. Deterministic for
/// a given seed.
ModelParams init_params(const EncoderConfig& config, const TokenVocabulary& code_vocab,
                        const TokenVocabulary& query_vocab, std::uint64_t seed,
                        const PretrainedEmbeddings* code_pretrained = nullptr,
                        const PretrainedEmbeddings* query_pretrained = nullptr);

}  // namespace cosea
