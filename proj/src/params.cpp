#include "cosea/params.hpp"

#include <cmath>

#include "cosea/errors.hpp"
#include "cosea/rng.hpp"

namespace cosea {

void EncoderConfig::validate() const {
  if (embedding_dim == 0) throw ConfigError("config: embedding_dim must be >= 1");
  if (hidden_dim == 0) throw ConfigError("config: hidden_dim must be >= 1");
  if (kernel_sizes.empty()) throw ConfigError("config: at least one convolution layer required");
  for (std::size_t k : kernel_sizes) {
    if (k == 0 || k % 2 == 0) {
      throw ConfigError("config: kernel sizes must be odd, got " + std::to_string(k));
    }
  }
  if (max_code_len == 0 || max_query_len == 0) {
    throw ConfigError("config: maximum sequence lengths must be >= 1");
  }
}

std::vector<std::pair<std::string, TensorPtr>> ModelParams::named() const {
  std::vector<std::pair<std::string, TensorPtr>> out;
  out.emplace_back("code.embedding", code.embedding);
  out.emplace_back("code.emb2hid.weight", code.emb2hid_w);
  out.emplace_back("code.emb2hid.bias", code.emb2hid_b);
  for (std::size_t l = 0; l < code.layers.size(); ++l) {
    const std::string prefix = "code.conv" + std::to_string(l) + ".";
    out.emplace_back(prefix + "kernel", code.layers[l].kernel);
    out.emplace_back(prefix + "bias", code.layers[l].bias);
    out.emplace_back(prefix + "attention", code.layers[l].attention);
  }
  out.emplace_back("code.hid2emb.weight", code.hid2emb_w);
  out.emplace_back("code.hid2emb.bias", code.hid2emb_b);
  out.emplace_back("code.pool_attention", code.pool_attention);
  out.emplace_back("query.embedding", query.embedding);
  out.emplace_back("query.attn_transform", query.attn_transform);
  out.emplace_back("query.attn_vector", query.attn_vector);
  return out;
}

void ModelParams::zero_grads() const {
  for (const auto& [name, tensor] : named()) tensor->zero_grad();
}

namespace {

TensorPtr uniform_tensor(std::vector<std::size_t> shape, double bound, Rng& rng) {
  auto t = make_tensor(std::move(shape));
  for (double& v : t->values) v = rng.uniform(-bound, bound);
  return t;
}

TensorPtr embedding_table(const TokenVocabulary& vocab, std::size_t dim,
                          const PretrainedEmbeddings* pretrained, Rng& rng) {
  auto table = uniform_tensor({vocab.size(), dim}, 0.1, rng);
  if (!pretrained) return table;
  if (pretrained->dim != dim) {
    throw ConfigError("init_params: pretrained dimension " + std::to_string(pretrained->dim) +
                      " does not match embedding_dim " + std::to_string(dim));
  }
  for (std::size_t i = 0; i < vocab.tokens().size(); ++i) {
    if (const auto* vec = pretrained->find(vocab.tokens()[i])) {
      std::copy(vec->begin(), vec->end(), table->values.begin() + (i + 2) * dim);
    }
  }
  return table;
}

}  // namespace

ModelParams init_params(const EncoderConfig& config, const TokenVocabulary& code_vocab,
                        const TokenVocabulary& query_vocab, std::uint64_t seed,
                        const PretrainedEmbeddings* code_pretrained,
                        const PretrainedEmbeddings* query_pretrained) {
  config.validate();
  const std::size_t e = config.embedding_dim;
  const std::size_t d = config.hidden_dim;
  Rng rng(Rng::mix(seed, "init"));

  ModelParams p;
  p.code.embedding = embedding_table(code_vocab, e, code_pretrained, rng);
  p.code.emb2hid_w = uniform_tensor({e, d}, 1.0 / std::sqrt(static_cast<double>(e)), rng);
  p.code.emb2hid_b = make_tensor({d});
  for (std::size_t k : config.kernel_sizes) {
    ConvLayerParams layer;
    const double bound = 1.0 / std::sqrt(static_cast<double>(k * d));
    layer.kernel = uniform_tensor({k, d, 2 * d}, bound, rng);
    layer.bias = make_tensor({2 * d});
    layer.attention = uniform_tensor({d}, 0.1, rng);
    p.code.layers.push_back(std::move(layer));
  }
  p.code.hid2emb_w = uniform_tensor({d, e}, 1.0 / std::sqrt(static_cast<double>(d)), rng);
  p.code.hid2emb_b = make_tensor({e});
  p.code.pool_attention = uniform_tensor({e}, 0.1, rng);

  p.query.embedding = embedding_table(query_vocab, e, query_pretrained, rng);
  p.query.attn_transform = uniform_tensor({e, d}, 1.0 / std::sqrt(static_cast<double>(e)), rng);
  p.query.attn_vector = uniform_tensor({d}, 0.1, rng);
  return p;
}

}  // namespace cosea
