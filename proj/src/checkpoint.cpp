#include "cosea/checkpoint.hpp"

#include <map>

#include "cosea/errors.hpp"
#include "cosea/serialize.hpp"

namespace cosea {

namespace {

constexpr char kMagic[] = "COSEA";
constexpr std::size_t kMagicLen = 5;

TensorPtr scalar(double v) { return make_scalar(v); }

TensorPtr vec(const std::vector<std::size_t>& vals) {
  auto t = make_tensor({vals.size()});
  for (std::size_t i = 0; i < vals.size(); ++i) t->values[i] = static_cast<double>(vals[i]);
  return t;
}

// Canonical tensor order: config scalars, training state, model
// parameters, then optimizer moments. Keeping this fixed makes
// save -> load -> save byte-identical.
std::vector<std::pair<std::string, TensorPtr>> named_tensors(const Checkpoint& ckpt) {
  std::vector<std::pair<std::string, TensorPtr>> out;
  out.emplace_back("config.embedding_dim", scalar(static_cast<double>(ckpt.config.embedding_dim)));
  out.emplace_back("config.hidden_dim", scalar(static_cast<double>(ckpt.config.hidden_dim)));
  out.emplace_back("config.kernel_sizes", vec(ckpt.config.kernel_sizes));
  out.emplace_back("config.max_code_len", scalar(static_cast<double>(ckpt.config.max_code_len)));
  out.emplace_back("config.max_query_len", scalar(static_cast<double>(ckpt.config.max_query_len)));
  out.emplace_back("config.layer_attention", scalar(ckpt.config.layer_attention ? 1.0 : 0.0));
  out.emplace_back("config.code_min_count", scalar(static_cast<double>(ckpt.code_vocab.min_count())));
  out.emplace_back("config.query_min_count",
                   scalar(static_cast<double>(ckpt.query_vocab.min_count())));
  out.emplace_back("state.step", scalar(static_cast<double>(ckpt.step)));
  out.emplace_back("state.epoch", scalar(static_cast<double>(ckpt.epoch)));
  out.emplace_back("state.seed", scalar(static_cast<double>(ckpt.seed)));
  out.emplace_back("state.best_val_mrr", scalar(ckpt.best_val_mrr));
  out.emplace_back("state.adam_t", scalar(static_cast<double>(ckpt.adam.t)));
  for (const auto& [name, tensor] : ckpt.params.named()) out.emplace_back(name, tensor);
  for (const auto& [name, mv] : ckpt.adam.moments) {
    out.emplace_back("adam.m." + name, mv.first);
    out.emplace_back("adam.v." + name, mv.second);
  }
  return out;
}

void put_tensor(std::string& out, const std::string& name, const Tensor& t) {
  io::put_string(out, name);
  io::put_u32(out, static_cast<std::uint32_t>(t.rank()));
  for (std::size_t d : t.shape) io::put_u64(out, d);
  for (double v : t.values) io::put_f64(out, v);
}

void put_vocab(std::string& out, const TokenVocabulary& vocab) {
  io::put_u64(out, vocab.tokens().size());
  for (const auto& tok : vocab.tokens()) io::put_string(out, tok);
}

TensorPtr read_tensor(io::Reader& r, std::string& name) {
  name = r.string("tensor name");
  const std::uint32_t rank = r.u32("tensor rank");
  std::vector<std::size_t> shape(rank);
  for (auto& d : shape) d = r.u64("tensor dim");
  auto t = make_tensor(shape);
  for (auto& v : t->values) v = r.f64("tensor payload");
  return t;
}

std::vector<std::string> read_vocab_tokens(io::Reader& r) {
  const std::uint64_t n = r.u64("vocabulary size");
  std::vector<std::string> tokens;
  tokens.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) tokens.push_back(r.string("vocabulary token"));
  return tokens;
}

class TensorMap {
 public:
  explicit TensorMap(std::map<std::string, TensorPtr> m, std::string source)
      : map_(std::move(m)), source_(std::move(source)) {}

  TensorPtr get(const std::string& name) const {
    const auto it = map_.find(name);
    if (it == map_.end()) {
      throw FormatError(source_ + ": missing tensor \"" + name + "\"");
    }
    return it->second;
  }

  double get_scalar(const std::string& name) const {
    const TensorPtr t = get(name);
    if (t->size() != 1) {
      throw FormatError(source_ + ": tensor \"" + name + "\" is not scalar");
    }
    return t->values[0];
  }

  std::uint64_t get_count(const std::string& name) const {
    return static_cast<std::uint64_t>(get_scalar(name));
  }

 private:
  std::map<std::string, TensorPtr> map_;
  std::string source_;
};

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  std::string out;
  out.append(kMagic, kMagicLen);
  io::put_u32(out, Checkpoint::kVersion);

  const auto tensors = named_tensors(ckpt);
  io::put_u64(out, tensors.size());
  for (const auto& [name, tensor] : tensors) put_tensor(out, name, *tensor);

  io::put_u32(out, 2);
  put_vocab(out, ckpt.code_vocab);
  put_vocab(out, ckpt.query_vocab);
  return out;
}

Checkpoint deserialize_checkpoint(const std::string& bytes, const std::string& source) {
  io::Reader r(bytes, source);
  if (r.raw(kMagicLen, "magic") != std::string(kMagic, kMagicLen)) {
    throw FormatError(source + ": bad magic, not a checkpoint file");
  }
  const std::uint32_t version = r.u32("version");
  if (version != Checkpoint::kVersion) {
    throw FormatError(source + ": unsupported checkpoint version " + std::to_string(version));
  }

  const std::uint64_t count = r.u64("tensor count");
  std::map<std::string, TensorPtr> tensors;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string name;
    TensorPtr t = read_tensor(r, name);
    if (!tensors.emplace(name, t).second) {
      throw FormatError(source + ": duplicate tensor \"" + name + "\"");
    }
  }

  const std::uint32_t vocab_count = r.u32("vocabulary count");
  if (vocab_count != 2) {
    throw FormatError(source + ": expected 2 vocabularies, got " + std::to_string(vocab_count));
  }
  std::vector<std::string> code_tokens = read_vocab_tokens(r);
  std::vector<std::string> query_tokens = read_vocab_tokens(r);
  if (!r.at_end()) {
    throw FormatError(source + ": trailing bytes at offset " + std::to_string(r.offset()));
  }

  const TensorMap map(std::move(tensors), source);
  Checkpoint ckpt;
  ckpt.config.embedding_dim = map.get_count("config.embedding_dim");
  ckpt.config.hidden_dim = map.get_count("config.hidden_dim");
  const TensorPtr ks = map.get("config.kernel_sizes");
  ckpt.config.kernel_sizes.clear();
  for (double v : ks->values) ckpt.config.kernel_sizes.push_back(static_cast<std::size_t>(v));
  ckpt.config.max_code_len = map.get_count("config.max_code_len");
  ckpt.config.max_query_len = map.get_count("config.max_query_len");
  ckpt.config.layer_attention = map.get_scalar("config.layer_attention") != 0.0;
  ckpt.config.validate();

  ckpt.code_vocab = TokenVocabulary::from_tokens(std::move(code_tokens),
                                                 map.get_count("config.code_min_count"));
  ckpt.query_vocab = TokenVocabulary::from_tokens(std::move(query_tokens),
                                                  map.get_count("config.query_min_count"));

  ckpt.step = map.get_count("state.step");
  ckpt.epoch = map.get_count("state.epoch");
  ckpt.seed = map.get_count("state.seed");
  ckpt.best_val_mrr = map.get_scalar("state.best_val_mrr");
  ckpt.adam.t = map.get_count("state.adam_t");

  ckpt.params.code.embedding = map.get("code.embedding");
  ckpt.params.code.emb2hid_w = map.get("code.emb2hid.weight");
  ckpt.params.code.emb2hid_b = map.get("code.emb2hid.bias");
  for (std::size_t l = 0; l < ckpt.config.num_layers(); ++l) {
    const std::string prefix = "code.conv" + std::to_string(l) + ".";
    ConvLayerParams layer;
    layer.kernel = map.get(prefix + "kernel");
    layer.bias = map.get(prefix + "bias");
    layer.attention = map.get(prefix + "attention");
    ckpt.params.code.layers.push_back(std::move(layer));
  }
  ckpt.params.code.hid2emb_w = map.get("code.hid2emb.weight");
  ckpt.params.code.hid2emb_b = map.get("code.hid2emb.bias");
  ckpt.params.code.pool_attention = map.get("code.pool_attention");
  ckpt.params.query.embedding = map.get("query.embedding");
  ckpt.params.query.attn_transform = map.get("query.attn_transform");
  ckpt.params.query.attn_vector = map.get("query.attn_vector");

  ckpt.adam.moments.clear();
  for (const auto& [name, p] : ckpt.params.named()) {
    ckpt.adam.moments.emplace(name,
                              std::make_pair(map.get("adam.m." + name), map.get("adam.v." + name)));
    (void)p;
  }

  // Shape sanity against the declared config.
  const std::size_t e = ckpt.config.embedding_dim, d = ckpt.config.hidden_dim;
  if (ckpt.params.code.embedding->shape !=
          std::vector<std::size_t>{ckpt.code_vocab.size(), e} ||
      ckpt.params.code.emb2hid_w->shape != std::vector<std::size_t>{e, d}) {
    throw FormatError(source + ": tensor shapes inconsistent with config");
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  io::write_file(path, serialize_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::string& path) {
  return deserialize_checkpoint(io::read_file(path), path);
}

std::uint64_t checkpoint_id(const Checkpoint& ckpt) {
  return io::fnv1a64(serialize_checkpoint(ckpt));
}

Checkpoint clone_checkpoint(const Checkpoint& ckpt) {
  return deserialize_checkpoint(serialize_checkpoint(ckpt), "<clone>");
}

}  // namespace cosea
