#pragma once

#include <cstdint>
#include <string>

#include "cosea/adam.hpp"
#include "cosea/params.hpp"
#include "cosea/vocab.hpp"

namespace cosea {

/// Everything needed to reproduce or resume a model: architecture config,
/// both encoders' parameters, optimizer moments, vocabulary snapshots and
/// the training position. Serializes to a little-endian binary file
/// ("COSEA" magic, version, named float64 tensors, then the two token
/// lists); scalar config and counters ride along as one-element tensors
/// so the wire format stays uniform.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  EncoderConfig config;
  ModelParams params;
  AdamState adam;
  TokenVocabulary code_vocab;
  TokenVocabulary query_vocab;

  std::uint64_t step = 0;
  std::uint64_t epoch = 0;
  std::uint64_t seed = 0;
  double best_val_mrr = -1.0;  // negative until a validation pass ran
};

std::string serialize_checkpoint(const Checkpoint& ckpt);
Checkpoint deserialize_checkpoint(const std::string& bytes, const std::string& source);

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

/// Content hash of the serialized checkpoint; indexes built from a
/// checkpoint carry this id so stale pairings are detected.
std::uint64_t checkpoint_id(const Checkpoint& ckpt);

/// Deep copy via serialization round trip.
Checkpoint clone_checkpoint(const Checkpoint& ckpt);

}  // namespace cosea
