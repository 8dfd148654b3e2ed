#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cosea/vocab.hpp"

namespace cosea {

/// Externally trained token vectors, restricted to one vocabulary.
struct PretrainedEmbeddings {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& token) const {
    const auto it = vectors.find(token);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

struct PretrainedLoadResult {
  PretrainedEmbeddings embeddings;
  double coverage = 0.0;      // covered fraction of non-reserved vocabulary
  std::size_t found = 0;      // vocabulary tokens present in the file
  std::size_t file_vectors = 0;
};

/// Loads word vectors in the text format: a "V D" header line followed by
/// V lines of "token v1 ... vD". Only vectors for tokens present in
/// `vocab` are kept. Throws ParseError (with line number) on malformed
/// lines and ConfigError when the file dimension differs from
/// `expected_dim`.
PretrainedLoadResult load_pretrained_embeddings(const std::string& path,
                                                const TokenVocabulary& vocab,
                                                std::optional<std::size_t> expected_dim = {});

}  // namespace cosea
