#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "cosea/ops.hpp"

namespace cosea {

/// Bidirectional token <-> id map. Ids 0 and 1 are reserved for PAD and
/// UNK; corpus tokens occupy 2..size()-1 ordered by descending frequency,
/// ties broken lexicographically.
class TokenVocabulary {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;

  TokenVocabulary() = default;

  /// Counts tokens across `documents` and keeps those with frequency >=
  /// min_count. Throws ConfigError on an empty corpus or min_count < 1.
  static TokenVocabulary build(const std::vector<std::vector<std::string>>& documents,
                               std::size_t min_count);

  /// Rebuilds from a token list in id order (as stored in checkpoints).
  static TokenVocabulary from_tokens(std::vector<std::string> tokens, std::size_t min_count);

  TokenId id(const std::string& token) const;
  const std::string& token(TokenId id) const;

  /// Total entries including PAD and UNK.
  std::size_t size() const { return tokens_.size() + 2; }
  std::size_t min_count() const { return min_count_; }

  /// Non-reserved tokens in id order (index 0 is id 2).
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> ids_;
  std::size_t min_count_ = 1;

  void rebuild_map();
};

}  // namespace cosea
