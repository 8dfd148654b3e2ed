#include "cosea/vocab.hpp"

#include <algorithm>
#include <map>

#include "cosea/errors.hpp"

namespace cosea {

namespace {
const std::string kPadName = "<pad>";
const std::string kUnkName = "<unk>";
}  // namespace

TokenVocabulary TokenVocabulary::build(const std::vector<std::vector<std::string>>& documents,
                                       std::size_t min_count) {
  if (min_count < 1) throw ConfigError("vocabulary: min_count must be >= 1");
  if (documents.empty()) throw ConfigError("vocabulary: empty corpus");

  // std::map keeps counting order-independent and the tie order lexicographic.
  std::map<std::string, std::size_t> counts;
  for (const auto& doc : documents) {
    for (const auto& tok : doc) ++counts[tok];
  }

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [tok, n] : counts) {
    if (n >= min_count) kept.emplace_back(tok, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  TokenVocabulary vocab;
  vocab.min_count_ = min_count;
  vocab.tokens_.reserve(kept.size());
  for (auto& [tok, n] : kept) vocab.tokens_.push_back(std::move(tok));
  vocab.rebuild_map();
  return vocab;
}

TokenVocabulary TokenVocabulary::from_tokens(std::vector<std::string> tokens,
                                             std::size_t min_count) {
  TokenVocabulary vocab;
  vocab.min_count_ = min_count;
  vocab.tokens_ = std::move(tokens);
  vocab.rebuild_map();
  return vocab;
}

void TokenVocabulary::rebuild_map() {
  ids_.clear();
  ids_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    ids_.emplace(tokens_[i], static_cast<TokenId>(i + 2));
  }
}

TokenId TokenVocabulary::id(const std::string& token) const {
  const auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

const std::string& TokenVocabulary::token(TokenId id) const {
  if (id == kPad) return kPadName;
  if (id == kUnk) return kUnkName;
  const std::size_t idx = static_cast<std::size_t>(id) - 2;
  if (idx >= tokens_.size()) {
    throw ConfigError("vocabulary: id " + std::to_string(id) + " out of range for size " +
                      std::to_string(size()));
  }
  return tokens_[idx];
}

}  // namespace cosea
