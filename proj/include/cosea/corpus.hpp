#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosea/tensor.hpp"
#include "cosea/vocab.hpp"

namespace cosea {

/// One query/code pair as ingested from the corpus file.
struct RawPair {
  std::uint64_t id = 0;
  std::string query;
  std::string code;
  std::string language;  // informational only
};

/// A pair tokenized, id-encoded, truncated and padded to fixed lengths.
struct EncodedPair {
  std::uint64_t id = 0;
  std::vector<TokenId> query_ids;  // length == max_query_len
  std::vector<TokenId> code_ids;   // length == max_code_len
  std::size_t query_len = 0;       // valid prefix
  std::size_t code_len = 0;

  SequenceMask query_mask() const { return SequenceMask(query_ids.size(), query_len); }
  SequenceMask code_mask() const { return SequenceMask(code_ids.size(), code_len); }
};

struct DatasetSplit {
  std::vector<std::uint64_t> train;
  std::vector<std::uint64_t> valid;
  std::vector<std::uint64_t> test;
  std::uint64_t seed = 0;
};

/// Reads a line-delimited corpus: one JSON object per line with fields
/// id, query, code and optional language. Throws ParseError naming the
/// line on malformed records, duplicate ids, or empty query/code text.
std::vector<RawPair> load_corpus(const std::string& path);
std::vector<RawPair> parse_corpus(const std::string& text, const std::string& source);

/// Tokenizes and encodes one pair against the two vocabularies: ids for
/// in-vocabulary tokens, UNK otherwise, truncated to the maximum length
/// keeping the prefix, PAD-padded to exactly that length. Returns nullopt
/// when either side tokenizes to nothing (callers count skips).
std::optional<EncodedPair> encode_pair(const RawPair& pair, const TokenVocabulary& code_vocab,
                                       const TokenVocabulary& query_vocab,
                                       std::size_t max_code_len, std::size_t max_query_len);

/// Seeded shuffle followed by a contiguous 75/10/15 cut; train and
/// validation sizes round down, the remainder goes to test.
DatasetSplit split_dataset(const std::vector<std::uint64_t>& corpus_ids, std::uint64_t seed);

}  // namespace cosea
