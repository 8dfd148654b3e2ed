#include "cosea/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "cosea/errors.hpp"
#include "cosea/rng.hpp"
#include "cosea/serialize.hpp"
#include "cosea/tokenize.hpp"

namespace cosea {

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::vector<RawPair> parse_corpus(const std::string& text, const std::string& source) {
  std::vector<RawPair> pairs;
  std::unordered_set<std::uint64_t> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (blank(line)) {
      if (end == text.size()) break;
      continue;
    }

    const auto fail = [&](const std::string& why) -> ParseError {
      return ParseError(source + ":" + std::to_string(line_no) + ": " + why);
    };

    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) throw fail("not a JSON object");
    if (!record.contains("id") || !record["id"].is_number_unsigned()) {
      throw fail("missing or invalid 'id' (expected non-negative integer)");
    }
    if (!record.contains("query") || !record["query"].is_string()) {
      throw fail("missing or invalid 'query'");
    }
    if (!record.contains("code") || !record["code"].is_string()) {
      throw fail("missing or invalid 'code'");
    }

    RawPair pair;
    pair.id = record["id"].get<std::uint64_t>();
    pair.query = record["query"].get<std::string>();
    pair.code = record["code"].get<std::string>();
    if (record.contains("language") && record["language"].is_string()) {
      pair.language = record["language"].get<std::string>();
    }
    if (blank(pair.query)) throw fail("empty query");
    if (blank(pair.code)) throw fail("empty code");
    if (!seen.insert(pair.id).second) {
      throw fail("duplicate id " + std::to_string(pair.id));
    }
    pairs.push_back(std::move(pair));
    if (end == text.size()) break;
  }
  return pairs;
}

std::vector<RawPair> load_corpus(const std::string& path) {
  return parse_corpus(io::read_file(path), path);
}

namespace {

std::vector<TokenId> encode_tokens(const std::vector<std::string>& tokens,
                                   const TokenVocabulary& vocab, std::size_t max_len,
                                   std::size_t& valid_len) {
  valid_len = std::min(tokens.size(), max_len);
  std::vector<TokenId> ids(max_len, TokenVocabulary::kPad);
  for (std::size_t i = 0; i < valid_len; ++i) ids[i] = vocab.id(tokens[i]);
  return ids;
}

}  // namespace

std::optional<EncodedPair> encode_pair(const RawPair& pair, const TokenVocabulary& code_vocab,
                                       const TokenVocabulary& query_vocab,
                                       std::size_t max_code_len, std::size_t max_query_len) {
  std::vector<std::string> query_tokens, code_tokens;
  try {
    query_tokens = tokenize_query(pair.query);
    code_tokens = tokenize_code(pair.code);
  } catch (const EmptySequenceError&) {
    return std::nullopt;
  }

  EncodedPair enc;
  enc.id = pair.id;
  enc.query_ids = encode_tokens(query_tokens, query_vocab, max_query_len, enc.query_len);
  enc.code_ids = encode_tokens(code_tokens, code_vocab, max_code_len, enc.code_len);
  return enc;
}

DatasetSplit split_dataset(const std::vector<std::uint64_t>& corpus_ids, std::uint64_t seed) {
  if (corpus_ids.empty()) throw ConfigError("split_dataset: empty corpus");

  std::vector<std::uint64_t> ids = corpus_ids;
  Rng rng(Rng::mix(seed, "split"));
  rng.shuffle(ids);

  const std::size_t n = ids.size();
  const std::size_t n_train = n * 75 / 100;
  const std::size_t n_valid = n * 10 / 100;

  DatasetSplit split;
  split.seed = seed;
  split.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.valid.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train),
                     ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid));
  split.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_valid), ids.end());
  return split;
}

}  // namespace cosea
