#include "cosea/pretrained.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cosea/errors.hpp"

namespace cosea {

PretrainedLoadResult load_pretrained_embeddings(const std::string& path,
                                                const TokenVocabulary& vocab,
                                                std::optional<std::size_t> expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);

  const auto fail = [&](std::size_t line_no, const std::string& why) -> ParseError {
    return ParseError(path + ":" + std::to_string(line_no) + ": " + why);
  };

  std::string line;
  if (!std::getline(in, line)) throw fail(1, "missing header line");
  std::istringstream header(line);
  std::size_t count = 0, dim = 0;
  if (!(header >> count >> dim) || dim == 0) {
    throw fail(1, "expected header \"V D\", got \"" + line + "\"");
  }
  std::string extra;
  if (header >> extra) throw fail(1, "trailing content after header");
  if (expected_dim && dim != *expected_dim) {
    throw ConfigError(path + ": vector dimension " + std::to_string(dim) +
                      " does not match configured dimension " + std::to_string(*expected_dim));
  }

  PretrainedLoadResult result;
  result.embeddings.dim = dim;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string token;
    if (!(row >> token)) throw fail(line_no, "missing token");
    std::vector<double> vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(row >> vec[i])) {
        throw fail(line_no, "expected " + std::to_string(dim) + " floats for token \"" + token +
                                "\"");
      }
      if (!std::isfinite(vec[i])) throw fail(line_no, "non-finite value for token \"" + token + "\"");
    }
    if (row >> extra) throw fail(line_no, "trailing content after " + std::to_string(dim) + " floats");
    ++result.file_vectors;
    if (vocab.id(token) != TokenVocabulary::kUnk) {
      result.embeddings.vectors[token] = std::move(vec);
    }
  }
  if (result.file_vectors != count) {
    throw fail(line_no, "header declared " + std::to_string(count) + " vectors but file has " +
                            std::to_string(result.file_vectors));
  }

  result.found = result.embeddings.vectors.size();
  const std::size_t vocab_tokens = vocab.tokens().size();
  result.coverage =
      vocab_tokens == 0 ? 0.0 : static_cast<double>(result.found) / static_cast<double>(vocab_tokens);
  return result;
}

}  // namespace cosea
