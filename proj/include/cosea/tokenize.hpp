#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cosea {

/// Lowercases and splits natural-language text on whitespace and
/// punctuation boundaries. Punctuation never appears in the output.
/// Throws EmptySequenceError when nothing survives.
std::vector<std::string> tokenize_query(std::string_view text);

/// Source-code tokenizer: splits on whitespace, emits every operator or
/// punctuation character as its own token, splits identifiers at
/// underscores and camelCase boundaries, and lowercases the pieces.
/// Throws EmptySequenceError when nothing survives.
std::vector<std::string> tokenize_code(std::string_view text);

}  // namespace cosea
