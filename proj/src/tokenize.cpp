#include "cosea/tokenize.hpp"

#include <cctype>

#include "cosea/errors.hpp"

namespace cosea {

namespace {

enum class CharClass { kSpace, kWord, kPunct };

// Decodes one UTF-8 codepoint starting at `i`, advancing it. Invalid bytes
// decode as U+FFFD and consume a single byte.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned char b0 = byte(i);
  std::size_t len;
  char32_t cp;
  if (b0 < 0x80) {
    len = 1;
    cp = b0;
  } else if ((b0 >> 5) == 0x6) {
    len = 2;
    cp = b0 & 0x1f;
  } else if ((b0 >> 4) == 0xe) {
    len = 3;
    cp = b0 & 0x0f;
  } else if ((b0 >> 3) == 0x1e) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xfffd;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xfffd;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = byte(i + k);
    if ((b >> 6) != 0x2) {
      ++i;
      return 0xfffd;
    }
    cp = (cp << 6) | (b & 0x3f);
  }
  i += len;
  return cp;
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d: case 0x20:
    case 0x85: case 0xa0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202f: case 0x205f: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200a;
  }
}

// Non-ASCII, non-space codepoints count as word characters; only ASCII
// punctuation acts as a boundary.
CharClass classify(char32_t cp, bool underscore_is_word) {
  if (is_unicode_space(cp)) return CharClass::kSpace;
  if (cp < 0x80) {
    if (std::isalnum(static_cast<int>(cp))) return CharClass::kWord;
    if (cp == '_' && underscore_is_word) return CharClass::kWord;
    return CharClass::kPunct;
  }
  return cp == 0xfffd ? CharClass::kPunct : CharClass::kWord;
}

void append_codepoint_lower(std::string& out, char32_t cp, std::string_view src,
                            std::size_t start, std::size_t end) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(std::tolower(static_cast<int>(cp))));
  } else {
    out.append(src.substr(start, end - start));
  }
}

bool is_upper(char32_t cp) { return cp < 0x80 && std::isupper(static_cast<int>(cp)); }
bool is_lower_or_digit(char32_t cp) {
  return cp < 0x80 && (std::islower(static_cast<int>(cp)) || std::isdigit(static_cast<int>(cp)));
}

// Splits one identifier-like run at underscores and camelCase boundaries,
// lowercasing the pieces. `word` is given as decoded codepoints plus the
// byte span of each in the original text.
void split_identifier(std::string_view src, const std::vector<char32_t>& cps,
                      const std::vector<std::pair<std::size_t, std::size_t>>& spans,
                      std::vector<std::string>& out) {
  std::string piece;
  const auto flush = [&] {
    if (!piece.empty()) {
      out.push_back(piece);
      piece.clear();
    }
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] == '_') {
      flush();
      continue;
    }
    const bool camel_start =
        i > 0 && is_upper(cps[i]) &&
        (is_lower_or_digit(cps[i - 1]) ||
         (is_upper(cps[i - 1]) && i + 1 < cps.size() && is_lower_or_digit(cps[i + 1])));
    if (camel_start) flush();
    append_codepoint_lower(piece, cps[i], src, spans[i].first, spans[i].second);
  }
  flush();
}

}  // namespace

std::vector<std::string> tokenize_query(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = next_codepoint(text, i);
    if (classify(cp, /*underscore_is_word=*/false) == CharClass::kWord) {
      append_codepoint_lower(current, cp, text, start, i);
    } else if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(current);
  if (tokens.empty()) throw EmptySequenceError("tokenize_query: no tokens in input");
  return tokens;
}

std::vector<std::string> tokenize_code(std::string_view text) {
  std::vector<std::string> tokens;
  std::vector<char32_t> word;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  const auto flush_word = [&] {
    if (!word.empty()) {
      split_identifier(text, word, spans, tokens);
      word.clear();
      spans.clear();
    }
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    const char32_t cp = next_codepoint(text, i);
    switch (classify(cp, /*underscore_is_word=*/true)) {
      case CharClass::kWord:
        word.push_back(cp);
        spans.emplace_back(start, i);
        break;
      case CharClass::kSpace:
        flush_word();
        break;
      case CharClass::kPunct:
        flush_word();
        tokens.emplace_back(text.substr(start, i - start));
        break;
    }
  }
  flush_word();
  if (tokens.empty()) throw EmptySequenceError("tokenize_code: no tokens in input");
  return tokens;
}

}  // namespace cosea
