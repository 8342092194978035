#pragma once

#include <string>
#include <vector>

namespace patchrank {

struct TokenSequence {
  std::string doc_id;
  std::vector<std::string> tokens;
};

/// Lexes source text into word and punctuation tokens. Identifier chains
/// joined by '.' stay whole ("this.bar"), string literals keep their quotes,
/// numeric literals are single tokens, every other non-whitespace character
/// is its own token. Total: an unterminated string literal degrades to
/// per-character tokens for the rest of its line.
std::vector<std::string> tokenize(const std::string& text);

/// Removes every whitespace character (space, tab, CR, LF, ...).
std::string normalize_whitespace(const std::string& text);

}  // namespace patchrank
