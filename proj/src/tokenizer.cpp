#include "patchrank/tokenizer.hpp"

#include <cctype>

namespace patchrank {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool is_quote(char c) { return c == '\'' || c == '"' || c == '`'; }

// Tokenization is line-local: a token never spans a newline.
void tokenize_line(const std::string& line, std::vector<std::string>& out) {
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    const char c = line[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(line[j])) ++j;
      // dot-joined member chains stay one token: "this.bar", "a.b.c"
      while (j + 1 < n && line[j] == '.' && is_ident_start(line[j + 1])) {
        j += 2;
        while (j < n && is_ident_char(line[j])) ++j;
      }
      out.push_back(line.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i + 1;
      while (j < n && is_digit(line[j])) ++j;
      if (j + 1 < n && line[j] == '.' && is_digit(line[j + 1])) {
        j += 2;
        while (j < n && is_digit(line[j])) ++j;
      }
      out.push_back(line.substr(i, j - i));
      i = j;
      continue;
    }
    if (is_quote(c)) {
      std::size_t j = i + 1;
      while (j < n && line[j] != c) {
        if (line[j] == '\\' && j + 1 < n)
          j += 2;  // escapes pass through verbatim
        else
          ++j;
      }
      if (j < n) {
        out.push_back(line.substr(i, j - i + 1));  // quotes included
        i = j + 1;
        continue;
      }
      // Unterminated literal: per-character emission for the rest of the line.
      for (; i < n; ++i)
        if (!is_space(line[i])) out.push_back(std::string(1, line[i]));
      return;
    }
    out.push_back(std::string(1, c));
    ++i;
  }
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      tokenize_line(text.substr(start), tokens);
      break;
    }
    tokenize_line(text.substr(start, end - start), tokens);
    start = end + 1;
  }
  return tokens;
}

std::string normalize_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text)
    if (!is_space(c)) out.push_back(c);
  return out;
}

}  // namespace patchrank
