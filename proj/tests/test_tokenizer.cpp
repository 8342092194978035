#include <doctest.h>

#include "patchrank/tokenizer.hpp"

using namespace patchrank;

namespace {

std::string concat(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t;
  return out;
}

}  // namespace

TEST_CASE("tokenize: worked example") {
  const auto tokens = tokenize("function foo () { return this.bar; }");
  const std::vector<std::string> expected = {"function", "foo", "(", ")",      "{",
                                             "return",   "this.bar", ";", "}"};
  CHECK(tokens == expected);
}

TEST_CASE("tokenize: empty input") { CHECK(tokenize("").empty()); }

TEST_CASE("tokenize: operators stay per-character, strings stay whole") {
  const auto tokens = tokenize("if (name === \"Math\")");
  const std::vector<std::string> expected = {"if", "(", "name", "=", "=", "=", "\"Math\"", ")"};
  CHECK(tokens == expected);
}

TEST_CASE("tokenize: member chains") {
  CHECK(tokenize("a.b.c") == std::vector<std::string>{"a.b.c"});
  CHECK(tokenize("node.loc.end.line !== x") ==
        std::vector<std::string>{"node.loc.end.line", "!", "=", "=", "x"});
  // a dot not followed by an identifier is punctuation
  CHECK(tokenize("a. b") == std::vector<std::string>{"a", ".", "b"});
}

TEST_CASE("tokenize: numeric literals") {
  CHECK(tokenize("x = 1.5 + 2") == std::vector<std::string>{"x", "=", "1.5", "+", "2"});
  CHECK(tokenize("3.14.15") == std::vector<std::string>{"3.14", ".", "15"});
  CHECK(tokenize(".5") == std::vector<std::string>{".", "5"});
}

TEST_CASE("tokenize: string literal variants") {
  CHECK(tokenize("'a b'") == std::vector<std::string>{"'a b'"});
  CHECK(tokenize("`tpl ${x}`") == std::vector<std::string>{"`tpl ${x}`"});
  CHECK(tokenize("\"esc \\\" q\"") == std::vector<std::string>{"\"esc \\\" q\""});
}

TEST_CASE("tokenize: unterminated string falls back to per-character") {
  CHECK(tokenize("x = \"abc") ==
        std::vector<std::string>{"x", "=", "\"", "a", "b", "c"});
  // the fallback is confined to its line
  CHECK(tokenize("\"ab\ncd") == std::vector<std::string>{"\"", "a", "b", "cd"});
}

TEST_CASE("tokenize: line-local") {
  const std::string l1 = "if (a === 1) {";
  const std::string l2 = "return obj.field;";
  auto joined = tokenize(l1 + "\n" + l2);
  auto separate = tokenize(l1);
  for (const auto& t : tokenize(l2)) separate.push_back(t);
  CHECK(joined == separate);
}

TEST_CASE("tokenize: lossless modulo whitespace") {
  const std::vector<std::string> samples = {
      "function foo () { return this.bar; }",
      "if (name === \"Math\" || name === \"JSON\") {",
      "column:   0,",
      "end.column === line.length));",
      "const s = 'a  b' + `c\td`;",
      "x = \"unterminated",
      "loc: penultimateToken.loc.end,",
      "a.b.c[3.14] !== -0.5;",
  };
  for (const auto& s : samples) {
    CAPTURE(s);
    CHECK(normalize_whitespace(concat(tokenize(s))) == normalize_whitespace(s));
  }
}

TEST_CASE("tokenize: tokens carry no whitespace outside string literals") {
  const auto tokens = tokenize("for (let i = 0; i < n; ++i) { s += 'a b'; }");
  for (const auto& t : tokens) {
    CAPTURE(t);
    CHECK(!t.empty());
    if (t[0] != '\'' && t[0] != '"' && t[0] != '`')
      CHECK(t.find_first_of(" \t\r\n") == std::string::npos);
  }
}

TEST_CASE("normalize_whitespace") {
  CHECK(normalize_whitespace("column:   0") == "column:0");
  CHECK(normalize_whitespace("a b") == "ab");
  CHECK(normalize_whitespace("ab") == "ab");
  CHECK(normalize_whitespace(" \t\r\n") == "");
  // Eslint 47 style: developer "column: 0" vs candidate "column:0"
  CHECK(normalize_whitespace("column: 0") == normalize_whitespace("column:0"));
}

TEST_CASE("normalize_whitespace is idempotent") {
  const std::string s = " a\t b\r\nc ";
  CHECK(normalize_whitespace(normalize_whitespace(s)) == normalize_whitespace(s));
}
