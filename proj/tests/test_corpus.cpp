#include <doctest.h>

#include <string>
#include <vector>

#include "patchrank/corpus.hpp"
#include "test_util.hpp"

using namespace patchrank;
using testutil::TempDir;
using testutil::write_bug;
using testutil::write_file;

namespace {

std::string numbered_lines(int count) {
  std::string text;
  for (int i = 1; i <= count; ++i) text += "line " + std::to_string(i) + "\n";
  return text;
}

}  // namespace

TEST_CASE("split_lines") {
  CHECK(split_lines("a\nb\n") == std::vector<std::string>{"a", "b"});
  CHECK(split_lines("a\nb") == std::vector<std::string>{"a", "b"});
  CHECK(split_lines("a\r\nb\r\n") == std::vector<std::string>{"a", "b"});
  CHECK(split_lines("").empty());
}

TEST_CASE("extract_snippet: interior window") {
  const auto w = extract_snippet(numbered_lines(10), 5, 3, "d", VariantKind::Original);
  CHECK(w.first_line == 2);
  CHECK(split_lines(w.text).size() == 7);
  CHECK(split_lines(w.text).front() == "line 2");
  CHECK(split_lines(w.text).back() == "line 8");
}

TEST_CASE("extract_snippet: clamped at start") {
  const auto w = extract_snippet(numbered_lines(10), 2, 3, "d", VariantKind::Original);
  CHECK(w.first_line == 1);
  CHECK(split_lines(w.text).size() == 5);
  CHECK(split_lines(w.text).back() == "line 5");
}

TEST_CASE("extract_snippet: single-line file") {
  const auto w = extract_snippet("only\n", 1, 3, "d", VariantKind::Original);
  CHECK(w.text == "only");
}

TEST_CASE("extract_snippet: radius 0 is the center line") {
  const auto w = extract_snippet(numbered_lines(10), 4, 0, "d", VariantKind::Original);
  CHECK(w.text == "line 4");
}

TEST_CASE("extract_snippet: center out of range") {
  CHECK_THROWS(extract_snippet(numbered_lines(10), 0, 3, "d", VariantKind::Original));
  CHECK_THROWS(extract_snippet(numbered_lines(10), 11, 3, "d", VariantKind::Original));
}

TEST_CASE("extract_snippet: idempotent in content") {
  const std::string source = numbered_lines(10);
  const auto w = extract_snippet(source, 5, 3, "d", VariantKind::Original);
  const int adjusted_center = w.center_line - w.first_line + 1;
  const auto again = extract_snippet(w.text, adjusted_center, 3, "d", VariantKind::Original);
  CHECK(again.text == w.text);
}

TEST_CASE("locate_patched_line") {
  const std::string base = numbered_lines(10);
  SUBCASE("identical files return the faulty line") {
    for (int k = 1; k <= 10; ++k) CHECK(locate_patched_line(base, base, k) == k);
  }
  SUBCASE("single differing line") {
    std::string patched = base;
    patched.replace(patched.find("line 7"), 6, "fixed!");
    CHECK(locate_patched_line(base, patched, 3) == 7);
  }
  SUBCASE("deleted line diverges at the deletion point") {
    // remove line 7 entirely
    std::string patched;
    for (int i = 1; i <= 10; ++i)
      if (i != 7) patched += "line " + std::to_string(i) + "\n";
    CHECK(locate_patched_line(base, patched, 7) == 7);
  }
}

TEST_CASE("ingest_corpus: fixture with one bug") {
  TempDir tmp("ingest");
  write_bug(tmp.path(), "bug1", 2, "a\nb\nc\n", "a\nB\nc\n",
            {{"c1", "a\nx\nc\n"}, {"c2", "a\ny\nc\n"}});
  const auto manifest = ingest_corpus(tmp.path(), 3);
  REQUIRE(manifest.bugs.size() == 1);
  const auto& bug = manifest.bugs[0];
  CHECK(bug.bug_id == "bug1");
  CHECK(bug.project == "test");
  CHECK(bug.faulty_line == 2);
  REQUIRE(bug.candidates.size() == 2);
  CHECK(bug.candidates[0].first == "c1");
  CHECK(bug.candidates[1].first == "c2");
  CHECK(!bug.annotation_ref.has_value());
}

TEST_CASE("ingest_corpus: missing files are hard errors naming the bug") {
  SUBCASE("missing developer.js") {
    TempDir tmp("ingest");
    write_bug(tmp.path(), "bugX", 1, "a\n", "a\n", {{"c1", "b\n"}});
    std::filesystem::remove(tmp.path() / "bugX" / "developer.js");
    CHECK_THROWS_WITH_AS(static_cast<void>(ingest_corpus(tmp.path(), 3)),
                         doctest::Contains("bugX"), std::runtime_error);
  }
  SUBCASE("empty candidates directory") {
    TempDir tmp("ingest");
    write_bug(tmp.path(), "bugY", 1, "a\n", "a\n", {{"c1", "b\n"}});
    std::filesystem::remove(tmp.path() / "bugY" / "candidates" / "c1.js");
    CHECK_THROWS_WITH_AS(static_cast<void>(ingest_corpus(tmp.path(), 3)),
                         doctest::Contains("candidates"), std::runtime_error);
  }
  SUBCASE("malformed meta.json") {
    TempDir tmp("ingest");
    write_bug(tmp.path(), "bugZ", 1, "a\n", "a\n", {{"c1", "b\n"}});
    write_file(tmp.path() / "bugZ" / "meta.json", "{not json");
    CHECK_THROWS_WITH_AS(static_cast<void>(ingest_corpus(tmp.path(), 3)),
                         doctest::Contains("meta.json"), std::runtime_error);
  }
  SUBCASE("meta.json missing field") {
    TempDir tmp("ingest");
    write_bug(tmp.path(), "bugW", 1, "a\n", "a\n", {{"c1", "b\n"}});
    write_file(tmp.path() / "bugW" / "meta.json", "{\"project\": \"p\"}");
    CHECK_THROWS_WITH_AS(static_cast<void>(ingest_corpus(tmp.path(), 3)),
                         doctest::Contains("faulty_line"), std::runtime_error);
  }
}

TEST_CASE("validate_bug_case: duplicate candidate id") {
  BugCase bug;
  bug.bug_id = "dup";
  bug.original_source = "a\n";
  bug.faulty_line = 1;
  bug.developer_fix_source = "b\n";
  bug.candidates = {{"c1", "x\n"}, {"c1", "y\n"}};
  CHECK_THROWS_WITH_AS(validate_bug_case(bug), doctest::Contains("duplicate candidate id"),
                       std::runtime_error);
}

TEST_CASE("ingest_corpus: candidate counts of a ten-bug layout") {
  // Mirrors the shape of a published bug corpus: ten bugs with these
  // candidate counts, 465 candidates in total.
  const std::vector<int> counts = {4, 3, 3, 7, 14, 12, 4, 221, 5, 192};
  TempDir tmp("replica");
  for (std::size_t b = 0; b < counts.size(); ++b) {
    std::map<std::string, std::string> candidates;
    for (int c = 0; c < counts[b]; ++c)
      candidates.emplace("p" + std::to_string(c), "var x = " + std::to_string(c) + ";\n");
    char name[16];
    std::snprintf(name, sizeof(name), "bug%02zu", b);
    write_bug(tmp.path(), name, 1, "var x = -1;\n", "var x = 42;\n", candidates);
  }
  const auto manifest = ingest_corpus(tmp.path(), 3);
  REQUIRE(manifest.bugs.size() == 10);
  int total = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    CHECK(static_cast<int>(manifest.bugs[b].candidates.size()) == counts[b]);
    total += static_cast<int>(manifest.bugs[b].candidates.size());
  }
  CHECK(total == 465);
}

TEST_CASE("bug_snippets: one window per variant, patched centers relocated") {
  BugCase bug;
  bug.bug_id = "b";
  bug.faulty_line = 5;
  bug.original_source = numbered_lines(10);
  // developer deletes line 5
  for (int i = 1; i <= 10; ++i)
    if (i != 5) bug.developer_fix_source += "line " + std::to_string(i) + "\n";
  std::string cand = bug.original_source;
  cand.replace(cand.find("line 8"), 6, "patch!");
  bug.candidates = {{"c1", cand}};

  const auto windows = bug_snippets(bug, 3);
  REQUIRE(windows.size() == 3);
  CHECK(windows[0].variant_kind == VariantKind::Original);
  CHECK(windows[0].center_line == 5);
  CHECK(windows[1].variant_kind == VariantKind::DeveloperFix);
  CHECK(windows[1].center_line == 5);  // first divergent line
  CHECK(windows[2].variant_kind == VariantKind::Candidate);
  CHECK(windows[2].center_line == 8);
  CHECK(windows[2].doc_id == "b/c1");
}
