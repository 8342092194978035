#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace patchrank {

enum class VariantKind { Original, DeveloperFix, Candidate };

std::string to_string(VariantKind kind);
VariantKind variant_kind_from_string(const std::string& s);

/// One bug from the corpus: the faulty file, the developer's fix and all
/// plausible candidate patches, as full file texts.
struct BugCase {
  std::string bug_id;
  std::string project;
  std::string original_source;
  int faulty_line = 1;  // 1-based
  std::string developer_fix_source;
  std::vector<std::pair<std::string, std::string>> candidates;  // (id, source)
  std::optional<std::filesystem::path> annotation_ref;
};

/// The code fragment around a (possibly patched) faulty line that gets
/// embedded as one document.
struct SnippetWindow {
  std::string doc_id;
  VariantKind variant_kind = VariantKind::Original;
  int center_line = 1;  // 1-based
  int first_line = 1;   // 1-based
  std::string text;
};

struct CorpusManifest {
  std::filesystem::path root;
  int radius = 3;
  std::vector<BugCase> bugs;
};

// doc_id scheme: "<bug_id>/original", "<bug_id>/developer", "<bug_id>/<cid>"
std::string original_doc_id(const std::string& bug_id);
std::string developer_doc_id(const std::string& bug_id);
std::string candidate_doc_id(const std::string& bug_id, const std::string& candidate_id);

// Splits on LF; a trailing CR is stripped per line. A final newline does not
// produce an extra empty line.
std::vector<std::string> split_lines(const std::string& text);

void validate_bug_case(const BugCase& bug);

CorpusManifest ingest_corpus(const std::filesystem::path& root, int radius = 3);

struct IngestOutcome {
  CorpusManifest manifest;              // valid bugs only
  std::vector<std::string> errors;      // one message per broken bug directory
};

/// Like ingest_corpus, but a broken bug directory is recorded instead of
/// aborting the remaining bugs.
IngestOutcome ingest_corpus_lenient(const std::filesystem::path& root, int radius = 3);

SnippetWindow extract_snippet(const std::string& source, int center_line, int radius,
                              const std::string& doc_id, VariantKind kind);

// First 1-based line where the two sources differ; faulty_line when equal.
int locate_patched_line(const std::string& original_source, const std::string& patched_source,
                        int faulty_line);

// All windows of one bug: the original centered on the faulty line, patched
// variants centered on their first divergent line (clamped into range).
std::vector<SnippetWindow> bug_snippets(const BugCase& bug, int radius);

}  // namespace patchrank
