#include "patchrank/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace patchrank {

namespace fs = std::filesystem;

std::string to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::Original: return "original";
    case VariantKind::DeveloperFix: return "developer_fix";
    case VariantKind::Candidate: return "candidate";
  }
  throw std::logic_error("unknown variant kind");
}

VariantKind variant_kind_from_string(const std::string& s) {
  if (s == "original") return VariantKind::Original;
  if (s == "developer_fix") return VariantKind::DeveloperFix;
  if (s == "candidate") return VariantKind::Candidate;
  throw std::runtime_error("unknown variant kind: " + s);
}

std::string original_doc_id(const std::string& bug_id) { return bug_id + "/original"; }
std::string developer_doc_id(const std::string& bug_id) { return bug_id + "/developer"; }
std::string candidate_doc_id(const std::string& bug_id, const std::string& candidate_id) {
  return bug_id + "/" + candidate_id;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    std::string line = end == std::string::npos ? text.substr(start)
                                                : text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return lines;
}

void validate_bug_case(const BugCase& bug) {
  const auto line_count = static_cast<int>(split_lines(bug.original_source).size());
  if (bug.faulty_line < 1 || bug.faulty_line > line_count)
    throw std::runtime_error("bug " + bug.bug_id + ": faulty_line " +
                             std::to_string(bug.faulty_line) + " out of range 1.." +
                             std::to_string(line_count));
  if (bug.candidates.empty())
    throw std::runtime_error("bug " + bug.bug_id + ": no candidates");
  std::set<std::string> ids;
  for (const auto& [id, source] : bug.candidates) {
    (void)source;
    if (id == "original" || id == "developer")
      throw std::runtime_error("bug " + bug.bug_id + ": reserved candidate id '" + id + "'");
    if (!ids.insert(id).second)
      throw std::runtime_error("bug " + bug.bug_id + ": duplicate candidate id '" + id + "'");
  }
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BugCase read_bug_dir(const fs::path& dir) {
  BugCase bug;
  bug.bug_id = dir.filename().string();

  const fs::path meta_path = dir / "meta.json";
  if (!fs::exists(meta_path))
    throw std::runtime_error("bug " + bug.bug_id + ": missing meta.json");
  nlohmann::json meta;
  try {
    std::ifstream in(meta_path);
    meta = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("bug " + bug.bug_id + ": malformed meta.json: " + e.what());
  }
  if (!meta.contains("project") || !meta["project"].is_string())
    throw std::runtime_error("bug " + bug.bug_id + ": meta.json: missing string field 'project'");
  if (!meta.contains("faulty_line") || !meta["faulty_line"].is_number_integer())
    throw std::runtime_error("bug " + bug.bug_id +
                             ": meta.json: missing integer field 'faulty_line'");
  bug.project = meta["project"].get<std::string>();
  bug.faulty_line = meta["faulty_line"].get<int>();

  const fs::path original = dir / "original.js";
  const fs::path developer = dir / "developer.js";
  if (!fs::exists(original))
    throw std::runtime_error("bug " + bug.bug_id + ": missing original.js");
  if (!fs::exists(developer))
    throw std::runtime_error("bug " + bug.bug_id + ": missing developer.js");
  bug.original_source = read_file(original);
  bug.developer_fix_source = read_file(developer);

  const fs::path cand_dir = dir / "candidates";
  if (!fs::is_directory(cand_dir))
    throw std::runtime_error("bug " + bug.bug_id + ": missing candidates directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cand_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".js")
      files.push_back(entry.path());
  if (files.empty())
    throw std::runtime_error("bug " + bug.bug_id + ": empty candidates directory");
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    bug.candidates.emplace_back(f.stem().string(), read_file(f));

  const fs::path ann = dir / "annotations.json";
  if (fs::exists(ann)) bug.annotation_ref = ann;

  validate_bug_case(bug);
  return bug;
}

}  // namespace

IngestOutcome ingest_corpus_lenient(const fs::path& root, int radius) {
  if (radius < 0) throw std::runtime_error("radius must be non-negative");
  if (!fs::is_directory(root))
    throw std::runtime_error("corpus root does not exist: " + root.string());
  IngestOutcome outcome;
  outcome.manifest.root = root;
  outcome.manifest.radius = radius;
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    try {
      outcome.manifest.bugs.push_back(read_bug_dir(dir));
    } catch (const std::exception& e) {
      outcome.errors.push_back(e.what());
    }
  }
  return outcome;
}

CorpusManifest ingest_corpus(const fs::path& root, int radius) {
  IngestOutcome outcome = ingest_corpus_lenient(root, radius);
  if (!outcome.errors.empty()) throw std::runtime_error(outcome.errors.front());
  return std::move(outcome.manifest);
}

SnippetWindow extract_snippet(const std::string& source, int center_line, int radius,
                              const std::string& doc_id, VariantKind kind) {
  if (radius < 0) throw std::runtime_error("radius must be non-negative");
  const std::vector<std::string> lines = split_lines(source);
  const int count = static_cast<int>(lines.size());
  if (center_line < 1 || center_line > count)
    throw std::runtime_error(doc_id + ": center line " + std::to_string(center_line) +
                             " out of range 1.." + std::to_string(count));
  const int first = std::max(1, center_line - radius);
  const int last = std::min(count, center_line + radius);
  std::string text;
  for (int i = first; i <= last; ++i) {
    if (i > first) text.push_back('\n');
    text += lines[static_cast<std::size_t>(i - 1)];
  }
  return SnippetWindow{doc_id, kind, center_line, first, std::move(text)};
}

int locate_patched_line(const std::string& original_source, const std::string& patched_source,
                        int faulty_line) {
  const std::vector<std::string> a = split_lines(original_source);
  const std::vector<std::string> b = split_lines(patched_source);
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i)
    if (a[i] != b[i]) return static_cast<int>(i) + 1;
  if (a.size() != b.size()) return static_cast<int>(common) + 1;
  return faulty_line;
}

std::vector<SnippetWindow> bug_snippets(const BugCase& bug, int radius) {
  std::vector<SnippetWindow> windows;
  windows.push_back(extract_snippet(bug.original_source, bug.faulty_line, radius,
                                    original_doc_id(bug.bug_id), VariantKind::Original));

  auto patched_center = [&](const std::string& patched) {
    int center = locate_patched_line(bug.original_source, patched, bug.faulty_line);
    const int count = static_cast<int>(split_lines(patched).size());
    return std::clamp(center, 1, std::max(1, count));
  };

  windows.push_back(extract_snippet(bug.developer_fix_source,
                                    patched_center(bug.developer_fix_source), radius,
                                    developer_doc_id(bug.bug_id), VariantKind::DeveloperFix));
  for (const auto& [id, source] : bug.candidates)
    windows.push_back(extract_snippet(source, patched_center(source), radius,
                                      candidate_doc_id(bug.bug_id, id),
                                      VariantKind::Candidate));
  return windows;
}

}  // namespace patchrank
