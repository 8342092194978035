#include "patchrank/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace patchrank {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

const char* relevance_color(double rel) {
  if (rel >= 2.0) return "#2e7d32";   // syntactic match or better
  if (rel >= 1.0) return "#8bc34a";   // semantic match
  if (rel >= 0.0) return "#9e9e9e";   // uncertain
  return "#c62828";                   // incorrect
}

}  // namespace

void emit_ndcg_chart(const std::vector<EvalResult>& evals, const std::filesystem::path& path) {
  if (evals.empty()) throw std::runtime_error("emit_ndcg_chart: no evaluation results");
  const int bar_w = 48, gap = 24, margin = 60, plot_h = 220, label_h = 40;
  const int n = static_cast<int>(evals.size());
  const int width = 2 * margin + n * (bar_w + gap) - gap;
  const int height = margin + plot_h + label_h;
  const int base_y = margin + plot_h;

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  // y axis with ticks at 0, 0.25, ..., 1
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << base_y << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double frac = t / 4.0;
    const int y = base_y - static_cast<int>(frac * plot_h);
    out << "<line x1=\"" << (margin - 4) << "\" y1=\"" << y << "\" x2=\"" << margin
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (margin - 8) << "\" y=\"" << (y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fixed(frac, 2) << "</text>\n";
  }
  out << "<line x1=\"" << margin << "\" y1=\"" << base_y << "\" x2=\"" << (width - margin + gap)
      << "\" y2=\"" << base_y << "\" stroke=\"black\"/>\n";

  for (int i = 0; i < n; ++i) {
    const EvalResult& e = evals[static_cast<std::size_t>(i)];
    const double value = std::clamp(e.ndcg, 0.0, 1.0);
    const int x = margin + i * (bar_w + gap);
    const int h = static_cast<int>(value * plot_h + 0.5);
    out << "<rect x=\"" << x << "\" y=\"" << (base_y - h) << "\" width=\"" << bar_w
        << "\" height=\"" << h << "\" fill=\"#4878a8\"/>\n";
    out << "<text x=\"" << (x + bar_w / 2) << "\" y=\"" << (base_y - h - 6)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(e.ndcg, 2) << "</text>\n";
    out << "<text x=\"" << (x + bar_w / 2) << "\" y=\"" << (base_y + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << e.bug_id << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_similarity_chart(const RankedList& ranked, const AnnotationSet* annotations,
                           const std::filesystem::path& path) {
  if (ranked.entries.empty()) throw std::runtime_error("emit_similarity_chart: empty ranking");
  const int margin = 60, plot_h = 220, label_h = 40, step = 28;
  const int n = static_cast<int>(ranked.entries.size());
  const int width = 2 * margin + (n - 1) * step + 20;
  const int height = margin + plot_h + label_h;
  const int base_y = margin + plot_h;

  double lo = 0.0, hi = 0.0;
  for (const auto& e : ranked.entries) {
    lo = std::min(lo, e.score);
    hi = std::max(hi, e.score);
  }
  if (hi <= lo) hi = lo + 1.0;
  auto y_of = [&](double score) {
    return base_y - static_cast<int>((score - lo) / (hi - lo) * plot_h + 0.5);
  };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << (margin - 20) << "\" font-size=\"13\">"
      << ranked.bug_id << " (" << to_string(ranked.metric) << ")</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << base_y << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << base_y << "\" x2=\"" << (width - margin + 20)
      << "\" y2=\"" << base_y << "\" stroke=\"black\"/>\n";

  for (int i = 0; i < n; ++i) {
    const RankEntry& e = ranked.entries[static_cast<std::size_t>(i)];
    const int x = margin + 10 + i * step;
    const int y = y_of(e.score);
    const char* color = "#4878a8";
    if (annotations) {
      auto it = annotations->scores.find(e.doc_id);
      if (it != annotations->scores.end()) color = relevance_color(it->second);
    }
    if (e.kind == VariantKind::DeveloperFix) {
      // diamond marks the developer fix
      out << "<path d=\"M" << x << " " << (y - 7) << " L" << (x + 7) << " " << y << " L" << x
          << " " << (y + 7) << " L" << (x - 7) << " " << y
          << " Z\" fill=\"" << color << "\" stroke=\"black\"/>\n";
    } else {
      out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"" << color
          << "\"/>\n";
    }
    out << "<text x=\"" << x << "\" y=\"" << (base_y + 16)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << e.rank << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_summary_csv(const ReportBundle& bundle, const std::filesystem::path& path) {
  for (const auto& eval : bundle.evals) {
    const bool matched = std::any_of(bundle.rankings.begin(), bundle.rankings.end(),
                                     [&](const RankedList& r) { return r.bug_id == eval.bug_id; });
    if (!matched)
      throw std::runtime_error("report: evaluation for " + eval.bug_id + " has no ranking");
  }
  auto out = open_out(path);
  out << "bug_id,candidates,dev_fix_rank,dcg,idcg,ndcg,syntactic_matches\n";
  for (const auto& s : bundle.summaries) {
    out << s.bug_id << "," << s.candidate_count << "," << s.dev_fix_rank << ",";
    auto eval = std::find_if(bundle.evals.begin(), bundle.evals.end(),
                             [&](const EvalResult& e) { return e.bug_id == s.bug_id; });
    if (eval != bundle.evals.end())
      out << fixed(eval->dcg, 6) << "," << fixed(eval->idcg, 6) << "," << fixed(eval->ndcg, 6);
    else
      out << ",,";
    out << "," << s.syntactic_matches << "\n";
  }
}

}  // namespace patchrank
