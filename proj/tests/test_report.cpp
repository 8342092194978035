#include <doctest.h>

#include <sstream>
#include <vector>

#include "patchrank/report.hpp"
#include "test_util.hpp"

using namespace patchrank;
using testutil::TempDir;

namespace {

EvalResult eval_of(const std::string& bug_id, double dcg_v, double idcg_v) {
  EvalResult e;
  e.bug_id = bug_id;
  e.p = 3;
  e.dcg = dcg_v;
  e.idcg = idcg_v;
  e.ndcg = idcg_v > 0 ? dcg_v / idcg_v : 0.0;
  return e;
}

RankedList list_of(const std::string& bug_id, int candidates) {
  RankedList list;
  list.bug_id = bug_id;
  list.entries.push_back({bug_id + "/developer", VariantKind::DeveloperFix, 0.9, 1});
  for (int i = 0; i < candidates; ++i)
    list.entries.push_back({bug_id + "/c" + std::to_string(i), VariantKind::Candidate,
                            0.8 - 0.1 * i, i + 2});
  return list;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("emit_summary_csv") {
  TempDir tmp("csv");
  const auto path = tmp.path() / "ndcg.csv";
  SUBCASE("empty bundle is header-only") {
    emit_summary_csv(ReportBundle{}, path);
    const auto lines = csv_lines(testutil::read_file(path));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == "bug_id,candidates,dev_fix_rank,dcg,idcg,ndcg,syntactic_matches");
  }
  SUBCASE("one bug gives a two-line csv, metrics to six decimals") {
    ReportBundle bundle;
    bundle.rankings.push_back(list_of("b1", 2));
    bundle.evals.push_back(eval_of("b1", 8.184535, 8.642789));
    bundle.summaries.push_back({"b1", 2, 1, 1, true});
    emit_summary_csv(bundle, path);
    const auto lines = csv_lines(testutil::read_file(path));
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "b1,2,1,8.184535,8.642789,0.946978,1");
  }
  SUBCASE("unevaluated bug leaves metric fields empty") {
    ReportBundle bundle;
    bundle.rankings.push_back(list_of("b1", 1));
    bundle.summaries.push_back({"b1", 1, 1, 0, false});
    emit_summary_csv(bundle, path);
    const auto lines = csv_lines(testutil::read_file(path));
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "b1,1,1,,,,0");
  }
  SUBCASE("eval without matching ranking is rejected") {
    ReportBundle bundle;
    bundle.evals.push_back(eval_of("ghost", 1, 1));
    CHECK_THROWS(emit_summary_csv(bundle, path));
  }
}

TEST_CASE("csv numeric fields round-trip at printed precision") {
  TempDir tmp("csv");
  ReportBundle bundle;
  bundle.rankings.push_back(list_of("b1", 2));
  const EvalResult e = eval_of("b1", 3.9165081776, 6.6845351232);
  bundle.evals.push_back(e);
  bundle.summaries.push_back({"b1", 2, 2, 0, true});
  const auto path = tmp.path() / "ndcg.csv";
  emit_summary_csv(bundle, path);
  const auto lines = csv_lines(testutil::read_file(path));
  REQUIRE(lines.size() == 2);
  std::istringstream row(lines[1]);
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(row, field, ',')) fields.push_back(field);
  REQUIRE(fields.size() == 7);
  CHECK(std::abs(std::stod(fields[3]) - e.dcg) < 5e-7);
  CHECK(std::abs(std::stod(fields[4]) - e.idcg) < 5e-7);
  CHECK(std::abs(std::stod(fields[5]) - e.ndcg) < 5e-7);
}

TEST_CASE("emit_ndcg_chart") {
  TempDir tmp("chart");
  const auto path = tmp.path() / "ndcg.svg";
  SUBCASE("two bars at the given heights") {
    emit_ndcg_chart({eval_of("b1", 1, 1), eval_of("b2", 1, 2)}, path);
    const auto svg = testutil::read_file(path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find(">1.00<") != std::string::npos);
    CHECK(svg.find(">0.50<") != std::string::npos);
    CHECK(svg.find(">b1<") != std::string::npos);
    CHECK(svg.find(">b2<") != std::string::npos);
  }
  SUBCASE("single bar") {
    emit_ndcg_chart({eval_of("only", 2, 4)}, path);
    const auto svg = testutil::read_file(path);
    CHECK(svg.find(">only<") != std::string::npos);
  }
  SUBCASE("empty input rejected") { CHECK_THROWS(emit_ndcg_chart({}, path)); }
  SUBCASE("deterministic bytes") {
    emit_ndcg_chart({eval_of("b1", 1, 2)}, tmp.path() / "a.svg");
    emit_ndcg_chart({eval_of("b1", 1, 2)}, tmp.path() / "b.svg");
    CHECK(testutil::read_file(tmp.path() / "a.svg") == testutil::read_file(tmp.path() / "b.svg"));
  }
}

TEST_CASE("emit_similarity_chart") {
  TempDir tmp("chart");
  const auto path = tmp.path() / "b1.svg";
  SUBCASE("single entry") {
    RankedList list;
    list.bug_id = "b1";
    list.entries.push_back({"b1/developer", VariantKind::DeveloperFix, 0.9, 1});
    emit_similarity_chart(list, nullptr, path);
    CHECK(testutil::read_file(path).find("<path") != std::string::npos);  // diamond marker
  }
  SUBCASE("relevance-colored markers") {
    const auto list = list_of("b1", 2);
    AnnotationSet ann{"b1", "t", {{"b1/developer", 3}, {"b1/c0", 2}, {"b1/c1", -1}}};
    emit_similarity_chart(list, &ann, path);
    const auto svg = testutil::read_file(path);
    CHECK(svg.find("#2e7d32") != std::string::npos);  // high relevance
    CHECK(svg.find("#c62828") != std::string::npos);  // incorrect
  }
  SUBCASE("deterministic bytes") {
    const auto list = list_of("b1", 3);
    emit_similarity_chart(list, nullptr, tmp.path() / "a.svg");
    emit_similarity_chart(list, nullptr, tmp.path() / "b.svg");
    CHECK(testutil::read_file(tmp.path() / "a.svg") == testutil::read_file(tmp.path() / "b.svg"));
  }
  SUBCASE("empty ranking rejected") {
    CHECK_THROWS(emit_similarity_chart(RankedList{}, nullptr, path));
  }
}
