#include <algorithm>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "kwactor/error.hpp"
#include "kwactor/eval.hpp"
#include "test_support.hpp"

using namespace kwactor;
using kwactor::testing::fixtures_dir;

namespace {

std::vector<std::string> pages(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

TEST(PrecisionRecall, Example) {
  const auto j = JudgmentSet::make("a", {"p1", "p2", "p3", "p4"}, {"p1", "x"});
  const auto pr = precision_recall(j);
  EXPECT_EQ(pr.precision, 0.5);
  EXPECT_EQ(pr.recall, 0.25);
}

TEST(PrecisionRecall, UndefinedWhenListsEmpty) {
  const auto none_retrieved = precision_recall(JudgmentSet::make("a", {"p"}, {}));
  EXPECT_FALSE(none_retrieved.precision);
  EXPECT_EQ(none_retrieved.recall, 0.0);
  const auto none_relevant = precision_recall(JudgmentSet::make("a", {}, {"p"}));
  EXPECT_FALSE(none_relevant.recall);
  EXPECT_EQ(none_relevant.precision, 0.0);
}

TEST(FMeasure, Examples) {
  EXPECT_NEAR(f_measure(0.458, 0.295), 0.359, 5e-4);
  EXPECT_EQ(format_percent(f_measure(0.458, 0.295)), "35.9%");
  EXPECT_EQ(f_measure(0.0, 0.0), 0.0);
  EXPECT_EQ(f_measure(1.0, 1.0), 1.0);
}

TEST(FMeasure, Properties) {
  for (int i = 0; i <= 50; ++i)
    for (int k = 0; k <= 50; ++k) {
      const double p = i / 50.0;
      const double r = k / 50.0;
      const double f = f_measure(p, r);
      EXPECT_LE(f, (p + r) / 2.0 + 1e-15);
      EXPECT_EQ(f > 0.0, p > 0.0 && r > 0.0);
      EXPECT_EQ(f, f_measure(r, p));
    }
}

TEST(Evaluate, AveragesAcrossActors) {
  const auto report = evaluate({JudgmentSet::make("b", pages("p", 4), {"p0"}),
                                JudgmentSet::make("a", pages("p", 4), {"p0", "p1", "p2", "x"})});
  EXPECT_DOUBLE_EQ(report.recall, 0.5);
  EXPECT_DOUBLE_EQ(report.precision, (1.0 + 0.75) / 2.0);
  EXPECT_DOUBLE_EQ(report.f_measure, (f_measure(1.0, 0.25) + f_measure(0.75, 0.75)) / 2.0);
  EXPECT_EQ(report.per_actor.front().actor, "a");
}

TEST(Evaluate, BundledAveragesFixture) {
  const auto report = evaluate(load_judgments(fixtures_dir() / "judgments" / "averages.jsonl"));
  EXPECT_NEAR(report.precision, 0.295, 1e-12);
  EXPECT_NEAR(report.recall, 59.0 / 129.0, 1e-12);
  EXPECT_EQ(format_percent(report.f_measure), "35.9%");
}

TEST(Evaluate, OutcomeHistogram) {
  const auto report = evaluate(load_judgments(fixtures_dir() / "judgments" / "outcomes143.jsonl"));
  EXPECT_EQ(report.outcomes.total, 143u);
  EXPECT_EQ(report.outcomes.no_cluster.count, 8u);
  EXPECT_EQ(report.outcomes.single_cluster.count, 13u);
  EXPECT_EQ(report.outcomes.multi_keyword.count, 122u);
  EXPECT_NEAR(report.outcomes.no_cluster.percent, 5.59, 0.01);
  EXPECT_NEAR(report.outcomes.single_cluster.percent, 9.09, 0.01);
  EXPECT_NEAR(report.outcomes.multi_keyword.percent, 85.32, 0.01);
}

TEST(Evaluate, PermutationInvariant) {
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> n(0, 8);
  for (int round = 0; round < 50; ++round) {
    std::vector<JudgmentSet> js;
    for (int a = 0; a < 6; ++a) {
      auto rel = pages("p", 1 + n(rng));
      auto ret = pages("p", n(rng));
      auto extra = pages("q", n(rng));
      ret.insert(ret.end(), extra.begin(), extra.end());
      js.push_back(JudgmentSet::make("actor" + std::to_string(a), rel, ret));
    }
    const auto base = evaluate(js);
    std::shuffle(js.begin(), js.end(), rng);
    const auto shuffled = evaluate(js);
    EXPECT_EQ(base.to_json(), shuffled.to_json());
  }
}

TEST(Evaluate, IrrelevantPageLowersPrecision) {
  std::mt19937 rng(67);
  std::uniform_int_distribution<int> n(1, 10);
  for (int round = 0; round < 50; ++round) {
    auto rel = pages("p", n(rng));
    auto ret = pages("p", n(rng));
    const auto before = precision_recall(JudgmentSet::make("a", rel, ret));
    ret.push_back("unrelated");
    const auto after = precision_recall(JudgmentSet::make("a", rel, ret));
    if (*before.precision > 0.0) {
      EXPECT_LT(*after.precision, *before.precision);
    } else {
      EXPECT_EQ(*after.precision, 0.0);
    }
    EXPECT_EQ(after.recall, before.recall);
  }
}

TEST(Evaluate, EmptyInput) {
  try {
    evaluate({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyReport);
  }
  EXPECT_THROW(evaluate({JudgmentSet::make("a", {}, {})}), Error);
}

TEST(Evaluate, UndefinedMetricsAreExcluded) {
  const auto report = evaluate({JudgmentSet::make("a", {"p"}, {"p"}),
                                JudgmentSet::make("b", {"p"}, {})});
  EXPECT_EQ(report.precision, 1.0);
  EXPECT_EQ(report.recall, 0.5);
  EXPECT_EQ(report.precision_excluded, 1u);
  EXPECT_EQ(report.f_excluded, 1u);
  EXPECT_NE(report.to_table().find("n/a"), std::string::npos);
}

TEST(PageIds, Canonicalized) {
  EXPECT_EQ(canonicalize_page_id("HTTP://Example.COM/Path?Q=1#frag"),
            "http://example.com/Path?Q=1");
  EXPECT_EQ(canonicalize_page_id("https://Host.org"), "https://host.org");
  EXPECT_EQ(canonicalize_page_id("Doc-42"), "Doc-42");
  const auto j = JudgmentSet::make("a", {"http://A.com/x", "http://a.com/x#top"},
                                   {"HTTP://a.COM/x"});
  EXPECT_EQ(j.relevant.size(), 1u);
  EXPECT_EQ(precision_recall(j).precision, 1.0);
}

TEST(LoadJudgments, ReportsLineOfBadRecord) {
  const auto path = std::filesystem::temp_directory_path() / "kwactor_bad_judgments.jsonl";
  {
    std::ofstream out(path);
    out << R"({"actor":"a","relevant":["p"],"retrieved":["p"]})" << '\n'
        << R"({"actor":"b","relevant":["p"],"retrieved":["p"],"outcome":"maybe"})" << '\n';
  }
  try {
    load_judgments(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(load_judgments(path), Error);
}

TEST(Outcome, RoundTrip) {
  for (auto o : {Outcome::NoCluster, Outcome::SingleCluster, Outcome::MultiKeyword})
    EXPECT_EQ(parse_outcome(to_string(o)), o);
}
