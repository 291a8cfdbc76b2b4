#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kwactor/error.hpp"
#include "kwactor/weighting.hpp"
#include "test_support.hpp"

using namespace kwactor;
using kwactor::testing::corpus_of;
using kwactor::testing::oracle_tfidf;
using kwactor::testing::random_docs;

namespace {

std::vector<std::string> repeat(const std::string& w, int n, const std::string& pad, int len) {
  std::vector<std::string> out(static_cast<std::size_t>(n), w);
  while (static_cast<int>(out.size()) < len) out.push_back(pad);
  return out;
}

}  // namespace

TEST(TermFrequency, AbsentWordIsZero) {
  const auto c = corpus_of({{"a", "b"}, {"c"}});
  EXPECT_EQ(term_frequency("zzz", c), 0.0);
}

TEST(TermFrequency, SingleOccurrenceInFiftyTokens) {
  const auto c = corpus_of({repeat("network", 1, "x", 50)});
  EXPECT_DOUBLE_EQ(term_frequency("network", c), 0.02);
}

TEST(TermFrequency, PerSnippetDenominator) {
  // 2/10 + 1/40, counted by hand.
  const auto c = corpus_of({repeat("w", 2, "x", 10), repeat("w", 1, "y", 40)});
  EXPECT_NEAR(term_frequency("w", c), 0.225, 1e-15);
}

TEST(TermFrequency, EmptyCorpusIsUndefined) {
  const SnippetCorpus empty(ActorRef("x"), {});
  try {
    term_frequency("w", empty);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedStatistic);
  }
}

TEST(InverseDocumentFrequency, Values) {
  std::vector<std::vector<std::string>> docs(100, std::vector<std::string>{"common"});
  for (int i = 0; i < 10; ++i) docs[static_cast<std::size_t>(i)].push_back("rare");
  const auto c = corpus_of(docs);
  EXPECT_EQ(inverse_document_frequency("common", c), 0.0);
  EXPECT_NEAR(inverse_document_frequency("rare", c), 2.302585, 1e-6);
  EXPECT_NEAR(inverse_document_frequency("rare", c, 10.0), 1.0, 1e-12);
  try {
    inverse_document_frequency("absent", c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedStatistic);
  }
}

TEST(InverseDocumentFrequency, MatchesRecount) {
  std::mt19937 rng(11);
  for (int round = 0; round < 50; ++round) {
    const auto docs = random_docs(rng);
    const auto c = corpus_of(docs);
    for (const auto& [word, expected] : oracle_tfidf(docs)) {
      const double tf = term_frequency(word, c);
      EXPECT_NEAR(tf * inverse_document_frequency(word, c), expected, 1e-9);
    }
  }
}

TEST(TermStatistics, MatchesOracle) {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    const auto docs = random_docs(rng);
    const auto expected = oracle_tfidf(docs);
    const auto stats = term_statistics(corpus_of(docs));
    ASSERT_EQ(stats.size(), expected.size());
    for (const auto& t : stats) {
      EXPECT_NEAR(t.tfidf, expected.at(t.word), 1e-9);
      EXPECT_LE(t.df, docs.size());
      EXPECT_EQ(t.tf > 0.0, t.df > 0);
      EXPECT_GE(t.v, 0.0);
      EXPECT_LE(t.v, 1.0);
    }
  }
}

TEST(CandidateWords, TopWordHasUnitWeight) {
  std::mt19937 rng(3);
  for (int round = 0; round < 100; ++round) {
    const auto set = candidate_words(corpus_of(random_docs(rng)));
    if (set.empty()) {
      EXPECT_FALSE(set.warnings.empty());
      continue;
    }
    EXPECT_EQ(set.candidates.front().v, 1.0);
    for (std::size_t i = 1; i < set.candidates.size(); ++i) {
      const auto& prev = set.candidates[i - 1];
      const auto& cur = set.candidates[i];
      EXPECT_GT(cur.v, set.frac_threshold);
      EXPECT_TRUE(prev.v > cur.v || (prev.v == cur.v && prev.word < cur.word));
    }
  }
}

TEST(CandidateWords, ThresholdIsStrict) {
  // a: tf 0.5, b and c: tf 0.25, all with df 1 of 4; q is in every snippet.
  // Power-of-two lengths make v(b) = v(c) = 0.5 exactly.
  const auto c = corpus_of({{"a", "a", "q", "q"}, {"b", "c", "q", "q"}, {"q"}, {"q"}});
  CandidateOptions opt;
  opt.frac = 0.5;
  const auto set = candidate_words(c, opt);
  ASSERT_EQ(set.candidates.size(), 1u);
  EXPECT_EQ(set.candidates.front().word, "a");

  opt.frac = 0.49;
  EXPECT_EQ(candidate_words(c, opt).words(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(CandidateWords, BundledFixtureExcludesWordBelowThreshold) {
  const auto corpus =
      load_corpus(kwactor::testing::fixtures_dir() / "snippets.jsonl", "abdullah mohd zin");
  CandidateOptions opt;
  opt.excluded = {"abdullah", "mohd", "zin"};
  opt.cap = 1000;
  const auto set = candidate_words(corpus, opt);
  const auto all = term_statistics(corpus, opt);
  auto page = std::find_if(all.begin(), all.end(), [](const TermStats& t) { return t.word == "page"; });
  ASSERT_NE(page, all.end());
  EXPECT_NEAR(page->v, 0.29, 1e-4);
  EXPECT_EQ(set.find("page"), nullptr);
  EXPECT_EQ(set.candidates.size(), 33u);
}

TEST(CandidateWords, CapKeepsThirty) {
  std::vector<std::vector<std::string>> docs;
  for (int i = 0; i < 40; ++i) docs.push_back({"w" + std::to_string(100 + i)});
  const auto set = candidate_words(corpus_of(docs));
  ASSERT_EQ(set.candidates.size(), 30u);
  EXPECT_EQ(set.candidates.front().word, "w100");
  EXPECT_EQ(set.candidates.back().word, "w129");
}

TEST(CandidateWords, AllZeroGivesEmptySetWithWarning) {
  const auto set = candidate_words(corpus_of({{"a", "b"}, {"b", "a"}, {"a", "b", "a"}}));
  EXPECT_TRUE(set.empty());
  ASSERT_EQ(set.warnings.size(), 1u);
}

TEST(CandidateWords, ExcludedWordsStillCountInLength) {
  const auto c = corpus_of({{"name", "a"}, {"name", "b", "b"}, {"name"}});
  CandidateOptions opt;
  opt.excluded = {"name"};
  const auto set = candidate_words(c, opt);
  EXPECT_EQ(set.find("name"), nullptr);
  ASSERT_NE(set.find("b"), nullptr);
  EXPECT_NEAR(set.find("b")->tf, 2.0 / 3.0, 1e-15);
}

TEST(CandidateWords, RejectsBadOptions) {
  const auto c = corpus_of({{"a"}, {"b"}});
  CandidateOptions opt;
  opt.frac = 1.0;
  EXPECT_THROW(candidate_words(c, opt), Error);
  opt.frac = 0.3;
  opt.cap = 0;
  EXPECT_THROW(candidate_words(c, opt), Error);
}

TEST(CandidateWords, LogBaseDoesNotChangeV) {
  std::mt19937 rng(17);
  for (int round = 0; round < 200; ++round) {
    const auto c = corpus_of(random_docs(rng));
    CandidateOptions ten;
    ten.log_base = 10.0;
    const auto natural = term_statistics(c);
    const auto decimal = term_statistics(c, ten);
    ASSERT_EQ(natural.size(), decimal.size());
    for (std::size_t i = 0; i < natural.size(); ++i)
      EXPECT_NEAR(natural[i].v, decimal[i].v, 1e-12);
  }
}

TEST(CandidateWords, DuplicatingSnippetsKeepsOrder) {
  std::mt19937 rng(23);
  for (int round = 0; round < 100; ++round) {
    auto docs = random_docs(rng);
    const auto once = candidate_words(corpus_of(docs));
    auto doubled = docs;
    doubled.insert(doubled.end(), docs.begin(), docs.end());
    const auto twice = candidate_words(corpus_of(doubled));
    // Words tied in exact arithmetic may swap after rounding, so compare v.
    ASSERT_EQ(once.candidates.size(), twice.candidates.size());
    for (std::size_t i = 0; i < once.candidates.size(); ++i) {
      const auto* t = twice.find(once.candidates[i].word);
      ASSERT_NE(t, nullptr);
      EXPECT_NEAR(t->v, once.candidates[i].v, 1e-12);
      EXPECT_NEAR(twice.candidates[i].v, once.candidates[i].v, 1e-12);
    }
  }
}
