#ifndef KWACTOR_WEIGHTING_HPP
#define KWACTOR_WEIGHTING_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kwactor/corpus.hpp"

namespace kwactor {

struct TermStats {
  std::string word;
  double tf = 0.0;
  std::size_t df = 0;
  double tfidf = 0.0;
  double v = 0.0;

  bool operator==(const TermStats&) const = default;
};

struct CandidateOptions {
  double frac = 0.3;
  std::size_t cap = 30;
  // Words never offered as candidates (actor name tokens, stopwords). They
  // still count toward each snippet's length.
  std::set<std::string> excluded;
  // Logarithm base for idf; unset means natural log. Any base > 1 yields the
  // same v values.
  std::optional<double> log_base;
};

/// Candidate words of one actor, sorted by v descending with ties broken
/// lexicographically.
struct CandidateSet {
  ActorRef actor;
  std::vector<TermStats> candidates;
  double frac_threshold = 0.3;
  std::size_t cap = 30;
  double highest_tfidf = 0.0;
  std::vector<std::string> warnings;

  bool empty() const { return candidates.empty(); }
  std::vector<std::string> words() const;
  const TermStats* find(const std::string& word) const;
  // word -> v for every candidate.
  std::map<std::string, double> v_map() const;
};

/// Sum over snippets of (occurrences in the snippet) / (snippet token count).
double term_frequency(const std::string& word, const SnippetCorpus& corpus);

/// log(N / df). Throws Error(UndefinedStatistic) when df is 0 or the corpus
/// is empty.
double inverse_document_frequency(const std::string& word,
                                  const SnippetCorpus& corpus,
                                  std::optional<double> log_base = {});

/// tf, df, tfidf and v for every vocabulary word not in options.excluded,
/// in lexicographic order. v is tfidf over the highest tfidf (0 when every
/// tfidf is 0).
std::vector<TermStats> term_statistics(const SnippetCorpus& corpus,
                                       const CandidateOptions& options = {});

/// Keeps the words whose v is strictly above options.frac, at most
/// options.cap of them. An all-zero corpus gives an empty set with a warning.
CandidateSet candidate_words(const SnippetCorpus& corpus,
                             const CandidateOptions& options = {});

}  // namespace kwactor

#endif
