#include "kwactor/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kwactor/error.hpp"

namespace kwactor {

namespace {

double log_in_base(double x, std::optional<double> base) {
  if (!base) return std::log(x);
  return std::log(x) / std::log(*base);
}

void require_nonempty(const SnippetCorpus& corpus) {
  if (corpus.empty())
    throw Error(ErrorKind::UndefinedStatistic,
                "term statistics of an empty corpus are undefined");
}

}  // namespace

std::vector<std::string> CandidateSet::words() const {
  std::vector<std::string> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.word);
  return out;
}

const TermStats* CandidateSet::find(const std::string& word) const {
  for (const auto& c : candidates)
    if (c.word == word) return &c;
  return nullptr;
}

std::map<std::string, double> CandidateSet::v_map() const {
  std::map<std::string, double> out;
  for (const auto& c : candidates) out.emplace(c.word, c.v);
  return out;
}

double term_frequency(const std::string& word, const SnippetCorpus& corpus) {
  require_nonempty(corpus);
  double tf = 0.0;
  for (const auto& s : corpus.snippets()) {
    if (s.tokens.empty()) continue;
    const auto occurrences = std::count(s.tokens.begin(), s.tokens.end(), word);
    tf += static_cast<double>(occurrences) /
          static_cast<double>(s.tokens.size());
  }
  return tf;
}

double inverse_document_frequency(const std::string& word,
                                  const SnippetCorpus& corpus,
                                  std::optional<double> log_base) {
  require_nonempty(corpus);
  std::size_t df = 0;
  for (const auto& s : corpus.snippets())
    if (std::find(s.tokens.begin(), s.tokens.end(), word) != s.tokens.end())
      ++df;
  if (df == 0)
    throw Error(ErrorKind::UndefinedStatistic,
                "idf undefined for \"" + word + "\": it occurs in no snippet");
  if (df == corpus.size()) return 0.0;
  return log_in_base(static_cast<double>(corpus.size()) /
                         static_cast<double>(df),
                     log_base);
}

std::vector<TermStats> term_statistics(const SnippetCorpus& corpus,
                                       const CandidateOptions& options) {
  require_nonempty(corpus);
  if (options.log_base && !(*options.log_base > 1.0))
    throw Error(ErrorKind::Config, "log base must be greater than 1");

  struct Accum {
    double tf = 0.0;
    std::size_t df = 0;
  };
  std::unordered_map<std::string, Accum> acc;
  std::unordered_map<std::string, std::size_t> local;
  for (const auto& s : corpus.snippets()) {
    if (s.tokens.empty()) continue;
    local.clear();
    for (const auto& t : s.tokens) ++local[t];
    const double len = static_cast<double>(s.tokens.size());
    for (const auto& [word, n] : local) {
      if (options.excluded.count(word)) continue;
      auto& a = acc[word];
      a.tf += static_cast<double>(n) / len;
      ++a.df;
    }
  }

  const double n_docs = static_cast<double>(corpus.size());
  std::vector<TermStats> stats;
  stats.reserve(acc.size());
  double highest = 0.0;
  for (const auto& [word, a] : acc) {
    TermStats t;
    t.word = word;
    t.tf = a.tf;
    t.df = a.df;
    const double idf =
        a.df == corpus.size()
            ? 0.0
            : log_in_base(n_docs / static_cast<double>(a.df), options.log_base);
    t.tfidf = t.tf * idf;
    highest = std::max(highest, t.tfidf);
    stats.push_back(std::move(t));
  }
  for (auto& t : stats) t.v = highest > 0.0 ? t.tfidf / highest : 0.0;
  std::sort(stats.begin(), stats.end(),
            [](const TermStats& a, const TermStats& b) { return a.word < b.word; });
  return stats;
}

CandidateSet candidate_words(const SnippetCorpus& corpus,
                             const CandidateOptions& options) {
  if (!(options.frac > 0.0 && options.frac < 1.0))
    throw Error(ErrorKind::Config, "tfidf fraction must lie in (0, 1)");
  if (options.cap < 1) throw Error(ErrorKind::Config, "word cap must be >= 1");

  CandidateSet out;
  out.actor = corpus.actor();
  out.frac_threshold = options.frac;
  out.cap = options.cap;

  auto stats = term_statistics(corpus, options);
  for (const auto& t : stats) out.highest_tfidf = std::max(out.highest_tfidf, t.tfidf);
  if (out.highest_tfidf <= 0.0) {
    out.warnings.push_back(
        "every word has zero tf.idf; no candidate words for this actor");
    return out;
  }

  // The top word has v == 1 and passes any frac < 1.
  for (auto& t : stats)
    if (t.v > options.frac) out.candidates.push_back(std::move(t));
  std::stable_sort(out.candidates.begin(), out.candidates.end(),
                   [](const TermStats& a, const TermStats& b) {
                     if (a.v != b.v) return a.v > b.v;
                     return a.word < b.word;
                   });
  if (out.candidates.size() > options.cap) out.candidates.resize(options.cap);
  return out;
}

}  // namespace kwactor
