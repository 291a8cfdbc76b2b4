#ifndef KWACTOR_TEST_SUPPORT_HPP
#define KWACTOR_TEST_SUPPORT_HPP

// Shared test helpers and brute-force oracles. Nothing here calls into the
// code paths the oracles check.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kwactor/cooccur.hpp"
#include "kwactor/corpus.hpp"
#include "kwactor/graph.hpp"

namespace kwactor::testing {

inline std::filesystem::path fixtures_dir() { return KWACTOR_FIXTURES; }

inline std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

/// Corpus whose snippets have exactly the given tokens.
inline SnippetCorpus corpus_of(const std::vector<std::vector<std::string>>& docs,
                               const std::string& actor = "test actor") {
  std::vector<Snippet> snippets;
  int rank = 1;
  for (const auto& d : docs)
    snippets.push_back(Snippet{actor, rank++, d, join(d)});
  return SnippetCorpus(ActorRef(actor), std::move(snippets));
}

/// Random corpus: up to max_docs snippets over a vocabulary of up to
/// max_words words.
inline std::vector<std::vector<std::string>> random_docs(std::mt19937& rng,
                                                         int max_docs = 10,
                                                         int max_words = 20) {
  std::uniform_int_distribution<int> n_docs(1, max_docs);
  std::uniform_int_distribution<int> n_vocab(1, max_words);
  std::uniform_int_distribution<int> len(1, 15);
  const int vocab = n_vocab(rng);
  std::uniform_int_distribution<int> pick(0, vocab - 1);
  std::vector<std::vector<std::string>> docs(static_cast<std::size_t>(n_docs(rng)));
  for (auto& d : docs) {
    const int l = len(rng);
    for (int i = 0; i < l; ++i) d.push_back("w" + std::string(1, static_cast<char>('a' + pick(rng))));
  }
  return docs;
}

/// tf.idf by direct counting: for each snippet, count occurrences and divide
/// by length; idf from the number of snippets that contain the word.
inline std::map<std::string, double> oracle_tfidf(
    const std::vector<std::vector<std::string>>& docs, double log_base = 0.0) {
  std::set<std::string> vocab;
  for (const auto& d : docs) vocab.insert(d.begin(), d.end());
  std::map<std::string, double> out;
  for (const auto& w : vocab) {
    double tf = 0.0;
    int df = 0;
    for (const auto& d : docs) {
      int occ = 0;
      for (const auto& t : d)
        if (t == w) ++occ;
      if (occ > 0) ++df;
      tf += static_cast<double>(occ) / static_cast<double>(d.size());
    }
    double idf = std::log(static_cast<double>(docs.size()) / df);
    if (log_base > 0.0) idf /= std::log(log_base);
    out[w] = tf * idf;
  }
  return out;
}

/// Maximum total weight over all spanning trees of a connected graph, by
/// enumerating every (n-1)-edge subset.
inline double oracle_max_spanning_weight(const WordGraph& g) {
  const auto& nodes = g.nodes();
  const auto& edges = g.edges();
  const std::size_t n = nodes.size();
  if (n <= 1) return 0.0;
  auto idx = [&](const std::string& w) {
    return static_cast<int>(std::find(nodes.begin(), nodes.end(), w) - nodes.begin());
  };
  const std::size_t m = edges.size();
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(n - 1), true);
  double best = -1.0;
  do {
    std::vector<int> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = static_cast<int>(i);
    bool cycle = false;
    double total = 0.0;
    for (std::size_t e = 0; e < m && !cycle; ++e) {
      if (!mask[e]) continue;
      const int a = comp[static_cast<std::size_t>(idx(edges[e].a))];
      const int b = comp[static_cast<std::size_t>(idx(edges[e].b))];
      if (a == b) {
        cycle = true;
        break;
      }
      for (auto& c : comp)
        if (c == b) c = a;
      total += edges[e].weight;
    }
    if (!cycle) best = std::max(best, total);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

/// Complete graph on n nodes with random weights in [0, 1].
inline WordGraph random_complete_graph(std::mt19937& rng, int n, bool coarse = false) {
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::uniform_int_distribution<int> level(0, 4);
  WordGraph g;
  for (int i = 0; i < n; ++i) g.add_node("n" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.add_edge("n" + std::to_string(i), "n" + std::to_string(j),
                 coarse ? level(rng) / 4.0 : w(rng));
  return g;
}

/// Random labelled tree on n nodes (random parent among earlier nodes).
inline WordForest random_tree(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::vector<Edge> edges;
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back("t" + std::to_string(100 + i));
    if (i > 0) {
      std::uniform_int_distribution<int> parent(0, i - 1);
      edges.push_back(make_edge(nodes[static_cast<std::size_t>(parent(rng))], nodes.back(),
                                std::round(w(rng) * 8.0) / 8.0));
    }
  }
  WordForest f;
  f.trees = components(nodes, edges);
  return f;
}

/// Hit source backed by a map, counting every lookup.
class CountingSource : public HitSource {
 public:
  explicit CountingSource(std::map<std::string, HitCount> counts = {})
      : counts_(std::move(counts)) {}

  std::optional<HitCount> lookup(const std::string& query) override {
    ++lookups;
    if (query.find(" AND ") != std::string::npos) ++doubleton_lookups;
    auto it = counts_.find(query);
    if (it == counts_.end()) {
      if (default_count) return default_count;
      return std::nullopt;
    }
    return it->second;
  }

  void set(const std::string& query, HitCount n) { counts_[query] = n; }

  std::size_t lookups = 0;
  std::size_t doubleton_lookups = 0;
  std::optional<HitCount> default_count;

 private:
  std::map<std::string, HitCount> counts_;
};

}  // namespace kwactor::testing

#endif
