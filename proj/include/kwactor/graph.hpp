#ifndef KWACTOR_GRAPH_HPP
#define KWACTOR_GRAPH_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "kwactor/cooccur.hpp"
#include "kwactor/weighting.hpp"

namespace kwactor {

// Undirected edge, endpoints stored with a < b.
struct Edge {
  std::string a;
  std::string b;
  double weight = 0.0;

  bool operator==(const Edge&) const = default;
};

Edge make_edge(const std::string& x, const std::string& y, double weight);

/// Undirected weighted word graph without self-loops or parallel edges.
class WordGraph {
 public:
  void add_node(const std::string& word);
  // Adds both endpoints if needed. Throws Error(Config) on a self-loop, a
  // repeated pair or a weight outside [0, 1].
  void add_edge(const std::string& x, const std::string& y, double weight);

  const std::vector<std::string>& nodes() const { return nodes_; }
  // Sorted by (a, b).
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_node(const std::string& word) const;
  std::size_t degree(const std::string& word) const;
  double total_weight() const;
  bool empty() const { return nodes_.empty(); }

  bool operator==(const WordGraph&) const = default;

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
};

// An edge removed while separating a forest, and the hub it was cut at.
struct CutRecord {
  std::string hub;
  Edge edge;

  bool operator==(const CutRecord&) const = default;
};

/// Connected acyclic components, ordered by their smallest word.
struct WordForest {
  std::vector<WordGraph> trees;
  std::vector<CutRecord> cuts;

  std::vector<std::string> nodes() const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;
  double total_weight() const;
  double cut_weight() const;
  bool empty() const { return trees.empty(); }

  bool operator==(const WordForest&) const = default;
};

/// Complete graph over the words, weighted by the Jaccard similarity of
/// their hit counts.
WordGraph build_word_graph(std::span<const std::string> words,
                           HitProvider& provider);
WordGraph build_word_graph(const CandidateSet& candidates,
                           HitProvider& provider);

/// Maximum-weight spanning forest: edges taken greedily by weight descending
/// (ties by endpoint names) whenever they join two components.
WordForest max_spanning_forest(const WordGraph& g);

/// While some node has degree above cut_degree, the highest-degree node
/// (smallest word on ties) keeps its cut_degree heaviest edges and loses the
/// rest. With cut_degree 2 every resulting tree is a path.
WordForest separate_trees(const WordForest& forest, std::size_t cut_degree = 2);

/// Splits an edge list over the given nodes into connected components.
std::vector<WordGraph> components(const std::vector<std::string>& nodes,
                                  const std::vector<Edge>& edges);

nlohmann::json to_json(const WordForest& forest);
std::string to_dot(const WordForest& forest);

}  // namespace kwactor

#endif
