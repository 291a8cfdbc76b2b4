#include "kwactor/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "kwactor/error.hpp"

namespace kwactor {

namespace {

// Union-find over node indices with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

bool heavier_first(const Edge& x, const Edge& y) {
  if (x.weight != y.weight) return x.weight > y.weight;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

std::size_t index_of(const std::vector<std::string>& sorted,
                     const std::string& word) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), word);
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

Edge make_edge(const std::string& x, const std::string& y, double weight) {
  return x < y ? Edge{x, y, weight} : Edge{y, x, weight};
}

void WordGraph::add_node(const std::string& word) {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), word);
  if (it == nodes_.end() || *it != word) nodes_.insert(it, word);
}

void WordGraph::add_edge(const std::string& x, const std::string& y,
                         double weight) {
  if (x == y) throw Error(ErrorKind::Config, "self-loop on " + x);
  if (!(weight >= 0.0 && weight <= 1.0))
    throw Error(ErrorKind::Config, "edge weight outside [0, 1]");
  Edge e = make_edge(x, y, weight);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                             [](const Edge& l, const Edge& r) {
                               return std::tie(l.a, l.b) < std::tie(r.a, r.b);
                             });
  if (it != edges_.end() && it->a == e.a && it->b == e.b)
    throw Error(ErrorKind::Config, "duplicate edge " + e.a + " -- " + e.b);
  add_node(x);
  add_node(y);
  edges_.insert(it, std::move(e));
}

bool WordGraph::has_node(const std::string& word) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), word);
}

std::size_t WordGraph::degree(const std::string& word) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
        return e.a == word || e.b == word;
      }));
}

double WordGraph::total_weight() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.weight;
  return sum;
}

std::vector<std::string> WordForest::nodes() const {
  std::vector<std::string> out;
  for (const auto& t : trees) out.insert(out.end(), t.nodes().begin(), t.nodes().end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> WordForest::edges() const {
  std::vector<Edge> out;
  for (const auto& t : trees) out.insert(out.end(), t.edges().begin(), t.edges().end());
  return out;
}

std::size_t WordForest::edge_count() const {
  std::size_t n = 0;
  for (const auto& t : trees) n += t.edges().size();
  return n;
}

double WordForest::total_weight() const {
  double sum = 0.0;
  for (const auto& t : trees) sum += t.total_weight();
  return sum;
}

double WordForest::cut_weight() const {
  double sum = 0.0;
  for (const auto& c : cuts) sum += c.edge.weight;
  return sum;
}

WordGraph build_word_graph(std::span<const std::string> words,
                           HitProvider& provider) {
  if (words.empty()) throw Error(ErrorKind::Config, "word graph of no words");
  WordGraph g;
  for (const auto& w : words) g.add_node(w);
  const auto& nodes = g.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const HitCount hxy = provider.co_hit_count(nodes[i], nodes[j]);
      const double w = jaccard(provider.hit_count(nodes[i]),
                               provider.hit_count(nodes[j]), hxy);
      g.add_edge(nodes[i], nodes[j], w);
    }
  }
  return g;
}

WordGraph build_word_graph(const CandidateSet& candidates,
                           HitProvider& provider) {
  const auto words = candidates.words();
  return build_word_graph(std::span<const std::string>(words), provider);
}

std::vector<WordGraph> components(const std::vector<std::string>& nodes,
                                  const std::vector<Edge>& edges) {
  std::vector<std::string> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  DisjointSets sets(sorted.size());
  for (const auto& e : edges)
    sets.unite(index_of(sorted, e.a), index_of(sorted, e.b));

  // Roots visited in node order, so trees come out ordered by smallest word.
  std::map<std::size_t, std::size_t> slot;
  std::vector<WordGraph> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const std::size_t root = sets.find(i);
    auto [it, fresh] = slot.emplace(root, out.size());
    if (fresh) out.emplace_back();
    out[it->second].add_node(sorted[i]);
  }
  for (const auto& e : edges)
    out[slot.at(sets.find(index_of(sorted, e.a)))].add_edge(e.a, e.b, e.weight);
  return out;
}

WordForest max_spanning_forest(const WordGraph& g) {
  WordForest forest;
  if (g.empty()) return forest;

  std::vector<Edge> order = g.edges();
  std::sort(order.begin(), order.end(), heavier_first);

  const auto& nodes = g.nodes();
  DisjointSets sets(nodes.size());
  std::vector<Edge> kept;
  kept.reserve(nodes.size());
  for (const auto& e : order) {
    if (kept.size() + 1 == nodes.size()) break;
    if (sets.unite(index_of(nodes, e.a), index_of(nodes, e.b))) kept.push_back(e);
  }
  forest.trees = components(nodes, kept);
  return forest;
}

WordForest separate_trees(const WordForest& forest, std::size_t cut_degree) {
  if (cut_degree < 1) throw Error(ErrorKind::Config, "cut degree must be >= 1");

  WordForest out;
  out.cuts = forest.cuts;
  std::vector<Edge> edges = forest.edges();
  const std::vector<std::string> nodes = forest.nodes();

  for (;;) {
    std::map<std::string, std::size_t> degree;
    for (const auto& e : edges) {
      ++degree[e.a];
      ++degree[e.b];
    }
    // std::map iterates words in order, so the first maximum is the smallest.
    const std::string* hub = nullptr;
    std::size_t best = cut_degree;
    for (const auto& [word, d] : degree) {
      if (d > best) {
        best = d;
        hub = &word;
      }
    }
    if (!hub) break;
    const std::string h = *hub;

    std::vector<Edge> incident;
    std::vector<Edge> rest;
    for (auto& e : edges)
      (e.a == h || e.b == h ? incident : rest).push_back(std::move(e));
    std::sort(incident.begin(), incident.end(),
              [&h](const Edge& x, const Edge& y) {
                if (x.weight != y.weight) return x.weight > y.weight;
                const std::string& nx = x.a == h ? x.b : x.a;
                const std::string& ny = y.a == h ? y.b : y.a;
                return nx < ny;
              });
    for (std::size_t i = 0; i < incident.size(); ++i) {
      if (i < cut_degree)
        rest.push_back(std::move(incident[i]));
      else
        out.cuts.push_back(CutRecord{h, std::move(incident[i])});
    }
    edges = std::move(rest);
  }
  out.trees = components(nodes, edges);
  return out;
}

nlohmann::json to_json(const WordForest& forest) {
  using nlohmann::json;
  json edges = json::array();
  for (const auto& e : forest.edges())
    edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}, {"kept", true}});
  json cuts = json::array();
  for (const auto& c : forest.cuts) {
    edges.push_back({{"a", c.edge.a}, {"b", c.edge.b},
                     {"weight", c.edge.weight}, {"kept", false}});
    cuts.push_back({{"hub", c.hub}, {"a", c.edge.a}, {"b", c.edge.b},
                    {"weight", c.edge.weight}});
  }
  json trees = json::array();
  for (const auto& t : forest.trees) trees.push_back(t.nodes());
  return json{{"nodes", forest.nodes()},
              {"edges", std::move(edges)},
              {"cuts", std::move(cuts)},
              {"trees", std::move(trees)}};
}

std::string to_dot(const WordForest& forest) {
  std::ostringstream out;
  out << "graph forest {\n";
  for (const auto& n : forest.nodes()) out << "  \"" << n << "\";\n";
  for (const auto& e : forest.edges())
    out << "  \"" << e.a << "\" -- \"" << e.b << "\" [label=\"" << e.weight
        << "\"];\n";
  for (const auto& c : forest.cuts)
    out << "  \"" << c.edge.a << "\" -- \"" << c.edge.b << "\" [label=\""
        << c.edge.weight << "\", style=dashed];\n";
  out << "}\n";
  return out.str();
}

}  // namespace kwactor
