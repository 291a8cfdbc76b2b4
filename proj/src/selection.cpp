#include "kwactor/selection.hpp"

#include <algorithm>
#include <fstream>

#include "kwactor/error.hpp"

namespace kwactor {

StableAttribute::StableAttribute(std::string name,
                                 const std::vector<std::string>& words)
    : name_(std::move(name)) {
  for (const auto& w : words) {
    for (auto& token : tokenize(w)) words_.push_back(std::move(token));
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  if (words_.empty())
    throw Error(ErrorKind::Config, "stable attribute \"" + name_ + "\" has no words");
}

StableAttribute StableAttribute::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    words.push_back(line);
  }
  return StableAttribute(path.stem().string(), words);
}

bool StableAttribute::contains(const std::string& word) const {
  return std::binary_search(words_.begin(), words_.end(), word);
}

const char* to_string(ProximityMode mode) {
  switch (mode) {
    case ProximityMode::OverlapCount: return "overlap-count";
    case ProximityMode::OverlapSize: return "overlap-size";
    case ProximityMode::Jaccard: return "jaccard";
  }
  return "unknown";
}

ProximityMode parse_proximity_mode(const std::string& text) {
  if (text == "overlap-count") return ProximityMode::OverlapCount;
  if (text == "overlap-size") return ProximityMode::OverlapSize;
  if (text == "jaccard") return ProximityMode::Jaccard;
  throw Error(ErrorKind::Config, "unknown proximity mode: " + text);
}

double score_cluster(std::span<const std::string> cluster,
                     const StableAttribute& sk, ProximityMode mode,
                     HitProvider* provider) {
  if (cluster.empty()) throw Error(ErrorKind::Config, "empty cluster");
  switch (mode) {
    case ProximityMode::OverlapCount:
    case ProximityMode::OverlapSize: {
      const auto hits = std::count_if(cluster.begin(), cluster.end(),
                                      [&](const std::string& w) { return sk.contains(w); });
      if (mode == ProximityMode::OverlapSize) return static_cast<double>(hits);
      return static_cast<double>(hits) / static_cast<double>(cluster.size());
    }
    case ProximityMode::Jaccard: {
      if (!provider)
        throw Error(ErrorKind::Config, "jaccard proximity needs hit counts");
      double sum = 0.0;
      for (const auto& w : cluster) {
        double best = 0.0;
        for (const auto& s : sk.words()) {
          const double sim =
              w == s ? 1.0
                     : jaccard(provider->hit_count(w), provider->hit_count(s),
                               provider->co_hit_count(w, s));
          best = std::max(best, sim);
        }
        sum += best;
      }
      return sum / static_cast<double>(cluster.size());
    }
  }
  return 0.0;
}

std::vector<std::string> select_cluster(const WordForest& forest,
                                        const StableAttribute& sk,
                                        const CandidateSet& candidates,
                                        ProximityMode mode,
                                        HitProvider* provider) {
  if (forest.empty())
    throw Error(ErrorKind::NoCluster, "no cluster of candidate words");

  const auto v = candidates.v_map();
  auto v_sum = [&](const std::vector<std::string>& words) {
    double sum = 0.0;
    for (const auto& w : words)
      if (auto it = v.find(w); it != v.end()) sum += it->second;
    return sum;
  };

  const std::vector<std::string>* best = nullptr;
  double best_score = 0.0;
  double best_v = 0.0;
  for (const auto& tree : forest.trees) {
    const auto& words = tree.nodes();
    const double score = score_cluster(words, sk, mode, provider);
    const double sum = v_sum(words);
    bool better = best == nullptr || score > best_score ||
                  (score == best_score &&
                   (sum > best_v || (sum == best_v && words.front() < best->front())));
    if (better) {
      best = &words;
      best_score = score;
      best_v = sum;
    }
  }
  return *best;
}

std::vector<std::string> KeywordResult::top(std::size_t k) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranking.size() && i < k; ++i)
    out.push_back(ranking[i].word);
  return out;
}

KeywordResult pick_keyword(std::span<const std::string> cluster,
                           const std::map<std::string, double>& v,
                           const UVector& u) {
  if (cluster.empty()) throw Error(ErrorKind::NoKeyword, "empty cluster");

  KeywordResult result;
  result.chosen_cluster.assign(cluster.begin(), cluster.end());
  for (const auto& w : cluster) {
    auto it = v.find(w);
    if (it == v.end())
      throw Error(ErrorKind::Config, "cluster word " + w + " is not a candidate");
    const double uw = u.at(w);
    result.ranking.push_back(RankedWord{w, it->second, uw, it->second - uw});
  }
  std::sort(result.ranking.begin(), result.ranking.end(),
            [](const RankedWord& a, const RankedWord& b) {
              if (a.delta != b.delta) return a.delta > b.delta;
              if (a.v != b.v) return a.v > b.v;
              return a.word < b.word;
            });
  result.keyword = result.ranking.front().word;
  if (result.ranking.front().delta < 0.0) {
    result.below_zero = true;
    result.warnings.push_back("every word in the cluster has negative delta");
  }
  return result;
}

KeywordResult pick_keyword(std::span<const std::string> cluster,
                           const CandidateSet& candidates, const UVector& u) {
  KeywordResult r = pick_keyword(cluster, candidates.v_map(), u);
  r.actor = candidates.actor;
  r.rewritten_query = rewrite_query(r.actor, r.keyword);
  return r;
}

std::string rewrite_query(const ActorRef& actor, const std::string& keyword) {
  if (keyword.empty()) throw Error(ErrorKind::Config, "empty keyword");
  return "\"" + actor.canonical_name() + "\" \"" + keyword + "\"";
}

}  // namespace kwactor
