#ifndef KWACTOR_SELECTION_HPP
#define KWACTOR_SELECTION_HPP

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kwactor/cooccur.hpp"
#include "kwactor/corpus.hpp"
#include "kwactor/graph.hpp"
#include "kwactor/weighting.hpp"

namespace kwactor {

/// A named word set characterizing a category, e.g. "academic".
class StableAttribute {
 public:
  StableAttribute(std::string name, const std::vector<std::string>& words);

  // One word per line; '#' starts a comment. The name is the file stem.
  static StableAttribute load(const std::filesystem::path& path);

  const std::string& name() const { return name_; }
  // Normalized, sorted, duplicate-free.
  const std::vector<std::string>& words() const { return words_; }
  bool contains(const std::string& word) const;

 private:
  std::string name_;
  std::vector<std::string> words_;
};

enum class ProximityMode {
  OverlapCount,  // |cluster ∩ SK| / |cluster|
  OverlapSize,   // |cluster ∩ SK|
  Jaccard,       // mean over cluster words of the best Jaccard to an SK word
};

const char* to_string(ProximityMode mode);
ProximityMode parse_proximity_mode(const std::string& text);

/// Proximity of a cluster to the stable attribute. Jaccard mode needs a
/// provider and throws MissingCountError when a count is unavailable.
double score_cluster(std::span<const std::string> cluster,
                     const StableAttribute& sk,
                     ProximityMode mode = ProximityMode::OverlapCount,
                     HitProvider* provider = nullptr);

/// Word set of the best-scoring tree. Ties go to the larger sum of member v
/// values, then to the lexicographically smaller first member. Throws
/// Error(NoCluster) for an empty forest.
std::vector<std::string> select_cluster(
    const WordForest& forest, const StableAttribute& sk,
    const CandidateSet& candidates,
    ProximityMode mode = ProximityMode::OverlapCount,
    HitProvider* provider = nullptr);

struct RankedWord {
  std::string word;
  double v = 0.0;
  double u = 0.0;
  double delta = 0.0;

  bool operator==(const RankedWord&) const = default;
};

struct KeywordResult {
  ActorRef actor;
  std::vector<std::string> chosen_cluster;
  // delta descending; ties by higher v, then word.
  std::vector<RankedWord> ranking;
  std::string keyword;
  std::string rewritten_query;
  bool below_zero = false;
  std::vector<std::string> warnings;

  // The first k words of the ranking.
  std::vector<std::string> top(std::size_t k) const;
};

/// Ranks the cluster words by delta = v - u. Throws Error(NoKeyword) for an
/// empty cluster and Error(Config) when a word lacks v or u.
KeywordResult pick_keyword(std::span<const std::string> cluster,
                           const std::map<std::string, double>& v,
                           const UVector& u);
KeywordResult pick_keyword(std::span<const std::string> cluster,
                           const CandidateSet& candidates, const UVector& u);

/// "<canonical name>" "<keyword>"
std::string rewrite_query(const ActorRef& actor, const std::string& keyword);

}  // namespace kwactor

#endif
