#ifndef KWACTOR_PIPELINE_HPP
#define KWACTOR_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kwactor/cooccur.hpp"
#include "kwactor/corpus.hpp"
#include "kwactor/graph.hpp"
#include "kwactor/selection.hpp"
#include "kwactor/weighting.hpp"

namespace kwactor {

struct RunConfig {
  std::filesystem::path fixtures_dir = "data/fixtures";
  std::size_t snippet_limit = 500;
  std::size_t max_snippet_len = 50;
  double tfidf_frac = 0.3;
  std::size_t word_cap = 30;
  std::size_t cut_degree = 2;
  UMode u_mode = UMode::Singleton;
  ProximityMode proximity_mode = ProximityMode::OverlapSize;
  std::size_t top_k = 1;
  bool live = false;
  std::string endpoint;
  bool keep_name_tokens = false;
  std::optional<std::filesystem::path> stopwords;

  // Throws Error(Config) naming the offending parameter.
  void validate() const;
  nlohmann::json to_json() const;

  CorpusLimits limits() const { return {snippet_limit, max_snippet_len}; }
};

// Files expected under the fixtures directory.
struct FixturePaths {
  std::filesystem::path snippets;  // snippets.jsonl
  std::filesystem::path hits;      // hits.json
  std::filesystem::path actors;    // actors.json, optional

  static FixturePaths in(const std::filesystem::path& dir);
};

enum class ExtractStatus { Keyword, NoCluster };

/// Everything one Generate run produces for an actor.
struct Extraction {
  ActorRef actor;
  ExtractStatus status = ExtractStatus::NoCluster;
  CandidateSet candidates;
  WordGraph graph;
  WordForest spanning;
  WordForest clusters;
  std::optional<KeywordResult> keyword;
  std::vector<std::string> warnings;

  nlohmann::json to_json(std::size_t top_k = 1) const;
};

/// Words excluded from the candidate vocabulary under config: the actor's
/// query-term tokens (unless keep_name_tokens) and the stopword file.
std::set<std::string> excluded_words(const RunConfig& config, const ActorRef& actor);

/// Runs snippet weighting, word graph, forest separation, cluster selection
/// and keyword ranking for one actor.
Extraction run_extract(const RunConfig& config, const ActorRef& actor,
                       const StableAttribute& sk, SnippetProvider& snippets,
                       HitProvider& hits);

/// Resolves a label through the fixture actor registry, falling back to an
/// actor whose canonical name is the label. Throws Error(Config) when the
/// label is shared by several registered actors.
ActorRef resolve_actor(const FixturePaths& paths, const std::string& label);

/// Hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string file_digest(const std::filesystem::path& path);

/// Config hash plus digests of every input file that exists.
nlohmann::json provenance(const RunConfig& config,
                          const std::vector<std::filesystem::path>& inputs);

}  // namespace kwactor

#endif
