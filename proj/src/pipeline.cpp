#include "kwactor/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "kwactor/error.hpp"

namespace kwactor {

namespace {

const char* to_string(ExtractStatus s) {
  return s == ExtractStatus::Keyword ? "keyword" : "no-cluster";
}

std::set<std::string> read_word_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (auto& t : tokenize(line)) words.insert(std::move(t));
  }
  return words;
}

}  // namespace

void RunConfig::validate() const {
  auto positive = [](std::size_t x, const char* name) {
    if (x == 0) throw Error(ErrorKind::Config, std::string(name) + " must be positive");
  };
  positive(snippet_limit, "snippet-limit");
  positive(max_snippet_len, "max-snippet-len");
  positive(word_cap, "word-cap");
  positive(cut_degree, "cut-degree");
  positive(top_k, "top-k");
  if (!(tfidf_frac > 0.0 && tfidf_frac < 1.0))
    throw Error(ErrorKind::Config, "tfidf-frac must lie in (0, 1)");
  if (live && endpoint.empty())
    throw Error(ErrorKind::Config, "live mode needs --endpoint");
}

nlohmann::json RunConfig::to_json() const {
  return {{"fixtures_dir", fixtures_dir.generic_string()},
          {"snippet_limit", snippet_limit},
          {"max_snippet_len", max_snippet_len},
          {"tfidf_frac", tfidf_frac},
          {"word_cap", word_cap},
          {"cut_degree", cut_degree},
          {"u_mode", kwactor::to_string(u_mode)},
          {"proximity_mode", kwactor::to_string(proximity_mode)},
          {"top_k", top_k},
          {"live", live},
          {"endpoint", endpoint},
          {"keep_name_tokens", keep_name_tokens},
          {"stopwords", stopwords ? stopwords->generic_string() : std::string()}};
}

FixturePaths FixturePaths::in(const std::filesystem::path& dir) {
  return {dir / "snippets.jsonl", dir / "hits.json", dir / "actors.json"};
}

nlohmann::json Extraction::to_json(std::size_t top_k) const {
  using nlohmann::json;
  json ranking = json::array();
  json out = {{"actor", actor.canonical_name()},
              {"status", to_string(status)},
              {"candidates", candidates.words()},
              {"cluster_count", clusters.trees.size()}};
  if (keyword) {
    for (const auto& r : keyword->ranking)
      ranking.push_back({{"word", r.word}, {"v", r.v}, {"u", r.u}, {"delta", r.delta}});
    out["keyword"] = keyword->keyword;
    out["keywords"] = keyword->top(top_k);
    out["query"] = keyword->rewritten_query;
    out["cluster"] = keyword->chosen_cluster;
  } else {
    out["keyword"] = nullptr;
    out["keywords"] = json::array();
    out["query"] = nullptr;
    out["cluster"] = json::array();
  }
  out["ranking"] = std::move(ranking);
  out["warnings"] = warnings;
  return out;
}

std::set<std::string> excluded_words(const RunConfig& config, const ActorRef& actor) {
  std::set<std::string> excluded;
  if (!config.keep_name_tokens)
    for (auto& t : tokenize(actor.query_term())) excluded.insert(std::move(t));
  if (config.stopwords) excluded.merge(read_word_file(*config.stopwords));
  return excluded;
}

Extraction run_extract(const RunConfig& config, const ActorRef& actor,
                       const StableAttribute& sk, SnippetProvider& snippets,
                       HitProvider& hits) {
  config.validate();
  Extraction ex;
  ex.actor = actor;

  const SnippetCorpus corpus =
      fetch_snippets(snippets, actor, config.snippet_limit, config.limits());
  if (corpus.empty()) {
    ex.candidates.actor = actor;
    ex.warnings.push_back("no snippets; no cluster");
    return ex;
  }

  CandidateOptions options;
  options.frac = config.tfidf_frac;
  options.cap = config.word_cap;
  options.excluded = excluded_words(config, actor);
  ex.candidates = candidate_words(corpus, options);
  ex.warnings = ex.candidates.warnings;
  if (ex.candidates.empty()) {
    ex.warnings.push_back("no cluster");
    return ex;
  }

  ex.graph = build_word_graph(ex.candidates, hits);
  ex.spanning = max_spanning_forest(ex.graph);
  ex.clusters = separate_trees(ex.spanning, config.cut_degree);

  const auto cluster =
      select_cluster(ex.clusters, sk, ex.candidates, config.proximity_mode, &hits);
  const UVector u = u_vector(cluster, hits, config.u_mode, actor.query_term());
  KeywordResult kw = pick_keyword(cluster, ex.candidates, u);
  kw.actor = actor;
  kw.rewritten_query = rewrite_query(actor, kw.keyword);
  ex.warnings.insert(ex.warnings.end(), kw.warnings.begin(), kw.warnings.end());
  ex.keyword = std::move(kw);
  ex.status = ExtractStatus::Keyword;
  return ex;
}

ActorRef resolve_actor(const FixturePaths& paths, const std::string& label) {
  if (std::filesystem::exists(paths.actors)) {
    const auto registry = ActorRegistry::load(paths.actors);
    auto matches = registry.resolve(label);
    if (matches.size() == 1) return matches.front();
    if (matches.size() > 1) {
      std::string names;
      for (const auto& a : matches) names += "\n  " + a.canonical_name();
      throw Error(ErrorKind::Config, "label \"" + label +
                                         "\" is shared by several actors:" + names);
    }
  }
  return ActorRef(label);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Io, "sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i)
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

nlohmann::json provenance(const RunConfig& config,
                          const std::vector<std::filesystem::path>& inputs) {
  nlohmann::json files = nlohmann::json::object();
  for (const auto& p : inputs)
    if (std::filesystem::exists(p))
      files[p.filename().string()] = "sha256:" + file_digest(p);
  return {{"config_hash", "sha256:" + sha256_hex(config.to_json().dump())},
          {"inputs", std::move(files)}};
}

}  // namespace kwactor
