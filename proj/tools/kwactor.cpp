// kwactor: keyword extraction for social actors from web snippets.
//
// Exit status: 0 success, 1 configuration error, 2 data error (missing or
// malformed fixtures, transport failures), 3 empty result (no cluster).

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kwactor/cooccur.hpp"
#include "kwactor/corpus.hpp"
#include "kwactor/error.hpp"
#include "kwactor/eval.hpp"
#include "kwactor/graph.hpp"
#include "kwactor/live.hpp"
#include "kwactor/pipeline.hpp"
#include "kwactor/selection.hpp"

using namespace kwactor;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitEmpty = 3;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return kExitConfig;
    case ErrorKind::NoCluster:
    case ErrorKind::NoKeyword: return kExitEmpty;
    default: return kExitData;
  }
}

// Owns whichever snippet and hit backends the run needs.
struct Backends {
  std::unique_ptr<SnippetProvider> snippets;
  std::unique_ptr<CacheFileSource> cache;
  std::unique_ptr<LiveHitSource> live_hits;
  std::unique_ptr<LayeredSource> layered;
  std::unique_ptr<HitProvider> hits;

  Backends(const RunConfig& config, const FixturePaths& paths) {
    cache = std::filesystem::exists(paths.hits) ? std::make_unique<CacheFileSource>(paths.hits)
                                                : std::make_unique<CacheFileSource>();
    if (config.live) {
      const auto endpoint = Endpoint::parse(config.endpoint);
      snippets = std::make_unique<LiveSnippetProvider>(endpoint, 50, config.limits());
      live_hits = std::make_unique<LiveHitSource>(endpoint);
      layered = std::make_unique<LayeredSource>(
          std::vector<HitSource*>{cache.get(), live_hits.get()});
      hits = std::make_unique<HitProvider>(*layered);
    } else {
      if (!std::filesystem::exists(paths.hits))
        throw Error(ErrorKind::Io, "hit-count cache not found: " + paths.hits.string());
      snippets = std::make_unique<FixtureSnippetProvider>(paths.snippets, config.limits());
      hits = std::make_unique<HitProvider>(*cache);
    }
  }
};

void add_config_options(CLI::App& cmd, RunConfig& config, std::string& u_mode,
                        std::string& proximity) {
  cmd.add_option("--fixtures", config.fixtures_dir, "Fixture directory")
      ->capture_default_str();
  cmd.add_option("--snippet-limit", config.snippet_limit)->capture_default_str();
  cmd.add_option("--max-snippet-len", config.max_snippet_len)->capture_default_str();
  cmd.add_option("--tfidf-frac", config.tfidf_frac)->capture_default_str();
  cmd.add_option("--word-cap", config.word_cap)->capture_default_str();
  cmd.add_option("--cut-degree", config.cut_degree)->capture_default_str();
  cmd.add_option("--u-mode", u_mode, "singleton | doubleton-with-actor")
      ->capture_default_str();
  cmd.add_option("--proximity-mode", proximity, "overlap-size | overlap-count | jaccard")
      ->capture_default_str();
  cmd.add_option("--top-k", config.top_k)->capture_default_str();
  cmd.add_flag("--live", config.live, "Query the search endpoint for missing data");
  cmd.add_option("--endpoint", config.endpoint, "Search endpoint, http://host:port");
  cmd.add_flag("--keep-name-tokens", config.keep_name_tokens,
               "Allow the actor's own name tokens as candidates");
  cmd.add_option("--stopwords", config.stopwords, "File of words never offered as candidates");
}

void finish_config(RunConfig& config, const std::string& u_mode, const std::string& proximity) {
  config.u_mode = parse_u_mode(u_mode);
  config.proximity_mode = parse_proximity_mode(proximity);
  config.validate();
}

std::vector<std::filesystem::path> inputs_of(const FixturePaths& paths,
                                             const std::optional<std::filesystem::path>& sk) {
  std::vector<std::filesystem::path> in{paths.snippets, paths.hits, paths.actors};
  if (sk) in.push_back(*sk);
  return in;
}

json error_json(const std::string& actor, const Error& e) {
  return {{"actor", actor}, {"status", "error"}, {"error", to_string(e.kind())},
          {"message", e.what()}};
}

int cmd_extract(const RunConfig& config, const std::vector<std::string>& actor_labels,
                const std::optional<std::filesystem::path>& actors_file,
                const std::filesystem::path& sk_path, std::size_t jobs) {
  const auto paths = FixturePaths::in(config.fixtures_dir);
  const auto sk = StableAttribute::load(sk_path);
  Backends backends(config, paths);

  std::vector<std::string> labels = actor_labels;
  if (actors_file) {
    std::ifstream in(*actors_file);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + actors_file->string());
    std::string line;
    while (std::getline(in, line))
      if (!normalize_label(line).empty()) labels.push_back(line);
  }
  if (labels.empty()) throw Error(ErrorKind::Config, "no actor given");

  struct Slot {
    json result;
    int code = kExitOk;
  };
  auto run_one = [&](const std::string& label) {
    Slot slot;
    try {
      const ActorRef actor = resolve_actor(paths, label);
      const Extraction ex = run_extract(config, actor, sk, *backends.snippets, *backends.hits);
      slot.result = ex.to_json(config.top_k);
      if (ex.status == ExtractStatus::NoCluster) slot.code = kExitEmpty;
    } catch (const Error& e) {
      slot.result = error_json(label, e);
      slot.code = exit_code(e.kind());
    }
    return slot;
  };

  // Workers run in waves of `jobs`; results keep input order.
  std::vector<Slot> slots(labels.size());
  jobs = std::max<std::size_t>(1, jobs);
  for (std::size_t start = 0; start < labels.size(); start += jobs) {
    std::vector<std::future<Slot>> wave;
    const std::size_t end = std::min(labels.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i)
      wave.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                run_one, labels[i]));
    for (std::size_t i = start; i < end; ++i) slots[i] = wave[i - start].get();
  }

  const json prov = provenance(config, inputs_of(paths, sk_path));
  int code = kExitOk;
  if (labels.size() == 1 && !actors_file) {
    json out = slots.front().result;
    out["provenance"] = prov;
    std::cout << out.dump(2) << '\n';
    code = slots.front().code;
    if (code != kExitOk && code != kExitEmpty)
      std::cerr << "kwactor: " << out.value("message", "") << '\n';
  } else {
    json results = json::array();
    for (const auto& s : slots) {
      results.push_back(s.result);
      // Data errors dominate empty results.
      if (s.code == kExitConfig || s.code == kExitData)
        code = std::max(code, s.code);
      else if (s.code == kExitEmpty && code == kExitOk)
        code = kExitEmpty;
    }
    std::cout << json{{"results", results}, {"provenance", prov}}.dump(2) << '\n';
  }
  return code;
}

int cmd_candidates(const RunConfig& config, const std::string& label) {
  const auto paths = FixturePaths::in(config.fixtures_dir);
  Backends backends(config, paths);
  const ActorRef actor = resolve_actor(paths, label);
  const auto corpus =
      fetch_snippets(*backends.snippets, actor, config.snippet_limit, config.limits());
  CandidateOptions options;
  options.frac = config.tfidf_frac;
  options.cap = config.word_cap;
  options.excluded = excluded_words(config, actor);
  const auto set = candidate_words(corpus, options);

  json words = json::array();
  for (const auto& t : set.candidates)
    words.push_back({{"word", t.word}, {"tf", t.tf}, {"df", t.df}, {"tfidf", t.tfidf},
                     {"v", t.v}});
  json out = {{"actor", actor.canonical_name()},
              {"snippets", corpus.size()},
              {"highest_tfidf", set.highest_tfidf},
              {"frac_threshold", set.frac_threshold},
              {"cap", set.cap},
              {"candidates", std::move(words)},
              {"warnings", set.warnings},
              {"provenance", provenance(config, inputs_of(paths, std::nullopt))}};
  std::cout << out.dump(2) << '\n';
  return set.empty() ? kExitEmpty : kExitOk;
}

int cmd_explain(const RunConfig& config, const std::string& label,
                const std::filesystem::path& sk_path, bool dot) {
  const auto paths = FixturePaths::in(config.fixtures_dir);
  const auto sk = StableAttribute::load(sk_path);
  Backends backends(config, paths);
  const ActorRef actor = resolve_actor(paths, label);
  const Extraction ex = run_extract(config, actor, sk, *backends.snippets, *backends.hits);
  if (dot) {
    std::cout << to_dot(ex.clusters);
  } else {
    json out = {{"actor", actor.canonical_name()},
                {"spanning_forest", to_json(ex.spanning)},
                {"clusters", to_json(ex.clusters)},
                {"chosen_cluster", ex.keyword ? json(ex.keyword->chosen_cluster) : json::array()},
                {"provenance", provenance(config, inputs_of(paths, sk_path))}};
    std::cout << out.dump(2) << '\n';
  }
  return ex.status == ExtractStatus::Keyword ? kExitOk : kExitEmpty;
}

int cmd_hits_warm(const RunConfig& config, const std::filesystem::path& words_file,
                  const std::string& actor_term, const std::optional<std::filesystem::path>& cache_arg) {
  if (config.endpoint.empty()) throw Error(ErrorKind::Config, "hits warm needs --endpoint");
  const auto cache_path = cache_arg ? *cache_arg : FixturePaths::in(config.fixtures_dir).hits;

  std::ifstream in(words_file);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + words_file.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (auto& t : tokenize(line))
      if (std::find(words.begin(), words.end(), t) == words.end()) words.push_back(t);
  }
  if (words.empty()) throw Error(ErrorKind::Config, "no words in " + words_file.string());

  CacheFileSource cache = std::filesystem::exists(cache_path) ? CacheFileSource(cache_path)
                                                              : CacheFileSource();
  LiveHitSource live(Endpoint::parse(config.endpoint));
  LayeredSource source({&cache, &live});
  HitProvider provider(source);

  for (const auto& w : words) provider.hit_count(w);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) provider.co_hit_count(words[i], words[j]);
  const std::string actor = normalize_label(actor_term);
  if (!actor.empty())
    for (const auto& w : words)
      if (w != actor) provider.co_hit_count(actor, w);

  auto merged = cache.counts();
  for (auto& [k, v] : provider.table().to_json().items()) merged[k] = v.get<HitCount>();
  save_hit_cache(cache_path, merged);

  std::cout << json{{"cache", cache_path.string()},
                    {"entries", merged.size()},
                    {"queries_issued", provider.queries_issued()},
                    {"live_requests", live.requests()}}
                   .dump(2)
            << '\n';
  return kExitOk;
}

int cmd_eval(const std::filesystem::path& judgments_path, bool as_json) {
  const auto judgments = load_judgments(judgments_path);
  const EvalReport report = evaluate(judgments);
  if (as_json)
    std::cout << report.to_json().dump(2) << '\n';
  else
    std::cout << report.to_table();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyword extraction for identifying social actors"};
  app.require_subcommand(1);

  RunConfig config;
  std::string u_mode = to_string(config.u_mode);
  std::string proximity = to_string(config.proximity_mode);

  auto* extract = app.add_subcommand("extract", "Extract the keyword of one or more actors");
  add_config_options(*extract, config, u_mode, proximity);
  std::vector<std::string> actors;
  std::optional<std::filesystem::path> actors_file;
  std::filesystem::path sk_path;
  std::size_t jobs = 1;
  extract->add_option("--actor", actors, "Actor label (repeatable)");
  extract->add_option("--actors-file", actors_file, "File with one actor label per line");
  extract->add_option("--sk", sk_path, "Stable-attribute word file")->required();
  extract->add_option("--jobs", jobs, "Parallel workers for several actors")->capture_default_str();

  auto* candidates = app.add_subcommand("candidates", "Show candidate words and their v values");
  add_config_options(*candidates, config, u_mode, proximity);
  std::string candidate_actor;
  candidates->add_option("--actor", candidate_actor)->required();

  auto* explain = app.add_subcommand("explain", "Dump the spanning forest and its clusters");
  add_config_options(*explain, config, u_mode, proximity);
  std::string explain_actor;
  bool dot = false;
  explain->add_option("--actor", explain_actor)->required();
  explain->add_option("--sk", sk_path)->required();
  explain->add_flag("--dot", dot, "Emit Graphviz DOT instead of JSON");

  auto* hits = app.add_subcommand("hits", "Hit-count cache maintenance");
  hits->require_subcommand(1);
  auto* warm = hits->add_subcommand("warm", "Fill the hit-count cache from the live endpoint");
  std::filesystem::path words_file;
  std::string warm_actor;
  std::optional<std::filesystem::path> cache_path;
  warm->add_option("--words", words_file, "File of words, one per line")->required();
  warm->add_option("--actor", warm_actor, "Also fetch actor AND word counts");
  warm->add_option("--cache", cache_path, "Cache file (default <fixtures>/hits.json)");
  warm->add_option("--fixtures", config.fixtures_dir)->capture_default_str();
  warm->add_option("--endpoint", config.endpoint)->required();

  auto* eval = app.add_subcommand("eval", "Recall, precision and F-measure over judgments");
  std::filesystem::path judgments_path;
  bool as_json = false;
  eval->add_option("--judgments", judgments_path)->required();
  eval->add_flag("--json", as_json, "Emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*extract) {
      finish_config(config, u_mode, proximity);
      return cmd_extract(config, actors, actors_file, sk_path, jobs);
    }
    if (*candidates) {
      finish_config(config, u_mode, proximity);
      return cmd_candidates(config, candidate_actor);
    }
    if (*explain) {
      finish_config(config, u_mode, proximity);
      return cmd_explain(config, explain_actor, sk_path, dot);
    }
    if (*warm) return cmd_hits_warm(config, words_file, warm_actor, cache_path);
    if (*eval) return cmd_eval(judgments_path, as_json);
  } catch (const Error& e) {
    std::cerr << "kwactor: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "kwactor: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
