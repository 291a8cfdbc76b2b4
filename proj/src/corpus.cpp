#include "kwactor/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include <json.hpp>

#include "kwactor/error.hpp"

namespace kwactor {

namespace {

bool is_word_byte(unsigned char c) {
  return c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

bool all_digits(const std::string& token) {
  return std::all_of(token.begin(), token.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

void check_labels(const std::string& canonical,
                  const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  const std::string key = normalize_label(canonical);
  for (const auto& label : labels) {
    const std::string norm = normalize_label(label);
    if (norm.empty())
      throw Error(ErrorKind::Config, std::string("empty ") + what + " label");
    if (norm == key)
      throw Error(ErrorKind::Config, std::string(what) +
                                         " labels must not repeat the "
                                         "canonical name: " + label);
    if (!seen.insert(norm).second)
      throw Error(ErrorKind::Config,
                  std::string("duplicate ") + what + " label: " + label);
  }
}

std::vector<std::string> string_list(const nlohmann::json& j,
                                     const char* field) {
  std::vector<std::string> out;
  if (!j.contains(field)) return out;
  for (const auto& item : j.at(field)) out.push_back(item.get<std::string>());
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw_text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !all_digits(current)) tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : raw_text) {
    if (is_word_byte(c)) {
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                                 : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string normalize_label(std::string_view label) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : label) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c))
                           : static_cast<char>(c));
  }
  return out;
}

ActorRef::ActorRef(std::string canonical_name,
                   std::vector<std::string> variant_labels,
                   std::vector<std::string> ambiguous_labels,
                   std::optional<std::string> category_hint)
    : canonical_name_(std::move(canonical_name)),
      variant_labels_(std::move(variant_labels)),
      ambiguous_labels_(std::move(ambiguous_labels)),
      category_hint_(std::move(category_hint)) {
  if (normalize_label(canonical_name_).empty())
    throw Error(ErrorKind::Config, "actor canonical name is empty");
  check_labels(canonical_name_, variant_labels_, "variant");
  check_labels(canonical_name_, ambiguous_labels_, "ambiguous");
}

bool ActorRef::answers_to(std::string_view label) const {
  const std::string key = normalize_label(label);
  if (key.empty()) return false;
  if (key == query_term()) return true;
  auto match = [&](const std::string& l) { return normalize_label(l) == key; };
  return std::any_of(variant_labels_.begin(), variant_labels_.end(), match) ||
         std::any_of(ambiguous_labels_.begin(), ambiguous_labels_.end(), match);
}

ActorRegistry::ActorRegistry(std::vector<ActorRef> actors)
    : actors_(std::move(actors)) {}

ActorRegistry ActorRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  std::vector<ActorRef> actors;
  try {
    for (const auto& item : doc) {
      std::optional<std::string> hint;
      if (item.contains("category_hint") && !item["category_hint"].is_null())
        hint = item["category_hint"].get<std::string>();
      actors.emplace_back(item.at("canonical_name").get<std::string>(),
                          string_list(item, "variant_labels"),
                          string_list(item, "ambiguous_labels"), hint);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  return ActorRegistry(std::move(actors));
}

std::vector<ActorRef> ActorRegistry::resolve(std::string_view label) const {
  std::vector<ActorRef> out;
  for (const auto& actor : actors_)
    if (actor.answers_to(label)) out.push_back(actor);
  return out;
}

SnippetCorpus::SnippetCorpus(ActorRef actor, std::vector<Snippet> snippets,
                             CorpusLimits limits, CorpusMetadata metadata)
    : actor_(std::move(actor)),
      snippets_(std::move(snippets)),
      metadata_(std::move(metadata)) {
  if (snippets_.size() > limits.snippet_limit)
    throw Error(ErrorKind::Config, "corpus exceeds snippet limit");
  for (const auto& s : snippets_) {
    if (s.query_term != snippets_.front().query_term)
      throw Error(ErrorKind::Config, "snippets mix query terms");
    if (s.rank < 1) throw Error(ErrorKind::Config, "snippet rank below 1");
    if (s.tokens.size() > limits.max_snippet_len)
      throw Error(ErrorKind::Config, "snippet exceeds maximum length");
  }
}

Snippet make_snippet(std::string query_term, int rank, std::string raw_text,
                     std::size_t max_snippet_len) {
  Snippet s;
  s.query_term = std::move(query_term);
  s.rank = rank;
  s.tokens = tokenize(raw_text);
  if (s.tokens.size() > max_snippet_len) s.tokens.resize(max_snippet_len);
  s.raw_text = std::move(raw_text);
  return s;
}

SnippetCorpus load_corpus(const std::filesystem::path& path,
                          const ActorRef& actor, CorpusLimits limits) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());

  std::vector<Snippet> snippets;
  std::string line;
  std::size_t line_no = 0;
  const std::string term = actor.query_term();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string label;
    int rank = 0;
    std::string text;
    try {
      auto record = nlohmann::json::parse(line);
      label = record.at("actor").get<std::string>();
      rank = record.at("rank").get<int>();
      text = record.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, path.string() + ":" +
                                        std::to_string(line_no) + ": " +
                                        e.what());
    }
    if (rank < 1)
      throw Error(ErrorKind::Parse, path.string() + ":" +
                                        std::to_string(line_no) +
                                        ": rank must be >= 1");
    if (!actor.answers_to(label)) continue;
    snippets.push_back(
        make_snippet(term, rank, std::move(text), limits.max_snippet_len));
  }
  if (snippets.empty())
    throw Error(ErrorKind::EmptyCorpus, "no snippets for actor \"" +
                                            actor.canonical_name() + "\" in " +
                                            path.string());

  std::stable_sort(snippets.begin(), snippets.end(),
                   [](const Snippet& a, const Snippet& b) {
                     return a.rank < b.rank;
                   });
  if (snippets.size() > limits.snippet_limit)
    snippets.resize(limits.snippet_limit);
  return SnippetCorpus(actor, std::move(snippets), limits,
                       CorpusMetadata{path.filename().string(), std::nullopt});
}

SnippetCorpus load_corpus(const std::filesystem::path& path,
                          std::string_view actor_label, CorpusLimits limits) {
  return load_corpus(path, ActorRef(std::string(actor_label)), limits);
}

void save_corpus(const std::filesystem::path& path,
                 const SnippetCorpus& corpus) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  for (const auto& s : corpus.snippets()) {
    nlohmann::json record = {{"actor", corpus.actor().canonical_name()},
                             {"rank", s.rank},
                             {"text", s.raw_text}};
    out << record.dump() << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

FixtureSnippetProvider::FixtureSnippetProvider(std::filesystem::path path,
                                               CorpusLimits limits)
    : path_(std::move(path)), limits_(limits) {}

SnippetCorpus FixtureSnippetProvider::fetch(const ActorRef& actor,
                                            std::size_t limit) {
  CorpusLimits limits = limits_;
  limits.snippet_limit = std::min(limits.snippet_limit, limit);
  return load_corpus(path_, actor, limits);
}

SnippetCorpus fetch_snippets(SnippetProvider& provider, const ActorRef& actor,
                             std::size_t limit, CorpusLimits limits) {
  if (limit > limits.snippet_limit)
    throw Error(ErrorKind::Config, "requested " + std::to_string(limit) +
                                       " snippets, limit is " +
                                       std::to_string(limits.snippet_limit));
  if (limit == 0) return SnippetCorpus(actor, {}, limits);
  return provider.fetch(actor, limit);
}

}  // namespace kwactor
