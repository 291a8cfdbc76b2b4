#include "kwactor/live.hpp"

#include <chrono>
#include <ctime>

#include <httplib.h>
#include <json.hpp>

#include "kwactor/error.hpp"

namespace kwactor {

namespace {

std::string utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json get_json(httplib::Client& client, const std::string& path,
                        const httplib::Params& params) {
  auto res = client.Get(path, params, httplib::Headers{});
  if (!res)
    throw Error(ErrorKind::Transport,
                "request to " + path + " failed: " + httplib::to_string(res.error()));
  if (res->status == 429)
    throw Error(ErrorKind::Budget, "search engine quota exhausted (HTTP 429)");
  if (res->status != 200)
    throw Error(ErrorKind::Transport,
                path + " returned HTTP " + std::to_string(res->status));
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Transport, path + " returned malformed JSON: " + e.what());
  }
}

}  // namespace

Endpoint Endpoint::parse(const std::string& url) {
  std::string rest = url;
  if (auto p = rest.find("://"); p != std::string::npos) {
    if (rest.substr(0, p) != "http")
      throw Error(ErrorKind::Config, "only http endpoints are supported: " + url);
    rest = rest.substr(p + 3);
  }
  if (auto slash = rest.find('/'); slash != std::string::npos) rest.resize(slash);
  Endpoint e;
  if (auto colon = rest.rfind(':'); colon != std::string::npos) {
    e.host = rest.substr(0, colon);
    try {
      e.port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, "bad port in endpoint " + url);
    }
  } else {
    e.host = rest;
  }
  if (e.host.empty()) throw Error(ErrorKind::Config, "empty endpoint host: " + url);
  return e;
}

struct LiveSnippetProvider::Client {
  explicit Client(const Endpoint& e) : http(e.host, e.port) {
    http.set_connection_timeout(5, 0);
    http.set_read_timeout(15, 0);
  }
  httplib::Client http;
};

LiveSnippetProvider::LiveSnippetProvider(Endpoint endpoint, std::size_t page_size,
                                         CorpusLimits limits)
    : client_(std::make_unique<Client>(endpoint)),
      page_size_(page_size ? page_size : 1),
      limits_(limits) {}

LiveSnippetProvider::~LiveSnippetProvider() = default;

SnippetCorpus LiveSnippetProvider::fetch(const ActorRef& actor, std::size_t limit) {
  std::lock_guard lock(mutex_);
  const std::string term = actor.query_term();
  const std::string retrieved_at = utc_now();
  std::vector<Snippet> snippets;
  while (snippets.size() < limit) {
    const std::size_t count = std::min(page_size_, limit - snippets.size());
    auto page = get_json(client_->http, "/search",
                         {{"q", term},
                          {"start", std::to_string(snippets.size())},
                          {"count", std::to_string(count)}});
    const auto& results = page.value("results", nlohmann::json::array());
    if (!results.is_array())
      throw Error(ErrorKind::Transport, "/search returned no result list");
    if (results.empty()) break;
    for (const auto& r : results) {
      if (snippets.size() == limit) break;
      snippets.push_back(make_snippet(term, static_cast<int>(snippets.size()) + 1,
                                      r.value("text", std::string()),
                                      limits_.max_snippet_len));
    }
  }
  CorpusLimits limits = limits_;
  limits.snippet_limit = std::max(limits.snippet_limit, limit);
  return SnippetCorpus(actor, std::move(snippets), limits,
                       CorpusMetadata{"live:" + client_->http.host(), retrieved_at});
}

struct LiveHitSource::Client {
  explicit Client(const Endpoint& e) : http(e.host, e.port) {
    http.set_connection_timeout(5, 0);
    http.set_read_timeout(15, 0);
  }
  httplib::Client http;
};

LiveHitSource::LiveHitSource(Endpoint endpoint)
    : client_(std::make_unique<Client>(endpoint)) {}

LiveHitSource::~LiveHitSource() = default;

std::optional<HitCount> LiveHitSource::lookup(const std::string& query) {
  std::lock_guard lock(mutex_);
  ++requests_;
  auto doc = get_json(client_->http, "/hits", {{"q", query}});
  if (!doc.contains("count") || !doc["count"].is_number_unsigned())
    throw Error(ErrorKind::Transport, "/hits returned no count for " + query);
  return doc["count"].get<HitCount>();
}

}  // namespace kwactor
