#ifndef KWACTOR_LIVE_HPP
#define KWACTOR_LIVE_HPP

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "kwactor/cooccur.hpp"
#include "kwactor/corpus.hpp"

namespace kwactor {

// Search-engine adapters speaking a small JSON-over-HTTP protocol:
//
//   GET /search?q=<term>&start=<offset>&count=<n>
//       -> {"results": [{"text": "..."}, ...]}   (empty list ends paging)
//   GET /hits?q=<canonical query>
//       -> {"count": <nonnegative integer>}
//
// HTTP 429 is reported as Error(Budget); any other failure as
// Error(Transport). Requests are serialized per adapter.

struct Endpoint {
  std::string host;
  int port = 80;

  // Accepts "http://host:port" or "host:port".
  static Endpoint parse(const std::string& url);
};

class LiveSnippetProvider : public SnippetProvider {
 public:
  explicit LiveSnippetProvider(Endpoint endpoint, std::size_t page_size = 50,
                               CorpusLimits limits = {});
  ~LiveSnippetProvider() override;

  // Partial results are discarded when any page fails.
  SnippetCorpus fetch(const ActorRef& actor, std::size_t limit) override;

 private:
  struct Client;
  std::unique_ptr<Client> client_;
  std::size_t page_size_;
  CorpusLimits limits_;
  std::mutex mutex_;
};

class LiveHitSource : public HitSource {
 public:
  explicit LiveHitSource(Endpoint endpoint);
  ~LiveHitSource() override;

  std::optional<HitCount> lookup(const std::string& query) override;
  std::size_t requests() const { return requests_; }

 private:
  struct Client;
  std::unique_ptr<Client> client_;
  std::mutex mutex_;
  std::size_t requests_ = 0;
};

}  // namespace kwactor

#endif
